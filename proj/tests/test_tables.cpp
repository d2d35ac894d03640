#include "fixtures.hpp"
#include "props.hpp"

#include <doctest.h>

using namespace qcs;

namespace {

struct Golden {
    std::set<props::GoldenRow> h1, h2, extra;
    Golden()
        : h1(props::read_golden(source_path("tests/golden/table_h1.csv"), 1)),
          h2(props::read_golden(source_path("tests/golden/table_h2.csv"), 2)),
          extra(props::read_golden(source_path("tests/golden/table_extra.csv"), 2)) {}
};

void compare(const FieldPtr& F, const Golden& g) {
    long d = F->disc.get_si();
    TableOptions opt;
    long sets = 0;
    opt.on_row = [&](const TableRow&, const ClassSetResult& R) {
        ++sets;
        CHECK(R.mass_sum == R.mass);
        CHECK(R.complete);
    };
    auto rows = table_rows(F, opt);
    CHECK(sets == (long)rows.size());
    for (auto& r : rows)
        if (is_squarefree(r.N) && F->has_elliptic) CHECK(r.by_formula);
    auto ours1 = props::row_set(rows, d, 1), ours2 = props::row_set(rows, d, 2);
    auto want1 = props::restrict(g.h1, d, 1), want2 = props::restrict(g.h2, d, 2);
    for (auto& r : props::restrict(g.extra, d, 2)) want2.insert(r);
    CHECK_MESSAGE(ours1 == want1, "h=1 for d_F=" << d << ": got " << props::describe(ours1));
    CHECK_MESSAGE(ours2 == want2, "h=2 for d_F=" << d << ": got " << props::describe(ours2));
}

}  // namespace

TEST_CASE("degree one tables") { compare(rational_field(), Golden()); }

TEST_CASE("real quadratic tables") {
    Golden g;
    for (auto name : {"d5", "d8", "d12", "d13", "d17"}) compare(fixture(name), g);
}

TEST_CASE("cubic table for discriminant 49") { compare(fixture("d49"), Golden()); }

TEST_CASE("ambiguous rows carry distinct ideal labels") {
    auto rows = table_rows(fixture("d17"), {});
    std::vector<std::string> labels;
    for (auto& r : rows)
        if (r.D == 26 && r.N == 1) labels.push_back(r.ideals);
    REQUIRE(labels.size() == 2);
    CHECK(labels[0] != labels[1]);
    std::string csv = table_csv(rows);
    CHECK(csv.rfind("n,d_F,D,N,h,ideals\n", 0) == 0);
}

TEST_CASE("automorphisms of real quadratic fields") {
    auto F = fixture("d5");
    auto aut = field_automorphisms(*F);
    REQUIRE(aut.size() == 2);
    auto ps = primes_above(*F, Int(11));
    CHECK(conjugate_prime(*F, aut[1], ps[0]) == ps[1]);
    CHECK(field_automorphisms(*fixture("d49")).size() == 3);
}
