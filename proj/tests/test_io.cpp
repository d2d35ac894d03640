#include "fixtures.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace qcs;

TEST_CASE("rationals and lattices round-trip") {
    CHECK(rat_from_json(rat_to_json(Rat(-7, 12))) == Rat(-7, 12));
    CHECK(rat_to_json(frac(4, 2)) == "2");
    ZLat L = lattice_from_rows({{Rat(1, 2), 0}, {Rat(1, 3), 1}}, 2);
    CHECK(lattice_from_json(lattice_to_json(L), 2) == L);
    CHECK_THROWS_AS(rat_from_json(json::array()), Error);
}

TEST_CASE("fields round-trip") {
    for (auto name : {"d5", "d8", "d49"}) {
        auto F = fixture(name);
        Field G = field_from_json(field_to_json(*F));
        CHECK(G.poly == F->poly);
        CHECK(G.disc == F->disc);
        CHECK(G.ncl.size() == F->ncl.size());
    }
}

TEST_CASE("factored ideal notation") {
    auto F = fixture("d5");
    auto a = parse_factored(*F, "11@1*4^2");
    CHECK(factored_norm(a) == 176);
    CHECK(parse_factored(*F, factored_to_string(*F, a)) == a);
    CHECK(factored_norm(parse_factored(*F, "20")) == 20);
    CHECK_THROWS_AS(parse_factored(*F, "7"), Error);      // no ideal of norm 7
    CHECK_THROWS_AS(parse_factored(*F, "11@2"), Error);   // two primes of norm 11
    auto Q = rational_field();
    CHECK(factored_to_string(*Q, parse_factored(*Q, "12")) == "2^2*3");
}

TEST_CASE("orders and ideals round-trip") {
    auto Q = rational_field();
    auto O = definite_eichler_order(Q, parse_factored(*Q, "11"), {});
    auto cs = class_set_definite(O);
    auto O2 = order_from_json(Q, order_to_json(*O));
    CHECK(O2->L == O->L);
    CHECK(O2->A->a == O->A->a);
    auto I = ideal_from_json(Q, ideal_to_json(cs.reps[1].I));
    CHECK(I.L == cs.reps[1].I.L);
    json j = class_set_to_json(cs, "graph");
    CHECK(j["class_number"] == 2);
    CHECK(j["masses"].size() == 2);
    CHECK(j.contains("edges"));
    CHECK(!class_set_to_json(cs, "masses").contains("reps"));
    CHECK(class_set_to_csv(cs).rfind("index,nrd_norm,unit_index,mass\n", 0) == 0);
}

TEST_CASE("writing to an invalid path fails") {
    CHECK_THROWS_AS(write_text("/nonexistent-dir/x.json", "{}"), Error);
    std::string p = "io_test_out.json";
    write_text(p, "{}\n");
    std::ifstream in(p);
    std::string s;
    std::getline(in, s);
    CHECK(s == "{}");
    std::remove(p.c_str());
}
