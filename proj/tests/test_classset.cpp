#include "fixtures.hpp"
#include "props.hpp"

#include <doctest.h>

using namespace qcs;

namespace {

int kron(long d, long p) {
    if (d == -4) return p == 2 ? 0 : (p % 4 == 1 ? 1 : -1);
    return p == 3 ? 0 : (p % 3 == 1 ? 1 : -1);  // d = -3
}

// Eichler's class number formula over Q for squarefree level.
Rat eichler_h(const std::vector<long>& D, const std::vector<long>& N) {
    Rat m(1, 12), e4(1, 4), e3(1, 3);
    for (long p : D) {
        m *= p - 1;
        e4 *= 1 - kron(-4, p);
        e3 *= 1 - kron(-3, p);
    }
    for (long q : N) {
        m *= q + 1;
        e4 *= 1 + kron(-4, q);
        e3 *= 1 + kron(-3, q);
    }
    return m + e4 + e3;
}

std::string join(const std::vector<long>& v) {
    std::string s;
    for (long x : v) s += (s.empty() ? "" : "*") + std::to_string(x);
    return s.empty() ? "1" : s;
}

}  // namespace

TEST_CASE("class numbers over Q agree with Eichler's formula") {
    auto Q = rational_field();
    std::vector<std::pair<std::vector<long>, std::vector<long>>> cases{
        {{2}, {}}, {{3}, {}}, {{5}, {}}, {{7}, {}}, {{11}, {}}, {{13}, {}}, {{37}, {}}, {{103}, {}}, {{2}, {3}},
        {{2}, {7}}, {{2}, {3, 5}}, {{3}, {2}}, {{3}, {5, 7}}, {{5}, {3}}, {{2, 3, 5}, {}}, {{2, 3, 7}, {}},
        {{11}, {2}}, {{2}, {23}}, {{7}, {3}}};
    for (auto& [D, N] : cases) {
        Rat oracle = eichler_h(D, N);
        auto r = class_number(Q, fac(*Q, join(D)), fac(*Q, join(N)), true);
        CHECK_MESSAGE(Rat(r.h) == oracle, ("D=" + join(D) + " N=" + join(N)));
        CHECK(r.enumerated);
        CHECK(r.classes->mass_sum == r.mass.mass);
    }
}

TEST_CASE("mass formula over Q") {
    auto Q = rational_field();
    CHECK(mass(*Q, fac(*Q, "2"), {}).mass == Rat(1, 12));
    CHECK(mass(*Q, fac(*Q, "2"), fac(*Q, "3*5")).mass == 2);
    CHECK(mass(*Q, fac(*Q, "3"), fac(*Q, "2^2")).mass == Rat(1));
    CHECK_THROWS_AS(mass(*Q, fac(*Q, "2*3"), {}), Error);
}

TEST_CASE("quadratic fields: formula and enumeration") {
    auto F5 = fixture("d5");
    auto r = class_number(F5, {}, {}, true);
    CHECK(r.h == 1);
    CHECK(r.mass.mass == Rat(1, 60));
    CHECK(class_number(F5, {}, fac(*F5, "11@0"), true).h == 1);
    CHECK(class_number(F5, {}, fac(*F5, "31@0"), true).h == 2);
    auto F13 = fixture("d13");
    CHECK(class_number(F13, {}, fac(*F13, "3@0^2"), true).h == 1);
    CHECK(class_number(F13, {}, fac(*F13, "3@0*3@1"), true).h == 2);
}

TEST_CASE("neighbour graph at 3 for discriminant 11") {
    auto Q = rational_field();
    auto O = definite_eichler_order(Q, fac(*Q, "11"), {});
    ClassSetOptions opt;
    opt.S = {primes_above(*Q, Int(3))[0]};
    opt.full_graph = true;
    auto R = class_set_definite(O, opt);
    REQUIRE(R.reps.size() == 2);
    for (auto& e : R.edges) CHECK(e.size() == 4);
    CHECK(graph_diameter(R.edges) == 1);
    CHECK_FALSE(chung_diameter_bound(R));
}

TEST_CASE("diameter bound on larger class sets") {
    auto Q = rational_field();
    for (auto D : {"37", "103", "2*3*11"}) {
        auto O = definite_eichler_order(Q, fac(*Q, D), {});
        ClassSetOptions opt;
        opt.S = {primes_above(*Q, Int(5))[0]};
        opt.full_graph = true;
        auto R = class_set_definite(O, opt);
        auto b = chung_diameter_bound(R);
        REQUIRE(b);
        int d = graph_diameter(R.edges);
        CHECK(d >= 1);
        CHECK(d <= *b);
        for (auto& e : R.edges) CHECK(e.size() == 6);
    }
}

TEST_CASE("principal ideals recover their generators") {
    auto F5 = fixture("d5");
    for (auto& [name, O] : props::round_trip_orders(F5)) {
        auto t = props::principal_round_trip(O, 100, 7);
        CHECK(t.cases == 100);
        CHECK_MESSAGE(t.failures == 0, (name + ": " + t.first));
    }
}

TEST_CASE("narrow class obstruction over Q(sqrt 3)") {
    auto F = fixture("d12");
    auto O = definite_eichler_order(F, {}, {});
    auto I = ideal_of_norm(O, fac(*F, "2"));
    CHECK_FALSE(is_principal(I));
    CHECK(bool(is_principal(unit_ideal(O))));
    auto cs = class_set_definite(O);
    CHECK(cs.reps.size() == 2);
    CHECK(cs.reps[0].nrd_class != cs.reps[1].nrd_class);
}

TEST_CASE("isomorphism and conjugacy") {
    auto Q = rational_field();
    auto O = definite_eichler_order(Q, fac(*Q, "37"), {});
    auto R = class_set_and_conjugacy(O);
    CHECK(R.reps.size() == 3);
    CHECK(R.types.size() == 2);
    CHECK(R.mass_sum == R.mass);
    for (size_t i = 0; i < R.reps.size(); ++i)
        for (size_t j = 0; j < R.reps.size(); ++j) CHECK(bool(is_isomorphic(R.reps[i].I, R.reps[j].I)) == (i == j));
    CHECK(bool(is_conjugate(O, O)));
    CHECK_FALSE(is_conjugate(R.types[0].order, R.types[1].order));
    // a conjugate of O by a non-normalising element is recognised
    QElt g = q_make(*O->A, f_int(*Q, 1), f_int(*Q, 1), f_int(*Q, 2), f_int(*Q, 0));
    ZLat L = lat_right_mul(*O->A, lat_left_mul(*O->A, q_inv(*O->A, g), O->L), g);
    CHECK(bool(is_conjugate(O, make_order(O->A, L))));
}

TEST_CASE("indefinite algebras") {
    auto Q = rational_field();
    auto A = algebra_with_ramification(Q, {primes_above(*Q, Int(2))[0], primes_above(*Q, Int(3))[0]}, {});
    CHECK_FALSE(A->definite);
    auto O = maximal_order(A);
    CHECK(class_set_indefinite(O).reps.size() == 1);
    CHECK(conj_class_set_indefinite(O).size() == 1);
    for (auto& J : neighbors(unit_ideal(O), primes_above(*Q, Int(5))[0])) {
        auto g = is_principal_indefinite(J);
        REQUIRE(g);
        CHECK(lat_left_mul(*A, *g, O->L) == J.L);
    }
    // M_2(Z)
    auto M = maximal_order(make_algebra(Q, f_int(*Q, 1), f_int(*Q, 1)));
    Rng rng(3);
    QMat G = gram_absolute(*M->A, M->L.basis_matrix());
    for (int k = 0; k < 10; ++k) {
        QElt g = vec_mul(to_q(random_lattice_element(G, Rat(30), rng, true)), M->L.basis_matrix());
        if (q_nrd(*M->A, g)[0] == 0) continue;
        auto xi = is_principal_indefinite(principal_ideal(M, g));
        REQUIRE(xi);
        QElt u = q_mul(*M->A, q_inv(*M->A, *xi), g);
        CHECK(lattice_contains(M->L, u));
        CHECK(abs(q_nrd(*M->A, u)[0]) == 1);
    }
}
