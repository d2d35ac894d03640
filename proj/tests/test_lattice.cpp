#include "fixtures.hpp"
#include "props.hpp"

#include <doctest.h>

using namespace qcs;

TEST_CASE("hnf is canonical under unimodular changes") {
    auto t = props::hnf_canonicity(200, 11);
    CHECK(t.cases == 200);
    CHECK_MESSAGE(t.failures == 0, t.first);
}

TEST_CASE("short vector enumeration matches a box search") {
    auto t = props::short_vectors_vs_box(50, 12);
    CHECK(t.cases == 50);
    CHECK_MESSAGE(t.failures == 0, t.first);
}

TEST_CASE("lll returns a unimodular transform") {
    Rng rng(5);
    for (int k = 0; k < 20; ++k) {
        QMat G = props::random_gram(rng, 4);
        IMat Gi(4, 4);
        for (int i = 0; i < 16; ++i) Gi.a[i] = G.a[i].get_num();
        IMat U = lll_gram(Gi);
        Int d = det(U);
        CHECK((d == 1 || d == -1));
    }
}

TEST_CASE("lattice operations") {
    ZLat A = lattice_from_int_rows({{2, 0}, {0, 3}}, 1, 2);
    ZLat B = lattice_from_int_rows({{4, 0}, {0, 1}}, 1, 2);
    CHECK(lattice_sum(A, B) == lattice_from_int_rows({{2, 0}, {0, 1}}, 1, 2));
    CHECK(lattice_intersect(A, B) == lattice_from_int_rows({{4, 0}, {0, 3}}, 1, 2));
    CHECK(lattice_index(lattice_sum(A, B), A) == 3);
    CHECK(lattice_dual(A) == lattice_from_rows({{Rat(1, 2), 0}, {0, Rat(1, 3)}}, 2));
    CHECK_THROWS_AS(lattice_from_int_rows({{1, 2}, {2, 4}}, 1, 2), Error);
}

TEST_CASE("reduced norm is multiplicative") {
    auto t = props::nrd_multiplicativity(1000, 13, fixture("d5"));
    CHECK(t.cases == 1000);
    CHECK_MESSAGE(t.failures == 0, t.first);
}
