#include "fixtures.hpp"
#include "props.hpp"

#include <doctest.h>

using namespace qcs;

TEST_CASE("hilbert symbols and ramification") {
    auto Q = rational_field();
    FElt m1 = f_int(*Q, -1);
    CHECK(hilbert_symbol(*Q, m1, m1, primes_above(*Q, Int(2))[0]) == -1);
    CHECK(hilbert_symbol(*Q, m1, m1, primes_above(*Q, Int(3))[0]) == 1);
    auto A = make_algebra(Q, m1, m1);
    CHECK(A->definite);
    REQUIRE(A->ram.size() == 1);
    CHECK(A->ram[0].p == 2);
    auto F = fixture("d5");
    auto B = algebra_with_ramification(F, {}, {0, 1});
    CHECK(B->definite);
    CHECK(B->ram.empty());
    CHECK_THROWS_AS(algebra_with_ramification(Q, {}, {0}), Error);  // odd number of places
}

TEST_CASE("maximal and Eichler orders") {
    auto O = hurwitz_order();
    CHECK(O->is_maximal());
    CHECK(unit_index(*O->A, O->L) == 12);
    CHECK(lattice_index(O->L, lipschitz_order()->L) == 2);
    auto Q = rational_field();
    for (long D : {2, 3, 5, 7, 11, 13, 37}) {
        auto Om = maximal_order(rational_definite_algebra(D));
        CHECK(Om->is_maximal());
        CHECK(ideal_norm(Om->disc) == D);
    }
    auto E = definite_eichler_order(Q, fac(*Q, "2"), fac(*Q, "3^2*5"));
    CHECK(ideal_norm(E->disc) == 90);
    CHECK(bool(is_eichler(E)));
    auto F = fixture("d5");
    auto E5 = definite_eichler_order(F, {}, fac(*F, "11@1*4"));
    CHECK(ideal_norm(E5->disc) == 44);
    CHECK(bool(is_eichler(E5)));
}

TEST_CASE("neighbours and projective lines") {
    auto O = hurwitz_order();
    auto Q = rational_field();
    auto nb = neighbors(unit_ideal(O), primes_above(*Q, Int(3))[0]);
    CHECK(nb.size() == 4);
    for (auto& J : nb) {
        CHECK(lattice_index(O->L, J.L) == 9);
        CHECK(J.nrd == ideal_principal(*Q, f_int(*Q, 3)));
    }
    CHECK(p1_points(*Q, fac(*Q, "3*5")).size() == 24);
    CHECK(p1_points(*Q, fac(*Q, "2^3")).size() == 12);
    auto F = fixture("d5");
    CHECK(p1_points(*F, fac(*F, "11@0^2")).size() == 132);
    auto I = ideal_of_norm(O, fac(*Q, "5^2"));
    CHECK(lattice_index(O->L, I.L) == 625);
}

TEST_CASE("index identity for invertible ideals") {
    auto F5 = fixture("d5");
    auto orders = props::round_trip_orders(F5);
    long total = 0;
    for (size_t k = 0; k < orders.size(); ++k) {
        auto t = props::index_identity(orders[k].O, k == 0 ? 68 : 66, 20 + k);
        total += t.cases;
        CHECK_MESSAGE(t.failures == 0, (orders[k].name + ": " + t.first));
    }
    CHECK(total == 200);
}

TEST_CASE("two-sided generators square to their norm") {
    auto Q = rational_field();
    auto F = fixture("d5");
    std::vector<OrderPtr> os{hurwitz_order(), definite_eichler_order(Q, fac(*Q, "2"), fac(*Q, "3^2")),
                             definite_eichler_order(Q, fac(*Q, "3"), fac(*Q, "2^2")),
                             definite_eichler_order(Q, fac(*Q, "2*3*5"), fac(*Q, "7")),
                             definite_eichler_order(F, {}, fac(*F, "4^2*5"))};
    for (auto& O : os) {
        auto t = props::twosided_squares(*O);
        CHECK(t.cases >= 1);
        CHECK_MESSAGE(t.failures == 0, t.first);
    }
}

TEST_CASE("connecting ideals") {
    auto Q = rational_field();
    auto O = definite_eichler_order(Q, fac(*Q, "37"), {});
    auto cs = class_set_definite(O);
    for (auto& r : cs.reps) {
        ZLat I = connecting_ideal(O, r.left);
        CHECK(left_order_lat(*O->A, I) == r.left->L);
        CHECK(right_order_lat(*O->A, I) == O->L);
    }
}
