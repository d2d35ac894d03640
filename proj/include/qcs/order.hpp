#pragma once

#include "qcs/quat.hpp"

#include <array>

namespace qcs {

using Factored = std::vector<std::pair<Prime, int>>;

// Lattices in B (rank 4n, coordinates in the standard basis of the algebra).
ZLat lat_span(const QuatAlgebra& A, const std::vector<QElt>& gens);
ZLat lat_zf_span(const QuatAlgebra& A, const std::vector<QElt>& gens);
std::vector<QElt> lat_elems(const ZLat& L);
ZLat lat_mul(const QuatAlgebra& A, const ZLat& X, const ZLat& Y);
ZLat lat_ideal_mul(const QuatAlgebra& A, const ZLat& a, const ZLat& X);  // a an ideal of Z_F
ZLat lat_left_mul(const QuatAlgebra& A, const QElt& g, const ZLat& X);   // gX
ZLat lat_right_mul(const QuatAlgebra& A, const ZLat& X, const QElt& g);  // Xg
ZLat lat_conj(const QuatAlgebra& A, const ZLat& X);
ZLat colon_left(const QuatAlgebra& A, const ZLat& I, const ZLat& J);   // {g : gJ ⊂ I}
ZLat colon_right(const QuatAlgebra& A, const ZLat& I, const ZLat& J);  // {g : Jg ⊂ I}
ZLat left_order_lat(const QuatAlgebra& A, const ZLat& I);
ZLat right_order_lat(const QuatAlgebra& A, const ZLat& I);
// Representatives of W/L for L ⊂ W.
std::vector<QElt> coset_reps(const ZLat& W, const ZLat& L);
// {x ∈ L : x ↦ (trd(x g)) lands in the Z_F-ideal S}.
ZLat trd_preimage(const QuatAlgebra& A, const ZLat& L, const QElt& g, const ZLat& S);

ZLat field_different(const Field& F);

struct Order {
    QuatPtr A;
    ZLat L;
    ZLat disc;         // reduced discriminant
    Factored disc_fac;
    Factored level;    // disc away from the ramified primes
    ZLat level_ideal;
    bool is_maximal() const;
};

using OrderPtr = std::shared_ptr<const Order>;

OrderPtr make_order(QuatPtr A, const ZLat& L);
bool is_order(const QuatAlgebra& A, const ZLat& L);
ZLat order_discriminant(const QuatAlgebra& A, const ZLat& L, Factored* fac = nullptr);
OrderPtr standard_order(QuatPtr A);
OrderPtr maximal_order(QuatPtr A, const OrderPtr& seed);
OrderPtr maximal_order(QuatPtr A);

// O/P^eO ≅ M_2(Z_F/P^e) through a system of matrix units.
struct LocalSplitting {
    Prime P;
    int e = 1;
    ZLat Pe;
    QElt e11, e12, e21, e22;
};

LocalSplitting local_splitting(const Order& O, const Prime& P, int e, uint64_t seed = 1);
// Entries [x11, x12, x21, x22] of the image of x ∈ O, reduced modulo P^e.
std::array<FElt, 4> split_image(const QuatAlgebra& A, const LocalSplitting& S, const QElt& x);
// Element of O mapping to [[x, 0], [y, 0]].
QElt split_column_element(const QuatAlgebra& A, const LocalSplitting& S, const FElt& x, const FElt& y);
FElt zf_reduce(const ZLat& M, const FElt& x);  // x integral, M integral ideal

OrderPtr eichler_order(const OrderPtr& Omax, const Factored& N);

struct EichlerLocal {
    Prime P;
    int e = 1;
    OrderPtr omax;       // maximal order at P in which O is upper triangular
    LocalSplitting S;
    std::array<FElt, 2> v;  // common eigenvector modulo P^e
};

struct EichlerCert {
    OrderPtr omax;
    std::vector<EichlerLocal> local;
};

std::optional<EichlerCert> is_eichler(const OrderPtr& O);

// Points of P^1(Z_F/P^e) as pairs (1:y) then (x:1) with x ∈ P.
std::vector<std::array<FElt, 2>> p1_prime_power(const Field& F, const Prime& P, int e);
std::vector<FElt> residues(const Field& F, const ZLat& M);

std::vector<ZLat> twosided_generators(const Order& O);
ZLat commutator_ideal(const Order& O, const Prime& P, int e);

// Invertible (O', O)-ideal.
ZLat connecting_ideal(const OrderPtr& O, const OrderPtr& Op, long max_candidates = 20000);

// Hamilton-type orders in (-1,-1 / Q).
OrderPtr lipschitz_order();
OrderPtr hurwitz_order();

}  // namespace qcs
