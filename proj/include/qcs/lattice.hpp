#pragma once

#include "qcs/arith.hpp"

#include <functional>
#include <optional>

namespace qcs {

// Full-rank lattice (1/den) * rowspan(H) with H in upper-triangular row HNF.
struct ZLat {
    Int den = 1;
    IMat H;

    int dim() const { return H.r; }
    QVec basis(int i) const;
    QMat basis_matrix() const;
    bool operator==(const ZLat& o) const { return den == o.den && H == o.H; }
    bool operator!=(const ZLat& o) const { return !(*this == o); }
};

// HNF of integer rows spanning a rank-dim lattice; throws when rank deficient.
IMat hnf_rows(const std::vector<IVec>& rows, int dim);

ZLat lattice_from_rows(const std::vector<QVec>& rows, int dim);
ZLat lattice_from_int_rows(const std::vector<IVec>& rows, const Int& den, int dim);

// Coordinates of v in the lattice basis (rational in general).
QVec lattice_coords(const ZLat& L, const QVec& v);
bool lattice_contains(const ZLat& L, const QVec& v);
bool lattice_contains(const ZLat& L, const ZLat& M);  // M ⊂ L
ZLat lattice_sum(const ZLat& A, const ZLat& B);
ZLat lattice_scale(const ZLat& L, const Rat& c);
ZLat lattice_dual(const ZLat& L);  // w.r.t. the standard dot product
ZLat lattice_intersect(const ZLat& A, const ZLat& B);
Rat lattice_covolume(const ZLat& L);  // |det| of a basis
Rat lattice_index(const ZLat& L, const ZLat& M);  // [L : M] for M ⊂ L
// Reduce an integral-coordinate vector modulo an integral lattice (den = 1) into its HNF box.
IVec lattice_reduce(const ZLat& L, IVec v);

// Integral LLL (delta = 3/4) on a positive definite integer Gram matrix.
// Returns the unimodular transform U (rows = new basis in old coordinates).
IMat lll_gram(const IMat& G);

struct EnumCap {
    long max_vectors = 10000000;
};

// All nonzero integer x with x G x^T <= bound, G positive definite rational.
// Coordinates are in the basis of G; sorted by (value, lexicographic).
std::vector<std::pair<Rat, IVec>> fincke_pohst(const QMat& G, const Rat& bound, const EnumCap& cap = {});

// Short vectors of a lattice under a Gram form given on the lattice basis: LLL first, then
// Fincke-Pohst, results reported in the original basis coordinates.
std::vector<std::pair<Rat, IVec>> short_vectors(const QMat& G, const Rat& bound, const EnumCap& cap = {});

bool is_positive_definite(const QMat& G);
Rat quad_value(const QMat& G, const IVec& x);

// Uniform element of {x : x G x^T <= bound}; zero included unless nonzero is set.
IVec random_lattice_element(const QMat& G, const Rat& bound, Rng& rng, bool nonzero);

}  // namespace qcs
