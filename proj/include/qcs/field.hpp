#pragma once

#include "qcs/arith.hpp"
#include "qcs/lattice.hpp"

#include <memory>
#include <optional>
#include <string>

namespace qcs {

using FElt = QVec;  // coordinates over the integral basis

struct Interval {
    Rat lo, hi;
};

// A CM extension K = F[x]/(g) with Z_K = Z_F[x]/(g), used by the embedding-number formulas.
struct CMExtension {
    FElt g1, g0;  // g = x^2 + g1 x + g0
    int q = 0;    // unit index [Z_K^* : Z_F^*] of the maximal order
};

struct EllipticOrder {
    int q = 0;         // [R^* : Z_F^*]
    int ext = 0;       // index into Field::cm
    ZLat conductor;    // ideal of Z_F
    long h = 0;        // class number of R
};

struct ClassGroup {
    std::vector<long> orders;   // invariant factors
    std::vector<ZLat> reps;     // one ideal per class, reps[0] trivial
    long size() const { return (long)reps.size(); }
};

struct Field {
    std::string name;
    int n = 1;
    IVec poly;           // monic, low to high degree
    QMat ib, ib_inv;     // integral basis in power coordinates and its inverse
    Int disc = 1;
    Int index = 1;       // [Z_F : Z[theta]]
    std::vector<std::vector<IVec>> mt;
    FElt one;
    std::vector<FElt> units;
    std::vector<std::vector<int>> unit_signs;
    std::vector<Interval> roots;  // ascending real roots of poly
    ClassGroup cl, ncl;
    std::vector<CMExtension> cm;
    std::vector<EllipticOrder> elliptic;
    bool has_elliptic = false;
};

using FieldPtr = std::shared_ptr<const Field>;

// Construction.
Field make_field(const std::string& name, const IVec& poly, const QMat& ib, const std::vector<FElt>& units);
FieldPtr rational_field();
FieldPtr quadratic_field(long d);
FieldPtr load_field(const std::string& path);
void finish_field(Field& F);  // roots, signs, invariant checks

// Element arithmetic.
FElt f_int(const Field& F, const Rat& c);
FElt f_add(const FElt& x, const FElt& y);
FElt f_sub(const FElt& x, const FElt& y);
FElt f_neg(const FElt& x);
FElt f_scale(const FElt& x, const Rat& c);
FElt f_mul(const Field& F, const FElt& x, const FElt& y);
FElt f_inv(const Field& F, const FElt& x);
FElt f_pow(const Field& F, const FElt& x, long e);
QMat f_mulmat(const Field& F, const FElt& x);
Rat f_norm(const Field& F, const FElt& x);
Rat f_trace(const Field& F, const FElt& x);
bool f_is_zero(const FElt& x);
bool f_is_rational(const Field& F, const FElt& x);
bool f_is_unit(const Field& F, const FElt& x);
FElt f_from_power(const Field& F, const QVec& c);
QVec f_to_power(const Field& F, const FElt& x);

// Real embeddings, decided by refinement of exact rational intervals.
Interval f_embed(const Field& F, const FElt& x, int place, int bits = 64);
int f_sign(const Field& F, const FElt& x, int place);
double f_approx(const Field& F, const FElt& x, int place);
bool f_totally_positive(const Field& F, const FElt& x);

// Units.
std::vector<FElt> totally_positive_unit_reps(const Field& F);  // U+ / U^2
std::optional<FElt> unit_with_signs(const Field& F, const std::vector<int>& signs, const std::vector<int>& places);
double unit_constant(const Field& F);

// Ideals of Z_F (dimension-n lattices).
ZLat ideal_from_gens(const Field& F, const std::vector<FElt>& gens);
ZLat ideal_principal(const Field& F, const FElt& x);
ZLat ideal_unit(const Field& F);
ZLat ideal_mul(const Field& F, const ZLat& A, const ZLat& B);
ZLat ideal_pow(const Field& F, const ZLat& A, int e);
ZLat ideal_inverse(const Field& F, const ZLat& A);
ZLat ideal_add(const ZLat& A, const ZLat& B);
ZLat ideal_intersect(const ZLat& A, const ZLat& B);
Rat ideal_norm(const ZLat& A);
bool ideal_contains(const ZLat& A, const FElt& x);
bool ideal_divides(const ZLat& A, const ZLat& B);  // A | B, i.e. B ⊂ A
Int ideal_min_int(const Field& F, const ZLat& A);  // positive generator of A ∩ Z (A integral)

struct Prime {
    ZLat P;
    Int p;
    int e = 1, f = 1;
    Int norm;
    FElt anti;  // beta with beta*P ⊂ pZ_F, beta ∉ pZ_F
    FElt unif;  // element of P \ P^2
    bool operator==(const Prime& o) const { return P == o.P; }
};

std::vector<Prime> primes_above(const Field& F, const Int& p);
int prime_valuation(const Field& F, const Prime& P, const FElt& x);
int ideal_valuation(const Field& F, const Prime& P, const ZLat& A);
std::vector<std::pair<Prime, int>> factor_ideal(const Field& F, const ZLat& A);
ZLat ideal_from_factors(const Field& F, const std::vector<std::pair<Prime, int>>& fac);
std::vector<Prime> primes_up_to_norm(const Field& F, long bound);
bool prime_less(const Prime& a, const Prime& b);

// Principality and classes.
std::optional<FElt> is_principal_zf(const Field& F, const ZLat& A, bool narrow);
int class_index(const Field& F, const ZLat& A, bool narrow);
std::optional<Prime> prime_in_class(const Field& F, int cls, bool narrow, const std::vector<Prime>& exclude, long bound);
ClassGroup compute_class_group(const Field& F, bool narrow, long hint_size);

// Residue field Z_F / P as F_p^f.
struct ResidueField {
    const Field* F = nullptr;
    Prime P;
    int64_t p = 0;
    int f = 1;
    std::vector<int> pos;                              // HNF positions with diagonal p
    std::vector<std::vector<std::vector<int64_t>>> mt;  // products of position basis elements
    std::vector<int64_t> one;

    using E = std::vector<int64_t>;
    E reduce(const FElt& x) const;  // x integral at P after clearing p-free denominators
    FElt lift(const E& x) const;
    E mul(const E& x, const E& y) const;
    E add(const E& x, const E& y) const;
    E sub(const E& x, const E& y) const;
    E scal(const E& x, int64_t c) const;
    E pow(const E& x, const Int& e) const;
    E inv(const E& x) const;
    bool is_zero(const E& x) const;
    Int size() const;
    int legendre(const E& x) const;  // odd characteristic
    std::vector<E> elements() const;
    E from_index(Int k) const;
};

ResidueField residue_field(const Field& F, const Prime& P);

// Polynomials over F_p (coefficients low to high).
using PolyP = std::vector<int64_t>;
std::vector<std::pair<PolyP, int>> factor_mod_p(const IVec& f, int64_t p, uint64_t seed = 1);

int64_t mulmod(int64_t a, int64_t b, int64_t m);
int64_t powmod(int64_t a, Int e, int64_t m);
int64_t invmod(int64_t a, int64_t m);

}  // namespace qcs
