#pragma once

#include "qcs/field.hpp"

namespace qcs {

// Elements of B = (a,b / F) in the Z-basis e_{j*n+i} = omega_i * (1, alpha, beta, alpha*beta)_j.
using QElt = QVec;

struct QuatAlgebra {
    FieldPtr F;
    FElt a, b, ab;
    int n = 1;
    std::vector<Prime> ram;      // ramified finite primes, sorted
    std::vector<int> ram_inf;    // ramified real places
    ZLat disc;                   // product of ram
    bool definite = false;
    QMat T;                      // Gram of Tr(nrd) on the standard Z-basis
    int dim() const { return 4 * n; }
};

using QuatPtr = std::shared_ptr<const QuatAlgebra>;

// Build the algebra and its ramification; throws Unsupported on undecidable dyadic symbols.
QuatPtr make_algebra(FieldPtr F, const FElt& a, const FElt& b);
// Same, with the ramification supplied (odd-prime symbols are still verified).
QuatPtr make_algebra_with_ramification(FieldPtr F, const FElt& a, const FElt& b, std::vector<Prime> ram,
                                       std::vector<int> ram_inf);
// Deterministic search for (a,b) with the given finite ramification and ramified real places.
QuatPtr algebra_with_ramification(FieldPtr F, const std::vector<Prime>& ram, const std::vector<int>& ram_inf);
// Totally definite algebra of discriminant D over Q.
QuatPtr rational_definite_algebra(long D);

QElt q_zero(const QuatAlgebra& A);
QElt q_one(const QuatAlgebra& A);
QElt q_from_field(const QuatAlgebra& A, const FElt& x);
QElt q_make(const QuatAlgebra& A, const FElt& x, const FElt& y, const FElt& z, const FElt& w);
FElt q_comp(const QuatAlgebra& A, const QElt& g, int j);
QElt q_add(const QElt& x, const QElt& y);
QElt q_sub(const QElt& x, const QElt& y);
QElt q_scale(const QElt& x, const Rat& c);
QElt q_fmul(const QuatAlgebra& A, const FElt& c, const QElt& x);
QElt q_mul(const QuatAlgebra& A, const QElt& x, const QElt& y);
QElt q_conj(const QuatAlgebra& A, const QElt& x);
FElt q_trd(const QuatAlgebra& A, const QElt& x);
FElt q_nrd(const QuatAlgebra& A, const QElt& x);
QElt q_inv(const QuatAlgebra& A, const QElt& x);
bool q_is_zero(const QElt& x);

// Matrix of y -> x*y (left) or y -> y*x (right) on the standard basis, row convention.
QMat q_left_mat(const QuatAlgebra& A, const QElt& x);
QMat q_right_mat(const QuatAlgebra& A, const QElt& x);

// Gram matrix of Tr(nrd) on the rows of M.
QMat gram_trnrd(const QuatAlgebra& A, const QMat& M);
// Rational approximation of the absolute reduced norm sum_v Q_v on the rows of M.
QMat gram_absolute(const QuatAlgebra& A, const QMat& M);

int hilbert_symbol(const Field& F, const FElt& a, const FElt& b, const Prime& P);
int hilbert_symbol_real(const Field& F, const FElt& a, const FElt& b, int place);
// Dyadic symbol by solubility of a x^2 + b y^2 = z^2 modulo P^(2v(2)+3).
int hilbert_symbol_dyadic_search(const Field& F, const FElt& a, const FElt& b, const Prime& P);
int hilbert_symbol_q2(const Int& a, const Int& b);

// Finite ramified primes and real places of (a,b / F).
std::pair<std::vector<Prime>, std::vector<int>> ramification(const Field& F, const FElt& a, const FElt& b);

}  // namespace qcs
