#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcs {

using Int = mpz_class;
using Rat = mpq_class;
using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

enum class ErrKind { Precondition, ResourceCap, FixtureMissing, Unsupported, Internal };

struct Error : std::runtime_error {
    ErrKind kind;
    Error(ErrKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

[[noreturn]] void fail(ErrKind k, const std::string& msg);
inline void require(bool ok, const std::string& msg) {
    if (!ok) fail(ErrKind::Precondition, msg);
}

// Dense row-major matrix templated on the scalar.
template <class T>
struct Mat {
    int r = 0, c = 0;
    std::vector<T> a;
    Mat() = default;
    Mat(int rows, int cols) : r(rows), c(cols), a(size_t(rows) * cols) {}
    T& operator()(int i, int j) { return a[size_t(i) * c + j]; }
    const T& operator()(int i, int j) const { return a[size_t(i) * c + j]; }
    std::vector<T> row(int i) const { return {a.begin() + size_t(i) * c, a.begin() + size_t(i + 1) * c}; }
    void set_row(int i, const std::vector<T>& v) {
        for (int j = 0; j < c; ++j) (*this)(i, j) = v[j];
    }
    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    bool operator==(const Mat& o) const { return r == o.r && c == o.c && a == o.a; }
};

using IMat = Mat<Int>;
using QMat = Mat<Rat>;

template <class T>
Mat<T> operator*(const Mat<T>& x, const Mat<T>& y) {
    Mat<T> z(x.r, y.c);
    for (int i = 0; i < x.r; ++i)
        for (int k = 0; k < x.c; ++k) {
            if (x(i, k) == 0) continue;
            for (int j = 0; j < y.c; ++j) z(i, j) += x(i, k) * y(k, j);
        }
    return z;
}

template <class T>
Mat<T> transpose(const Mat<T>& x) {
    Mat<T> z(x.c, x.r);
    for (int i = 0; i < x.r; ++i)
        for (int j = 0; j < x.c; ++j) z(j, i) = x(i, j);
    return z;
}

QMat to_q(const IMat& m);
QVec to_q(const IVec& v);
QMat inverse(const QMat& m);  // throws on singular
Rat det(const QMat& m);
Int det(const IMat& m);

// Row vector times matrix.
QVec vec_mul(const QVec& v, const QMat& m);
Rat dot(const QVec& x, const QVec& y);
bool is_integral(const QVec& v);
bool is_zero(const QVec& v);

// Common denominator and integer numerators.
Int common_den(const QVec& v);
IVec scale_to_int(const QVec& v, const Int& d);

Int gcd_all(const IVec& v);
Int isqrt(const Int& n);
bool is_square(const Int& n);
bool is_prime(const Int& n);
int valuation(Int n, const Int& p);

// Trial division up to bound; the cofactor is accepted as prime when it is below bound^2.
std::vector<std::pair<Int, int>> factor_int(Int n, const Int& bound);
Int default_factor_bound();
void set_default_factor_bound(const Int& b);

std::vector<long> primes_up_to(long n);
bool is_squarefree(const Int& n);

// Canonical num/den.
inline Rat frac(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Floor and ceiling of rationals.
Int floor_q(const Rat& x);
Int ceil_q(const Rat& x);
Int round_q(const Rat& x);

std::string to_string(const Rat& x);
Rat rat_from_string(const std::string& s);

using Rng = std::mt19937_64;

}  // namespace qcs
