#include "qcs/arith.hpp"

#include <algorithm>

namespace qcs {

void fail(ErrKind k, const std::string& msg) { throw Error(k, msg); }

QMat to_q(const IMat& m) {
    QMat q(m.r, m.c);
    for (size_t i = 0; i < m.a.size(); ++i) q.a[i] = m.a[i];
    return q;
}

QVec to_q(const IVec& v) { return QVec(v.begin(), v.end()); }

QMat inverse(const QMat& m) {
    int n = m.r;
    QMat a = m, b = QMat::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (a(i, col) != 0) { piv = i; break; }
        if (piv < 0) fail(ErrKind::Internal, "singular matrix");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(b(piv, j), b(col, j));
            }
        Rat inv = 1 / a(col, col);
        for (int j = 0; j < n; ++j) { a(col, j) *= inv; b(col, j) *= inv; }
        for (int i = 0; i < n; ++i) {
            if (i == col || a(i, col) == 0) continue;
            Rat f = a(i, col);
            for (int j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                b(i, j) -= f * b(col, j);
            }
        }
    }
    return b;
}

Rat det(const QMat& m) {
    int n = m.r;
    QMat a = m;
    Rat d = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (a(i, col) != 0) { piv = i; break; }
        if (piv < 0) return 0;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            d = -d;
        }
        d *= a(col, col);
        for (int i = col + 1; i < n; ++i) {
            if (a(i, col) == 0) continue;
            Rat f = a(i, col) / a(col, col);
            for (int j = col; j < n; ++j) a(i, j) -= f * a(col, j);
        }
    }
    return d;
}

Int det(const IMat& m) {
    // Bareiss fraction-free elimination.
    int n = m.r;
    if (n == 0) return 1;
    IMat a = m;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (a(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(k, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = t;
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

QVec vec_mul(const QVec& v, const QMat& m) {
    QVec out(m.c);
    for (int i = 0; i < m.r; ++i) {
        if (v[i] == 0) continue;
        for (int j = 0; j < m.c; ++j) out[j] += v[i] * m(i, j);
    }
    return out;
}

Rat dot(const QVec& x, const QVec& y) {
    Rat s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

bool is_integral(const QVec& v) {
    for (auto& x : v)
        if (x.get_den() != 1) return false;
    return true;
}

bool is_zero(const QVec& v) {
    for (auto& x : v)
        if (x != 0) return false;
    return true;
}

Int common_den(const QVec& v) {
    Int d = 1;
    for (auto& x : v) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
    return d;
}

IVec scale_to_int(const QVec& v, const Int& d) {
    IVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        Rat t = v[i] * d;
        if (t.get_den() != 1) fail(ErrKind::Internal, "scale_to_int: not integral");
        out[i] = t.get_num();
    }
    return out;
}

Int gcd_all(const IVec& v) {
    Int g = 0;
    for (auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const Int& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()); }

bool is_prime(const Int& n) { return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

int valuation(Int n, const Int& p) {
    if (n == 0) fail(ErrKind::Internal, "valuation of zero");
    int v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

static Int g_factor_bound = 1000000;
Int default_factor_bound() { return g_factor_bound; }
void set_default_factor_bound(const Int& b) { g_factor_bound = b; }

std::vector<std::pair<Int, int>> factor_int(Int n, const Int& bound) {
    std::vector<std::pair<Int, int>> out;
    if (n < 0) n = -n;
    if (n == 0) fail(ErrKind::Internal, "factor_int(0)");
    for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (p > bound) {
            if (n > bound * bound && !is_prime(n))
                fail(ErrKind::ResourceCap, "integer exceeds trial-division bound: " + n.get_str());
            break;
        }
        if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            int e = 0;
            while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) { n /= p; ++e; }
            out.push_back({p, e});
        }
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

std::vector<long> primes_up_to(long n) {
    std::vector<long> ps;
    if (n < 2) return ps;
    std::vector<char> sieve(n + 1, 1);
    for (long i = 2; i <= n; ++i) {
        if (!sieve[i]) continue;
        ps.push_back(i);
        for (long j = i * i; j <= n; j += i) sieve[j] = 0;
    }
    return ps;
}

bool is_squarefree(const Int& n) {
    for (auto& [p, e] : factor_int(n, default_factor_bound()))
        if (e > 1) return false;
    return true;
}

Int floor_q(const Rat& x) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

Int ceil_q(const Rat& x) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

Int round_q(const Rat& x) { return floor_q(x + Rat(1, 2)); }

std::string to_string(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) fail(ErrKind::Precondition, "bad rational: " + s);
    r.canonicalize();
    return r;
}

}  // namespace qcs
