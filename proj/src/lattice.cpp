#include "qcs/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace qcs {

QVec ZLat::basis(int i) const {
    QVec v(H.c);
    for (int j = 0; j < H.c; ++j) v[j] = Rat(H(i, j), den);
    for (auto& x : v) x.canonicalize();
    return v;
}

QMat ZLat::basis_matrix() const {
    QMat m(H.r, H.c);
    for (int i = 0; i < H.r; ++i)
        for (int j = 0; j < H.c; ++j) {
            m(i, j) = Rat(H(i, j), den);
            m(i, j).canonicalize();
        }
    return m;
}

namespace {

struct HnfBuilder {
    int dim;
    std::vector<IVec> piv;
    std::vector<char> has;
    int rank = 0;

    explicit HnfBuilder(int d) : dim(d), piv(d), has(d, 0) {}

    void reduce_all() {
        for (int j = 0; j < dim; ++j) {
            if (!has[j]) continue;
            const IVec& pj = piv[j];
            for (int i = 0; i < j; ++i) {
                if (!has[i]) continue;
                IVec& pi = piv[i];
                if (pi[j] >= 0 && pi[j] < pj[j]) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), pi[j].get_mpz_t(), pj[j].get_mpz_t());
                for (int k = j; k < dim; ++k) pi[k] -= q * pj[k];
            }
        }
    }

    void insert(IVec v) {
        for (int j = 0; j < dim; ++j) {
            if (v[j] == 0) continue;
            if (!has[j]) {
                if (v[j] < 0)
                    for (auto& x : v) x = -x;
                piv[j] = std::move(v);
                has[j] = 1;
                ++rank;
                reduce_all();
                return;
            }
            IVec& P = piv[j];
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), P[j].get_mpz_t(), v[j].get_mpz_t());
            Int a = P[j] / g, b = v[j] / g;
            for (int k = j; k < dim; ++k) {
                Int np = s * P[k] + t * v[k];
                Int nv = a * v[k] - b * P[k];
                P[k] = std::move(np);
                v[k] = std::move(nv);
            }
            if (P[j] < 0)
                for (int k = j; k < dim; ++k) P[k] = -P[k];
        }
        if (rank == dim) reduce_all();
    }
};

}  // namespace

IMat hnf_rows(const std::vector<IVec>& rows, int dim) {
    HnfBuilder b(dim);
    for (auto& r : rows) b.insert(r);
    if (b.rank < dim) fail(ErrKind::Precondition, "generators are rank deficient");
    b.reduce_all();
    IMat H(dim, dim);
    for (int i = 0; i < dim; ++i) H.set_row(i, b.piv[i]);
    return H;
}

static ZLat normalize(IMat H, Int den) {
    Int g = den;
    for (auto& x : H.a) {
        if (g == 1) break;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    }
    if (g != 1) {
        for (auto& x : H.a) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
    }
    return ZLat{den, std::move(H)};
}

ZLat lattice_from_int_rows(const std::vector<IVec>& rows, const Int& den, int dim) {
    return normalize(hnf_rows(rows, dim), den);
}

ZLat lattice_from_rows(const std::vector<QVec>& rows, int dim) {
    Int d = 1;
    for (auto& r : rows) {
        Int c = common_den(r);
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_mpz_t());
    }
    std::vector<IVec> ir;
    ir.reserve(rows.size());
    for (auto& r : rows) ir.push_back(scale_to_int(r, d));
    return lattice_from_int_rows(ir, d, dim);
}

QVec lattice_coords(const ZLat& L, const QVec& v) {
    int n = L.dim();
    QVec w(n), x(n);
    for (int j = 0; j < n; ++j) w[j] = v[j] * L.den;
    for (int j = 0; j < n; ++j) {
        x[j] = w[j] / L.H(j, j);
        if (x[j] == 0) continue;
        for (int k = j + 1; k < n; ++k) w[k] -= x[j] * L.H(j, k);
    }
    return x;
}

bool lattice_contains(const ZLat& L, const QVec& v) { return is_integral(lattice_coords(L, v)); }

bool lattice_contains(const ZLat& L, const ZLat& M) {
    for (int i = 0; i < M.dim(); ++i)
        if (!lattice_contains(L, M.basis(i))) return false;
    return true;
}

ZLat lattice_sum(const ZLat& A, const ZLat& B) {
    Int d;
    mpz_lcm(d.get_mpz_t(), A.den.get_mpz_t(), B.den.get_mpz_t());
    Int fa = d / A.den, fb = d / B.den;
    std::vector<IVec> rows;
    for (int i = 0; i < A.dim(); ++i) {
        IVec r = A.H.row(i);
        for (auto& x : r) x *= fa;
        rows.push_back(std::move(r));
    }
    for (int i = 0; i < B.dim(); ++i) {
        IVec r = B.H.row(i);
        for (auto& x : r) x *= fb;
        rows.push_back(std::move(r));
    }
    return lattice_from_int_rows(rows, d, A.dim());
}

ZLat lattice_scale(const ZLat& L, const Rat& c) {
    if (c == 0) fail(ErrKind::Internal, "scale by zero");
    IMat H = L.H;
    Int num = abs(c.get_num());
    for (auto& x : H.a) x *= num;
    return normalize(std::move(H), L.den * c.get_den());
}

ZLat lattice_dual(const ZLat& L) {
    QMat inv = inverse(L.basis_matrix());
    QMat t = transpose(inv);
    std::vector<QVec> rows;
    for (int i = 0; i < t.r; ++i) rows.push_back(t.row(i));
    return lattice_from_rows(rows, L.dim());
}

ZLat lattice_intersect(const ZLat& A, const ZLat& B) {
    return lattice_dual(lattice_sum(lattice_dual(A), lattice_dual(B)));
}

Rat lattice_covolume(const ZLat& L) {
    Int p = 1;
    for (int i = 0; i < L.dim(); ++i) p *= L.H(i, i);
    Int d;
    mpz_pow_ui(d.get_mpz_t(), L.den.get_mpz_t(), L.dim());
    Rat r(p, d);
    r.canonicalize();
    return r;
}

Rat lattice_index(const ZLat& L, const ZLat& M) { return lattice_covolume(M) / lattice_covolume(L); }

IVec lattice_reduce(const ZLat& L, IVec v) {
    for (int j = 0; j < L.dim(); ++j) {
        if (v[j] >= 0 && v[j] < L.H(j, j)) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), v[j].get_mpz_t(), L.H(j, j).get_mpz_t());
        for (int k = j; k < L.dim(); ++k) v[k] -= q * L.H(j, k);
    }
    return v;
}

// ---------------------------------------------------------------- LLL

IMat lll_gram(const IMat& G0) {
    int n = G0.r;
    IMat G = G0;
    IMat U = IMat::identity(n);
    if (n <= 1) return U;
    // 1-based bookkeeping as in the classical integral algorithm.
    std::vector<Int> d(n + 1);
    std::vector<std::vector<Int>> lam(n + 1, std::vector<Int>(n + 1));
    auto g = [&](int i, int j) -> Int& { return G(i - 1, j - 1); };

    auto redi = [&](int k, int l) {
        Int two = 2 * lam[k][l];
        if (abs(two) <= d[l]) return;
        // q = nearest integer to lam/d
        Int q;
        Int num = 2 * lam[k][l] + d[l];
        Int den = 2 * d[l];
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        for (int j = 0; j < n; ++j) U(k - 1, j) -= q * U(l - 1, j);
        Int gkk = g(k, k) - 2 * q * g(k, l) + q * q * g(l, l);
        for (int j = 1; j <= n; ++j)
            if (j != k) g(k, j) -= q * g(l, j);
        g(k, k) = gkk;
        for (int j = 1; j <= n; ++j)
            if (j != k) g(j, k) = g(k, j);
        lam[k][l] -= q * d[l];
        for (int i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
    };

    int kmax = 1;
    d[0] = 1;
    d[1] = g(1, 1);
    int k = 2;
    while (k <= n) {
        if (k > kmax) {
            kmax = k;
            for (int j = 1; j <= k; ++j) {
                Int u = g(k, j);
                for (int i = 1; i < j; ++i) {
                    u = d[i] * u - lam[k][i] * lam[j][i];
                    mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), d[i - 1].get_mpz_t());
                }
                if (j < k)
                    lam[k][j] = u;
                else {
                    if (u == 0) fail(ErrKind::Internal, "LLL: dependent vectors");
                    d[k] = u;
                }
            }
        }
        while (true) {
            redi(k, k - 1);
            if (4 * d[k] * d[k - 2] < 3 * d[k - 1] * d[k - 1] - 4 * lam[k][k - 1] * lam[k][k - 1]) {
                // swap k, k-1
                for (int j = 0; j < n; ++j) std::swap(U(k - 1, j), U(k - 2, j));
                for (int j = 1; j <= n; ++j) std::swap(g(k, j), g(k - 1, j));
                for (int j = 1; j <= n; ++j) std::swap(g(j, k), g(j, k - 1));
                for (int j = 1; j <= k - 2; ++j) std::swap(lam[k][j], lam[k - 1][j]);
                Int l = lam[k][k - 1];
                Int B = d[k - 2] * d[k] + l * l;
                mpz_divexact(B.get_mpz_t(), B.get_mpz_t(), d[k - 1].get_mpz_t());
                for (int i = k + 1; i <= kmax; ++i) {
                    Int t = lam[i][k];
                    Int a = d[k] * lam[i][k - 1] - l * t;
                    mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), d[k - 1].get_mpz_t());
                    lam[i][k] = a;
                    Int b2 = B * t + l * lam[i][k];
                    mpz_divexact(b2.get_mpz_t(), b2.get_mpz_t(), d[k].get_mpz_t());
                    lam[i][k - 1] = b2;
                }
                d[k - 1] = B;
                if (k > 2) --k;
            } else {
                for (int l = k - 2; l >= 1; --l) redi(k, l);
                ++k;
                break;
            }
        }
    }
    return U;
}

// ---------------------------------------------------------------- enumeration

Rat quad_value(const QMat& G, const IVec& x) {
    Rat s = 0;
    int n = G.r;
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        Rat t = 0;
        for (int j = 0; j < n; ++j)
            if (x[j] != 0) t += G(i, j) * x[j];
        s += t * x[i];
    }
    return s;
}

bool is_positive_definite(const QMat& G) {
    int n = G.r;
    QMat a = G;
    for (int i = 0; i < n; ++i) {
        if (a(i, i) <= 0) return false;
        for (int k = i + 1; k < n; ++k) {
            Rat f = a(k, i) / a(i, i);
            for (int l = i; l < n; ++l) a(k, l) -= f * a(i, l);
        }
    }
    return true;
}

namespace {

// Largest integer x with (x - c)^2 <= r, and smallest; empty when hi < lo.
std::pair<Int, Int> int_range(const Rat& c, const Rat& r) {
    double s = std::sqrt(std::max(0.0, r.get_d()));
    double cd = c.get_d();
    Int hi(std::floor(cd + s)), lo(std::ceil(cd - s));
    auto ok = [&](const Int& x) {
        Rat t = Rat(x) - c;
        return t * t <= r;
    };
    while (ok(hi + 1)) ++hi;
    while (hi >= lo && Rat(hi) > c && !ok(hi)) --hi;
    while (ok(lo - 1)) --lo;
    while (lo <= hi && Rat(lo) < c && !ok(lo)) ++lo;
    return {lo, hi};
}

struct FP {
    int n;
    QMat q;  // q(i,i) diagonal, q(i,j) for j > i
    Rat bound;
    long cap;
    IVec x;
    std::vector<std::pair<Rat, IVec>> out;

    void rec(int i, const Rat& T, bool all_zero_above) {
        Rat c = 0;
        for (int j = i + 1; j < n; ++j)
            if (x[j] != 0) c -= q(i, j) * x[j];
        auto [lo, hi] = int_range(c, T / q(i, i));
        if (all_zero_above && lo < 0) lo = 0;
        for (Int v = lo; v <= hi; ++v) {
            x[i] = v;
            Rat t = Rat(v) - c;
            Rat rem = T - q(i, i) * t * t;
            if (rem < 0) continue;
            bool z = all_zero_above && v == 0;
            if (i == 0) {
                if (z) continue;
                Rat val = bound - rem;
                out.push_back({val, x});
                IVec neg = x;
                for (auto& e : neg) e = -e;
                out.push_back({val, std::move(neg)});
                if ((long)out.size() > cap) fail(ErrKind::ResourceCap, "enumeration cap exceeded");
            } else {
                rec(i - 1, rem, z);
            }
        }
        x[i] = 0;
    }
};

QMat cholesky_q(const QMat& G) {
    int n = G.r;
    QMat q(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) q(i, j) = G(i, j);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            q(j, i) = q(i, j);
            q(i, j) = q(i, j) / q(i, i);
        }
        for (int k = i + 1; k < n; ++k)
            for (int l = k; l < n; ++l) q(k, l) -= q(k, i) * q(i, l);
    }
    return q;
}

bool vec_less(const std::pair<Rat, IVec>& a, const std::pair<Rat, IVec>& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
}

}  // namespace

std::vector<std::pair<Rat, IVec>> fincke_pohst(const QMat& G, const Rat& bound, const EnumCap& cap) {
    std::vector<std::pair<Rat, IVec>> res;
    if (bound <= 0) return res;
    FP fp{G.r, cholesky_q(G), bound, cap.max_vectors, IVec(G.r, 0), {}};
    fp.rec(G.r - 1, bound, true);
    res = std::move(fp.out);
    std::sort(res.begin(), res.end(), vec_less);
    return res;
}

std::vector<std::pair<Rat, IVec>> short_vectors(const QMat& G, const Rat& bound, const EnumCap& cap) {
    int n = G.r;
    Int d = 1;
    for (auto& x : G.a) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
    IMat Gi(n, n);
    for (size_t i = 0; i < G.a.size(); ++i) Gi.a[i] = Rat(G.a[i] * d).get_num();
    IMat U = lll_gram(Gi);
    IMat Gr = U * Gi * transpose(U);
    QMat Gq(n, n);
    for (size_t i = 0; i < Gr.a.size(); ++i) Gq.a[i] = frac(Gr.a[i], d);
    for (auto& x : Gq.a) x.canonicalize();
    auto raw = fincke_pohst(Gq, bound, cap);
    std::vector<std::pair<Rat, IVec>> out;
    out.reserve(raw.size());
    for (auto& [val, y] : raw) {
        IVec x(n, 0);
        for (int i = 0; i < n; ++i) {
            if (y[i] == 0) continue;
            for (int j = 0; j < n; ++j) x[j] += y[i] * U(i, j);
        }
        out.push_back({val, std::move(x)});
    }
    std::sort(out.begin(), out.end(), vec_less);
    return out;
}

IVec random_lattice_element(const QMat& G, const Rat& bound, Rng& rng, bool nonzero) {
    auto vs = short_vectors(G, bound);
    size_t total = vs.size() + (nonzero ? 0 : 1);
    if (total == 0) fail(ErrKind::Precondition, "no nonzero lattice vector within bound");
    std::uniform_int_distribution<size_t> dist(0, total - 1);
    size_t k = dist(rng);
    if (k == vs.size()) return IVec(G.r, 0);
    return vs[k].second;
}

}  // namespace qcs
