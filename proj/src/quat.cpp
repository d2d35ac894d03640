#include "qcs/quat.hpp"

#include <algorithm>
#include <cmath>

namespace qcs {

namespace {

// (j,l) -> sign, constant (0:1, 1:a, 2:b, 3:ab), target component
struct ProdEntry {
    int sign, cst, k;
};

constexpr ProdEntry kProd[4][4] = {
    {{1, 0, 0}, {1, 0, 1}, {1, 0, 2}, {1, 0, 3}},
    {{1, 0, 1}, {1, 1, 0}, {1, 0, 3}, {1, 1, 2}},
    {{1, 0, 2}, {-1, 0, 3}, {1, 2, 0}, {-1, 2, 1}},
    {{1, 0, 3}, {-1, 1, 2}, {1, 2, 1}, {-1, 3, 0}},
};

const FElt& constant(const QuatAlgebra& A, int c) {
    switch (c) {
        case 1: return A.a;
        case 2: return A.b;
        case 3: return A.ab;
        default: return A.F->one;
    }
}

QMat trnrd_gram(const QuatAlgebra& A) {
    const Field& F = *A.F;
    int n = F.n;
    QMat T(4 * n, 4 * n);
    FElt c[4] = {F.one, f_neg(A.a), f_neg(A.b), A.ab};
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                FElt wi(n), wk(n);
                wi[i] = 1;
                wk[k] = 1;
                T(j * n + i, j * n + k) = f_trace(F, f_mul(F, c[j], f_mul(F, wi, wk)));
            }
    return T;
}

FElt integral_square_class(const Field&, const FElt& x) {
    Int d = common_den(x);
    return f_scale(x, Rat(d * d));
}

bool same_primes(std::vector<Prime> x, std::vector<Prime> y) {
    std::sort(x.begin(), x.end(), prime_less);
    std::sort(y.begin(), y.end(), prime_less);
    return x == y;
}

}  // namespace

QElt q_zero(const QuatAlgebra& A) { return QElt(A.dim()); }

QElt q_one(const QuatAlgebra& A) { return q_from_field(A, A.F->one); }

QElt q_from_field(const QuatAlgebra& A, const FElt& x) {
    QElt g(A.dim());
    for (int i = 0; i < A.n; ++i) g[i] = x[i];
    return g;
}

QElt q_make(const QuatAlgebra& A, const FElt& x, const FElt& y, const FElt& z, const FElt& w) {
    QElt g(A.dim());
    const FElt* c[4] = {&x, &y, &z, &w};
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < A.n; ++i) g[j * A.n + i] = (*c[j])[i];
    return g;
}

FElt q_comp(const QuatAlgebra& A, const QElt& g, int j) { return FElt(g.begin() + j * A.n, g.begin() + (j + 1) * A.n); }

QElt q_add(const QElt& x, const QElt& y) { return f_add(x, y); }
QElt q_sub(const QElt& x, const QElt& y) { return f_sub(x, y); }
QElt q_scale(const QElt& x, const Rat& c) { return f_scale(x, c); }
bool q_is_zero(const QElt& x) { return is_zero(x); }

QElt q_fmul(const QuatAlgebra& A, const FElt& c, const QElt& x) {
    QElt g(A.dim());
    for (int j = 0; j < 4; ++j) {
        FElt t = f_mul(*A.F, c, q_comp(A, x, j));
        for (int i = 0; i < A.n; ++i) g[j * A.n + i] = t[i];
    }
    return g;
}

QElt q_mul(const QuatAlgebra& A, const QElt& x, const QElt& y) {
    const Field& F = *A.F;
    int n = A.n;
    QElt g(A.dim());
    FElt xc[4], yc[4];
    bool xz[4], yz[4];
    for (int j = 0; j < 4; ++j) {
        xc[j] = q_comp(A, x, j);
        yc[j] = q_comp(A, y, j);
        xz[j] = is_zero(xc[j]);
        yz[j] = is_zero(yc[j]);
    }
    for (int j = 0; j < 4; ++j) {
        if (xz[j]) continue;
        for (int l = 0; l < 4; ++l) {
            if (yz[l]) continue;
            const ProdEntry& e = kProd[j][l];
            FElt t = f_mul(F, xc[j], yc[l]);
            if (e.cst) t = f_mul(F, constant(A, e.cst), t);
            for (int i = 0; i < n; ++i) {
                if (e.sign > 0)
                    g[e.k * n + i] += t[i];
                else
                    g[e.k * n + i] -= t[i];
            }
        }
    }
    return g;
}

QElt q_conj(const QuatAlgebra& A, const QElt& x) {
    QElt g(x);
    for (int u = A.n; u < A.dim(); ++u) g[u] = -g[u];
    return g;
}

FElt q_trd(const QuatAlgebra& A, const QElt& x) { return f_scale(q_comp(A, x, 0), 2); }

FElt q_nrd(const QuatAlgebra& A, const QElt& x) {
    const Field& F = *A.F;
    FElt x0 = q_comp(A, x, 0), x1 = q_comp(A, x, 1), x2 = q_comp(A, x, 2), x3 = q_comp(A, x, 3);
    FElt r = f_mul(F, x0, x0);
    if (!is_zero(x1)) r = f_sub(r, f_mul(F, A.a, f_mul(F, x1, x1)));
    if (!is_zero(x2)) r = f_sub(r, f_mul(F, A.b, f_mul(F, x2, x2)));
    if (!is_zero(x3)) r = f_add(r, f_mul(F, A.ab, f_mul(F, x3, x3)));
    return r;
}

QElt q_inv(const QuatAlgebra& A, const QElt& x) {
    FElt N = q_nrd(A, x);
    if (f_is_zero(N)) fail(ErrKind::Precondition, "element is not invertible");
    return q_fmul(A, f_inv(*A.F, N), q_conj(A, x));
}

QMat q_left_mat(const QuatAlgebra& A, const QElt& x) {
    int d = A.dim();
    QMat M(d, d);
    for (int u = 0; u < d; ++u) {
        QElt e(d);
        e[u] = 1;
        M.set_row(u, q_mul(A, x, e));
    }
    return M;
}

QMat q_right_mat(const QuatAlgebra& A, const QElt& x) {
    int d = A.dim();
    QMat M(d, d);
    for (int u = 0; u < d; ++u) {
        QElt e(d);
        e[u] = 1;
        M.set_row(u, q_mul(A, e, x));
    }
    return M;
}

QMat gram_trnrd(const QuatAlgebra& A, const QMat& M) { return M * A.T * transpose(M); }

QMat gram_absolute(const QuatAlgebra& A, const QMat& M) {
    const Field& F = *A.F;
    int n = F.n, d = A.dim();
    QMat G(d, d);
    FElt c[4] = {F.one, A.a, A.b, A.ab};
    const double scale = std::ldexp(1.0, 30);
    for (int v = 0; v < n; ++v) {
        std::vector<double> w(n);
        for (int i = 0; i < n; ++i) {
            FElt e(n);
            e[i] = 1;
            w[i] = f_approx(F, e, v);
        }
        for (int j = 0; j < 4; ++j) {
            double cv = std::fabs(f_approx(F, c[j], v));
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k) {
                    double val = cv * w[i] * w[k];
                    G(j * n + i, j * n + k) += frac(Int((long)std::llround(val * scale)), Int(1) << 30);
                }
        }
    }
    return M * G * transpose(M);
}

int hilbert_symbol_real(const Field& F, const FElt& a, const FElt& b, int place) {
    return f_sign(F, a, place) < 0 && f_sign(F, b, place) < 0 ? -1 : 1;
}

int hilbert_symbol_q2(const Int& a0, const Int& b0) {
    Int a = a0, b = b0;
    int al = valuation(a, 2), be = valuation(b, 2);
    a >>= al;
    b >>= be;
    auto mod8 = [](const Int& x) {
        Int r;
        mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), 8);
        return r.get_si();
    };
    long u = mod8(a), w = mod8(b);
    auto eps = [](long x) { return ((x - 1) / 2) & 1; };
    auto omg = [](long x) { return ((x * x - 1) / 8) & 1; };
    long e = eps(u) * eps(w) + al * omg(w) + be * omg(u);
    return e % 2 ? -1 : 1;
}

int hilbert_symbol_dyadic_search(const Field& F, const FElt& a0, const FElt& b0, const Prime& P) {
    int n = F.n;
    // remove even powers of the uniformizer; valuations become 0 or 1
    FElt s = f_scale(P.anti, Rat(1) / Rat(P.p));
    auto normalize = [&](FElt x) {
        x = integral_square_class(F, x);
        int v = prime_valuation(F, P, x);
        for (int k = 0; k < v / 2; ++k) x = f_mul(F, x, f_mul(F, s, s));
        return x;
    };
    FElt a = normalize(a0), b = normalize(b0);
    int K = 2 * P.e + 3;
    ZLat PK = ideal_pow(F, P.P, K);
    std::vector<std::vector<int64_t>> H(n, std::vector<int64_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) H[i][j] = PK.H(i, j).get_si();
    int64_t M = 1;
    for (int t = 0; t < (K + P.e - 1) / P.e; ++t) M *= 2;
    auto reduce = [&](std::vector<int64_t> v) {
        for (auto& x : v) x = ((x % M) + M) % M;
        for (int j = 0; j < n; ++j) {
            int64_t q = v[j] >= 0 ? v[j] / H[j][j] : -((-v[j] + H[j][j] - 1) / H[j][j]);
            if (q)
                for (int k = j; k < n; ++k) v[k] -= q * H[j][k];
        }
        return v;
    };
    std::vector<int64_t> radix(n);
    int64_t size = 1;
    for (int j = 0; j < n; ++j) {
        radix[j] = size;
        size *= H[j][j];
    }
    require(size <= (int64_t)1 << 24, "dyadic residue ring too large");
    auto index = [&](const std::vector<int64_t>& v) {
        int64_t r = 0;
        for (int j = 0; j < n; ++j) r += v[j] * radix[j];
        return r;
    };
    auto elem = [&](int64_t k) {
        std::vector<int64_t> v(n);
        for (int j = 0; j < n; ++j) v[j] = (k / radix[j]) % H[j][j];
        return v;
    };
    auto mul = [&](const std::vector<int64_t>& x, const std::vector<int64_t>& y) {
        std::vector<int64_t> z(n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                int64_t c = x[i] * y[j] % M;
                for (int k = 0; k < n; ++k) z[k] = (z[k] + c * F.mt[i][j][k].get_si()) % M;
            }
        return reduce(z);
    };
    auto add = [&](const std::vector<int64_t>& x, const std::vector<int64_t>& y) {
        std::vector<int64_t> z(n);
        for (int k = 0; k < n; ++k) z[k] = x[k] + y[k];
        return reduce(z);
    };
    auto tovec = [&](const FElt& x) {
        std::vector<int64_t> v(n);
        for (int k = 0; k < n; ++k) {
            Int r;
            Int mm = M;
            mpz_fdiv_r(r.get_mpz_t(), x[k].get_num_mpz_t(), mm.get_mpz_t());
            v[k] = r.get_si();
        }
        return reduce(v);
    };
    std::vector<int64_t> av = tovec(a), bv = tovec(b), one = tovec(F.one);
    std::vector<int64_t> neg_one(n);
    for (int k = 0; k < n; ++k) neg_one[k] = -one[k];
    neg_one = reduce(neg_one);
    std::vector<char> Sa(size), Sb(size), Sq(size);
    for (int64_t k = 0; k < size; ++k) {
        auto x = elem(k);
        auto x2 = mul(x, x);
        Sq[index(x2)] = 1;
        Sa[index(mul(av, x2))] = 1;
        Sb[index(mul(bv, x2))] = 1;
    }
    for (int64_t k = 0; k < size; ++k) {
        if (!Sa[k]) continue;
        auto t = elem(k);
        // a x^2 + b y^2 = 1
        std::vector<int64_t> r(n);
        for (int j = 0; j < n; ++j) r[j] = one[j] - t[j];
        if (Sb[index(reduce(r))]) return 1;
        // a x^2 + b = z^2
        if (Sq[index(add(t, bv))]) return 1;
    }
    for (int64_t k = 0; k < size; ++k) {
        if (!Sb[k]) continue;
        // a + b y^2 = z^2
        if (Sq[index(add(av, elem(k)))]) return 1;
    }
    return -1;
}

int hilbert_symbol(const Field& F, const FElt& a0, const FElt& b0, const Prime& P) {
    require(!f_is_zero(a0) && !f_is_zero(b0), "Hilbert symbol of zero");
    FElt a = integral_square_class(F, a0), b = integral_square_class(F, b0);
    if (P.p == 2) {
        if (F.n == 1) return hilbert_symbol_q2(a[0].get_num(), b[0].get_num());
        if (F.n == 2) return hilbert_symbol_dyadic_search(F, a, b, P);
        fail(ErrKind::Unsupported, "dyadic Hilbert symbol over a field of degree >= 3");
    }
    int al = prime_valuation(F, P, a), be = prime_valuation(F, P, b);
    FElt s = f_scale(P.anti, Rat(1) / Rat(P.p));
    FElt u = a, w = b;
    for (int k = 0; k < al; ++k) u = f_mul(F, u, s);
    for (int k = 0; k < be; ++k) w = f_mul(F, w, s);
    ResidueField R = residue_field(F, P);
    auto r = R.mul(R.pow(R.reduce(u), be), R.pow(R.inv(R.reduce(w)), al));
    if ((al * be) % 2) r = R.scal(r, -1);
    return R.legendre(r);
}

std::pair<std::vector<Prime>, std::vector<int>> ramification(const Field& F, const FElt& a0, const FElt& b0) {
    FElt a = integral_square_class(F, a0), b = integral_square_class(F, b0);
    std::vector<int> inf;
    int parity = 0;
    for (int v = 0; v < F.n; ++v)
        if (hilbert_symbol_real(F, a, b, v) < 0) {
            inf.push_back(v);
            parity ^= 1;
        }
    Rat N = f_norm(F, a) * f_norm(F, b) * 2;
    std::vector<Prime> fin;
    std::vector<Prime> dyadic;
    for (auto& [p, e] : factor_int(N.get_num(), default_factor_bound())) {
        for (auto& P : primes_above(F, p)) {
            if (p == 2) {
                dyadic.push_back(P);
                continue;
            }
            if (hilbert_symbol(F, a, b, P) < 0) {
                fin.push_back(P);
                parity ^= 1;
            }
        }
    }
    if (F.n <= 2 || dyadic.size() != 1) {
        for (auto& P : dyadic)
            if (hilbert_symbol(F, a, b, P) < 0) {
                fin.push_back(P);
                parity ^= 1;
            }
        if (parity) fail(ErrKind::Internal, "ramification set has odd cardinality");
    } else if (parity) {
        fin.push_back(dyadic[0]);
    }
    std::sort(fin.begin(), fin.end(), prime_less);
    return {fin, inf};
}

namespace {

QuatPtr build(FieldPtr F, const FElt& a, const FElt& b, std::vector<Prime> ram, std::vector<int> ram_inf) {
    auto A = std::make_shared<QuatAlgebra>();
    A->F = F;
    A->n = F->n;
    A->a = a;
    A->b = b;
    A->ab = f_mul(*F, a, b);
    std::sort(ram.begin(), ram.end(), prime_less);
    A->ram = ram;
    A->ram_inf = ram_inf;
    A->definite = (int)ram_inf.size() == F->n;
    A->disc = ideal_unit(*F);
    for (auto& P : ram) A->disc = ideal_mul(*F, A->disc, P.P);
    A->T = trnrd_gram(*A);
    return A;
}

// Elements x of the ideal L with small Tr(x^2) and the prescribed signs, sorted by (|N|, Tr(x^2), coords).
std::vector<FElt> small_signed_elements(const Field& F, const ZLat& L, const std::vector<int>& signs, Rat bound) {
    int n = F.n;
    std::vector<std::pair<std::pair<Rat, Rat>, FElt>> out;
    std::vector<FElt> B;
    for (int i = 0; i < n; ++i) B.push_back(L.basis(i));
    QMat G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = f_trace(F, f_mul(F, B[i], B[j]));
    for (auto& [t, x] : short_vectors(G, bound)) {
        FElt e(n);
        for (int i = 0; i < n; ++i)
            if (x[i] != 0) e = f_add(e, f_scale(B[i], Rat(x[i])));
        bool ok = true;
        for (int v = 0; v < n && ok; ++v) ok = f_sign(F, e, v) == signs[v];
        if (!ok) continue;
        Rat N = f_norm(F, e);
        if (N < 0) N = -N;
        out.push_back({{N, t}, e});
    }
    std::stable_sort(out.begin(), out.end(), [](auto& x, auto& y) { return x.first < y.first; });
    std::vector<FElt> r;
    for (auto& o : out) r.push_back(o.second);
    return r;
}

}  // namespace

QuatPtr make_algebra(FieldPtr F, const FElt& a, const FElt& b) {
    require(!f_is_zero(a) && !f_is_zero(b), "algebra parameters must be nonzero");
    auto [ram, inf] = ramification(*F, a, b);
    return build(F, a, b, ram, inf);
}

QuatPtr make_algebra_with_ramification(FieldPtr F, const FElt& a, const FElt& b, std::vector<Prime> ram,
                                       std::vector<int> ram_inf) {
    for (auto& P : ram)
        if (P.p != 2) require(hilbert_symbol(*F, a, b, P) == -1, "supplied ramification contradicts a Hilbert symbol");
    for (int v = 0; v < F->n; ++v) {
        bool r = std::find(ram_inf.begin(), ram_inf.end(), v) != ram_inf.end();
        require((hilbert_symbol_real(*F, a, b, v) < 0) == r, "supplied real ramification is wrong");
    }
    require((ram.size() + ram_inf.size()) % 2 == 0, "ramification set must have even cardinality");
    return build(F, a, b, ram, ram_inf);
}

QuatPtr algebra_with_ramification(FieldPtr F, const std::vector<Prime>& ram, const std::vector<int>& ram_inf) {
    const Field& K = *F;
    require((ram.size() + ram_inf.size()) % 2 == 0, "ramification set must have even cardinality");
    ZLat D = ideal_unit(K);
    for (auto& P : ram) D = ideal_mul(K, D, P.P);
    std::vector<int> sa(K.n, 1), sb(K.n, -1);
    for (int v : ram_inf) sa[v] = -1;
    if (ram.empty() && ram_inf.empty()) {
        FElt one = K.one;
        return build(F, one, one, {}, {});
    }
    Rat ND = ideal_norm(D);
    for (Rat bound = 4 * K.n; bound <= 4096 * K.n; bound *= 4) {
        auto As = small_signed_elements(K, ideal_unit(K), sa, bound);
        Rat bb = bound * Rat(std::ceil(std::pow(ND.get_d(), 2.0 / K.n)) + 1);
        auto Bs = small_signed_elements(K, D, sb, bb);
        if (As.size() > 16) As.resize(16);
        if (Bs.size() > 64) Bs.resize(64);
        for (auto& b : Bs)
            for (auto& a : As) {
                try {
                    auto [r, inf] = ramification(K, a, b);
                    if (inf == ram_inf && same_primes(r, ram)) return build(F, a, b, r, inf);
                } catch (const Error& e) {
                    if (e.kind != ErrKind::Unsupported && e.kind != ErrKind::ResourceCap) throw;
                }
            }
    }
    fail(ErrKind::ResourceCap, "no algebra with the requested ramification found");
}

QuatPtr rational_definite_algebra(long D) {
    FieldPtr Q = rational_field();
    std::vector<Prime> ram;
    for (auto& [p, e] : factor_int(Int(D), default_factor_bound())) {
        require(e == 1, "discriminant must be squarefree");
        ram.push_back(primes_above(*Q, p)[0]);
    }
    return algebra_with_ramification(Q, ram, {0});
}

}  // namespace qcs
