#include "qcs/order.hpp"

#include <algorithm>

namespace qcs {

ZLat lat_span(const QuatAlgebra& A, const std::vector<QElt>& gens) { return lattice_from_rows(gens, A.dim()); }

ZLat lat_zf_span(const QuatAlgebra& A, const std::vector<QElt>& gens) {
    const Field& F = *A.F;
    std::vector<QElt> rows;
    for (auto& g : gens)
        for (int i = 0; i < F.n; ++i) {
            FElt w(F.n, Rat(0));
            w[i] = 1;
            rows.push_back(q_fmul(A, w, g));
        }
    return lat_span(A, rows);
}

std::vector<QElt> lat_elems(const ZLat& L) {
    std::vector<QElt> out;
    for (int i = 0; i < L.dim(); ++i) out.push_back(L.basis(i));
    return out;
}

ZLat lat_mul(const QuatAlgebra& A, const ZLat& X, const ZLat& Y) {
    auto xs = lat_elems(X), ys = lat_elems(Y);
    std::vector<QElt> rows;
    rows.reserve(xs.size() * ys.size());
    for (auto& x : xs)
        for (auto& y : ys) rows.push_back(q_mul(A, x, y));
    return lat_span(A, rows);
}

ZLat lat_ideal_mul(const QuatAlgebra& A, const ZLat& a, const ZLat& X) {
    auto xs = lat_elems(X);
    std::vector<QElt> rows;
    for (int i = 0; i < a.dim(); ++i) {
        FElt c = a.basis(i);
        for (auto& x : xs) rows.push_back(q_fmul(A, c, x));
    }
    return lat_span(A, rows);
}

ZLat lat_left_mul(const QuatAlgebra& A, const QElt& g, const ZLat& X) {
    std::vector<QElt> rows;
    for (auto& x : lat_elems(X)) rows.push_back(q_mul(A, g, x));
    return lat_span(A, rows);
}

ZLat lat_right_mul(const QuatAlgebra& A, const ZLat& X, const QElt& g) {
    std::vector<QElt> rows;
    for (auto& x : lat_elems(X)) rows.push_back(q_mul(A, x, g));
    return lat_span(A, rows);
}

ZLat lat_conj(const QuatAlgebra& A, const ZLat& X) {
    std::vector<QElt> rows;
    for (auto& x : lat_elems(X)) rows.push_back(q_conj(A, x));
    return lat_span(A, rows);
}

static ZLat colon(const QuatAlgebra& A, const ZLat& I, const ZLat& J, bool left) {
    QMat BI = I.basis_matrix();
    std::optional<ZLat> out;
    for (auto& b : lat_elems(J)) {
        QMat R = left ? q_right_mat(A, b) : q_left_mat(A, b);
        QMat M = BI * inverse(R);
        std::vector<QVec> rows;
        for (int i = 0; i < M.r; ++i) rows.push_back(M.row(i));
        ZLat Lb = lattice_from_rows(rows, A.dim());
        out = out ? lattice_intersect(*out, Lb) : Lb;
    }
    return *out;
}

ZLat colon_left(const QuatAlgebra& A, const ZLat& I, const ZLat& J) { return colon(A, I, J, true); }
ZLat colon_right(const QuatAlgebra& A, const ZLat& I, const ZLat& J) { return colon(A, I, J, false); }
ZLat left_order_lat(const QuatAlgebra& A, const ZLat& I) { return colon_left(A, I, I); }
ZLat right_order_lat(const QuatAlgebra& A, const ZLat& I) { return colon_right(A, I, I); }

std::vector<QElt> coset_reps(const ZLat& W, const ZLat& L) {
    int k = W.dim();
    QMat BW = W.basis_matrix();
    QMat C = L.basis_matrix() * inverse(BW);
    std::vector<IVec> rows;
    for (int i = 0; i < k; ++i) {
        QVec r = C.row(i);
        require(is_integral(r), "coset_reps: L is not contained in W");
        rows.push_back(scale_to_int(r, 1));
    }
    IMat H = hnf_rows(rows, k);
    std::vector<QElt> out;
    IVec c(k, Int(0));
    while (true) {
        out.push_back(vec_mul(to_q(c), BW));
        int i = k - 1;
        while (i >= 0) {
            if (++c[i] < H(i, i)) break;
            c[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return out;
}

ZLat trd_preimage(const QuatAlgebra& A, const ZLat& L, const QElt& g, const ZLat& S) {
    const int n = A.n, m = A.dim();
    auto bs = lat_elems(L);
    std::vector<FElt> ys;
    Int D = S.den;
    for (auto& b : bs) {
        ys.push_back(q_trd(A, q_mul(A, b, g)));
        Int c = common_den(ys.back());
        mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), c.get_mpz_t());
    }
    std::vector<IVec> rows;
    for (int u = 0; u < m; ++u) {
        IVec r(n + m, Int(0));
        IVec y = scale_to_int(ys[u], D);
        for (int i = 0; i < n; ++i) r[i] = y[i];
        r[n + u] = 1;
        rows.push_back(r);
    }
    for (int i = 0; i < n; ++i) {
        IVec r(n + m, Int(0));
        for (int j = 0; j < n; ++j) r[j] = S.H(i, j) * (D / S.den);
        rows.push_back(r);
    }
    IMat H = hnf_rows(rows, n + m);
    QMat BL = L.basis_matrix();
    std::vector<QVec> out;
    for (int i = n; i < n + m; ++i) {
        QVec c(m);
        for (int u = 0; u < m; ++u) c[u] = H(i, n + u);
        out.push_back(vec_mul(c, BL));
    }
    return lat_span(A, out);
}

ZLat field_different(const Field& F) {
    std::vector<QVec> rows;
    for (int i = 0; i < F.n; ++i) {
        QVec r(F.n);
        FElt wi(F.n, Rat(0));
        wi[i] = 1;
        for (int j = 0; j < F.n; ++j) {
            FElt wj(F.n, Rat(0));
            wj[j] = 1;
            r[j] = f_trace(F, f_mul(F, wi, wj));
        }
        rows.push_back(r);
    }
    return ideal_inverse(F, lattice_dual(lattice_from_rows(rows, F.n)));
}

static bool in_ram(const QuatAlgebra& A, const Prime& P) {
    return std::find(A.ram.begin(), A.ram.end(), P) != A.ram.end();
}

bool Order::is_maximal() const { return disc == A->disc; }

bool is_order(const QuatAlgebra& A, const ZLat& L) {
    if (!lattice_contains(L, q_one(A))) return false;
    auto bs = lat_elems(L);
    for (auto& x : bs)
        for (auto& y : bs)
            if (!lattice_contains(L, q_mul(A, x, y))) return false;
    return true;
}

static ZLat trd_dual(const QuatAlgebra& A, const ZLat& L) {
    QMat M = L.basis_matrix() * A.T;
    std::vector<QVec> rows;
    for (int i = 0; i < M.r; ++i) {
        QVec r = M.row(i);
        for (auto& x : r) x *= 2;
        rows.push_back(r);
    }
    return lattice_dual(lattice_from_rows(rows, A.dim()));
}

ZLat order_discriminant(const QuatAlgebra& A, const ZLat& L, Factored* fac) {
    const Field& F = *A.F;
    QMat M = L.basis_matrix();
    QMat T2 = A.T;
    for (auto& x : T2.a) x *= 2;
    Rat d = abs(det(M * T2 * transpose(M)));
    Rat dF4 = Rat(F.disc * F.disc * F.disc * F.disc);
    Rat q = d / dF4;
    require(q.get_den() == 1 && is_square(q.get_num()), "order_discriminant: lattice is not an order");
    Int N = isqrt(q.get_num());
    Factored out;
    std::optional<ZLat> Ostar, diff;
    for (auto& [p, k] : factor_int(N, default_factor_bound())) {
        auto Ps = primes_above(F, p);
        if (Ps.size() == 1) {
            require(k % Ps[0].f == 0, "order_discriminant: inconsistent norm");
            out.push_back({Ps[0], k / Ps[0].f});
            continue;
        }
        if (!Ostar) {
            Ostar = trd_dual(A, L);
            diff = field_different(F);
        }
        int vd = valuation(ideal_norm(*diff).get_num(), p);
        int m = 2 * k + 4 * vd + 1;
        for (auto& P : Ps) {
            ZLat Pm = ideal_pow(F, ideal_inverse(F, P.P), m);
            ZLat X = lattice_intersect(*Ostar, lat_ideal_mul(A, Pm, L));
            Rat idx = lattice_index(X, L);
            int t = valuation(idx.get_num(), p);
            require(t % P.f == 0, "order_discriminant: inconsistent local index");
            t = t / P.f - 4 * ideal_valuation(F, P, *diff);
            require(t >= 0 && t % 2 == 0, "order_discriminant: inconsistent local index");
            if (t > 0) out.push_back({P, t / 2});
        }
    }
    std::sort(out.begin(), out.end(), [](auto& x, auto& y) { return prime_less(x.first, y.first); });
    if (fac) *fac = out;
    return ideal_from_factors(F, out);
}

OrderPtr make_order(QuatPtr A, const ZLat& L) {
    require(is_order(*A, L), "lattice is not an order");
    auto O = std::make_shared<Order>();
    O->A = A;
    O->L = L;
    O->disc = order_discriminant(*A, L, &O->disc_fac);
    for (auto& [P, v] : O->disc_fac) {
        int w = v - (in_ram(*A, P) ? 1 : 0);
        if (w > 0) O->level.push_back({P, w});
    }
    O->level_ideal = ideal_from_factors(*A->F, O->level);
    return O;
}

OrderPtr standard_order(QuatPtr A) {
    const Field& F = *A->F;
    require(is_integral(A->a) && is_integral(A->b), "standard order needs integral a, b");
    (void)F;
    IMat I = IMat::identity(A->dim());
    return make_order(A, ZLat{1, I});
}

static std::optional<ZLat> ring_closure(const QuatAlgebra& A, ZLat L, const ZLat& bound) {
    for (int it = 0; it < 64; ++it) {
        ZLat L2 = lattice_sum(L, lat_mul(A, L, L));
        if (!lattice_contains(bound, L2)) return std::nullopt;
        if (L2 == L) return L;
        L = L2;
    }
    fail(ErrKind::Internal, "ring closure did not stabilise");
}

static std::optional<ZLat> enlarge_at(const QuatAlgebra& A, const ZLat& L, const Prime& P, const ZLat& diff) {
    const Field& F = *A.F;
    ZLat Osharp = lat_ideal_mul(A, diff, trd_dual(A, L));
    ZLat W = lattice_intersect(Osharp, lat_ideal_mul(A, ideal_inverse(F, P.P), L));
    for (auto& x : coset_reps(W, L)) {
        if (lattice_contains(L, x)) continue;
        if (!is_integral(q_trd(A, x)) || !is_integral(q_nrd(A, x))) continue;
        std::vector<QElt> rows = lat_elems(L);
        for (int i = 0; i < F.n; ++i) {
            FElt w(F.n, Rat(0));
            w[i] = 1;
            rows.push_back(q_fmul(A, w, x));
        }
        auto C = ring_closure(A, lat_span(A, rows), Osharp);
        if (C) return C;
    }
    return std::nullopt;
}

OrderPtr maximal_order(QuatPtr A, const OrderPtr& seed) {
    const Field& F = *A->F;
    ZLat L = seed->L;
    ZLat diff = field_different(F);
    while (true) {
        Factored fac;
        order_discriminant(*A, L, &fac);
        bool changed = false;
        for (auto& [P, v] : fac) {
            if (v <= (in_ram(*A, P) ? 1 : 0)) continue;
            auto ext = enlarge_at(*A, L, P, diff);
            if (!ext) fail(ErrKind::Internal, "maximal_order: no enlargement at a non-maximal prime");
            L = *ext;
            changed = true;
            break;
        }
        if (!changed) break;
    }
    return make_order(A, L);
}

OrderPtr maximal_order(QuatPtr A) { return maximal_order(A, standard_order(A)); }

FElt zf_reduce(const ZLat& M, const FElt& x) {
    require(is_integral(x), "zf_reduce: non-integral element");
    return to_q(lattice_reduce(M, scale_to_int(x, 1)));
}

namespace {

struct ModReducer {
    const QuatAlgebra& A;
    const ZLat& L;
    QMat BM;
    Int m;
    QElt operator()(const QElt& y) const {
        QVec c = lattice_coords(L, y);
        for (auto& x : c) {
            require(x.get_den() == 1, "element is not in the order");
            Int r;
            mpz_fdiv_r(r.get_mpz_t(), x.get_num_mpz_t(), m.get_mpz_t());
            x = r;
        }
        return vec_mul(c, BM);
    }
};

}  // namespace

LocalSplitting local_splitting(const Order& O, const Prime& P, int e, uint64_t seed) {
    const QuatAlgebra& A = *O.A;
    const Field& F = *A.F;
    if (in_ram(A, P)) fail(ErrKind::Precondition, "local_splitting: prime is ramified in the algebra");
    for (auto& [Q, v] : O.disc_fac)
        if (Q == P) fail(ErrKind::Precondition, "local_splitting: order is not maximal at the prime");
    require(e >= 1, "local_splitting: exponent must be positive");
    LocalSplitting S;
    S.P = P;
    S.e = e;
    S.Pe = ideal_pow(F, P.P, e);
    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), P.p.get_mpz_t(), (unsigned long)e);
    auto basis = lat_elems(O.L);
    ModReducer red{A, O.L, O.L.basis_matrix(), pe};
    ResidueField RF = residue_field(F, P);
    Rng rng(seed * 7919 + (uint64_t)P.norm.get_ui() * 31 + (uint64_t)e);
    std::uniform_int_distribution<long> dist(0, P.p.get_si() - 1);

    QElt x;
    FElt t;
    long cap = 400 * (long)std::min<Int>(P.norm, Int(100000)).get_si() + 1000;
    bool found = false;
    for (long trial = 0; trial < cap && !found; ++trial) {
        x = q_zero(A);
        for (auto& b : basis) x = q_add(x, q_scale(b, Rat(dist(rng))));
        t = q_trd(A, x);
        found = ideal_contains(P.P, q_nrd(A, x)) && !ideal_contains(P.P, t);
    }
    if (!found) fail(ErrKind::ResourceCap, "local_splitting: no zero divisor found");
    QElt eps = red(q_fmul(A, RF.lift(RF.inv(RF.reduce(t))), x));
    ZLat PeO = lat_ideal_mul(A, S.Pe, O.L);
    for (int it = 0;; ++it) {
        QElt e2 = q_mul(A, eps, eps);
        if (lattice_contains(PeO, q_sub(e2, eps))) break;
        require(it < 64, "local_splitting: idempotent lift did not converge");
        QElt e3 = q_mul(A, e2, eps);
        eps = red(q_sub(q_scale(e2, 3), q_scale(e3, 2)));
    }
    QElt one = q_one(A), f = q_sub(one, eps);
    ZLat PO = lat_ideal_mul(A, P.P, O.L);
    auto pick = [&](const QElt& l, const QElt& r) {
        for (long trial = 0; trial < 1000; ++trial) {
            QElt z;
            if (trial < (long)basis.size()) {
                z = basis[trial];
            } else {
                z = q_zero(A);
                for (auto& b : basis) z = q_add(z, q_scale(b, Rat(dist(rng))));
            }
            QElt y = q_mul(A, q_mul(A, l, z), r);
            if (!lattice_contains(PO, y)) return red(y);
        }
        fail(ErrKind::Internal, "local_splitting: no off-diagonal unit found");
    };
    QElt e12 = pick(eps, f);
    QElt e21p = pick(f, eps);
    FElt c = q_trd(A, q_mul(A, e12, e21p));
    FElt r = RF.lift(RF.inv(RF.reduce(c)));
    FElt two = f_int(F, 2);
    for (int it = 0;; ++it) {
        if (ideal_contains(S.Pe, f_sub(f_mul(F, c, r), F.one))) break;
        require(it < 64, "local_splitting: inverse lift did not converge");
        r = zf_reduce(S.Pe, f_mul(F, r, f_sub(two, f_mul(F, c, r))));
    }
    S.e11 = eps;
    S.e22 = red(f);
    S.e12 = e12;
    S.e21 = red(q_fmul(A, r, e21p));
    return S;
}

std::array<FElt, 4> split_image(const QuatAlgebra& A, const LocalSplitting& S, const QElt& x) {
    auto tr = [&](const QElt& E) { return zf_reduce(S.Pe, q_trd(A, q_mul(A, x, E))); };
    return {tr(S.e11), tr(S.e21), tr(S.e12), tr(S.e22)};
}

QElt split_column_element(const QuatAlgebra& A, const LocalSplitting& S, const FElt& x, const FElt& y) {
    return q_add(q_fmul(A, x, S.e11), q_fmul(A, y, S.e21));
}

OrderPtr eichler_order(const OrderPtr& Omax, const Factored& N) {
    const QuatAlgebra& A = *Omax->A;
    require(Omax->is_maximal(), "eichler_order: order is not maximal");
    ZLat L = Omax->L;
    for (auto& [P, e] : N) {
        if (in_ram(A, P)) fail(ErrKind::Precondition, "eichler_order: level is not coprime to the discriminant");
        if (e == 0) continue;
        LocalSplitting S = local_splitting(*Omax, P, e);
        L = trd_preimage(A, L, S.e12, S.Pe);
    }
    return make_order(Omax->A, L);
}

std::vector<FElt> residues(const Field& F, const ZLat& M) {
    require(M.den == 1, "residues: ideal must be integral");
    int n = F.n;
    std::vector<FElt> out;
    IVec c(n, Int(0));
    while (true) {
        out.push_back(to_q(c));
        int i = n - 1;
        while (i >= 0) {
            if (++c[i] < M.H(i, i)) break;
            c[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return out;
}

std::vector<std::array<FElt, 2>> p1_prime_power(const Field& F, const Prime& P, int e) {
    ZLat Pe = ideal_pow(F, P.P, e);
    auto res = residues(F, Pe);
    std::vector<std::array<FElt, 2>> out;
    for (auto& y : res) out.push_back({F.one, y});
    for (auto& x : res)
        if (ideal_contains(P.P, x)) out.push_back({x, F.one});
    return out;
}

static bool common_eigenvector(const Field& F, const std::vector<std::array<FElt, 4>>& imgs, const ZLat& Pe,
                               const std::array<FElt, 2>& v) {
    for (auto& g : imgs) {
        FElt a = f_add(f_mul(F, g[0], v[0]), f_mul(F, g[1], v[1]));
        FElt b = f_add(f_mul(F, g[2], v[0]), f_mul(F, g[3], v[1]));
        if (!ideal_contains(Pe, f_sub(f_mul(F, a, v[1]), f_mul(F, b, v[0])))) return false;
    }
    return true;
}

std::optional<EichlerCert> is_eichler(const OrderPtr& O) {
    const QuatAlgebra& A = *O->A;
    const Field& F = *A.F;
    for (auto& [P, v] : O->disc_fac)
        if (in_ram(A, P) && v != 1) return std::nullopt;
    EichlerCert cert;
    cert.omax = maximal_order(O->A, O);
    auto basis = lat_elems(O->L);
    for (auto& [P, e] : O->level) {
        OrderPtr cur = cert.omax;
        std::optional<ZLat> prev;
        bool ok = false;
        for (int step = 0; step <= e && !ok; ++step) {
            LocalSplitting S = local_splitting(*cur, P, e);
            std::vector<std::array<FElt, 4>> imgs;
            for (auto& b : basis) imgs.push_back(split_image(A, S, b));
            for (auto& v : p1_prime_power(F, P, e))
                if (common_eigenvector(F, imgs, S.Pe, v)) {
                    cert.local.push_back({P, e, cur, S, v});
                    ok = true;
                    break;
                }
            if (ok) break;
            LocalSplitting S1 = e == 1 ? S : local_splitting(*cur, P, 1);
            ZLat PL = lat_ideal_mul(A, P.P, cur->L);
            std::optional<ZLat> next;
            for (auto& v : p1_prime_power(F, P, 1)) {
                QElt xi = split_column_element(A, S1, v[0], v[1]);
                ZLat J = lattice_sum(lat_left_mul(A, xi, cur->L), PL);
                if (!lattice_contains(J, lat_mul(A, O->L, J))) continue;
                ZLat Ln = left_order_lat(A, J);
                if (prev && Ln == *prev) continue;
                next = Ln;
                break;
            }
            if (!next) return std::nullopt;
            prev = cur->L;
            cur = make_order(O->A, *next);
        }
        if (!ok) return std::nullopt;
    }
    return cert;
}

ZLat commutator_ideal(const Order& O, const Prime& P, int e) {
    const QuatAlgebra& A = *O.A;
    auto bs = lat_elems(O.L);
    std::vector<QElt> rows = lat_elems(lat_ideal_mul(A, ideal_pow(*A.F, P.P, e), O.L));
    for (size_t u = 0; u < bs.size(); ++u)
        for (size_t v = u + 1; v < bs.size(); ++v)
            rows.push_back(q_sub(q_mul(A, bs[u], bs[v]), q_mul(A, bs[v], bs[u])));
    ZLat L0 = lat_span(A, rows);
    return lat_mul(A, lat_mul(A, O.L, L0), O.L);
}

std::vector<ZLat> twosided_generators(const Order& O) {
    const QuatAlgebra& A = *O.A;
    std::vector<ZLat> out;
    for (size_t i = 1; i < A.F->cl.reps.size(); ++i) out.push_back(lat_ideal_mul(A, A.F->cl.reps[i], O.L));
    for (auto& [P, e] : O.disc_fac) out.push_back(commutator_ideal(O, P, e));
    return out;
}

ZLat connecting_ideal(const OrderPtr& O, const OrderPtr& Op, long max_candidates) {
    const QuatAlgebra& A = *O->A;
    const Field& F = *A.F;
    if (!(O->disc == Op->disc)) fail(ErrKind::Precondition, "connecting_ideal: levels differ");
    if (O->L == Op->L) return O->L;
    ZLat OpO = lat_mul(A, Op->L, O->L);
    QMat BM = Op->L.basis_matrix();
    QMat G = A.definite ? gram_trnrd(A, BM) : gram_absolute(A, BM);
    long tried = 0;
    Rat lo = -1;
    for (Rat bound = 4 * F.n; tried < max_candidates; bound *= 2) {
        auto vs = short_vectors(G, bound);
        for (auto& [val, c] : vs) {
            if (val <= lo) continue;
            if (++tried > max_candidates) break;
            QElt mu = vec_mul(to_q(c), BM);
            FElt nm = q_nrd(A, mu);
            if (f_is_zero(nm)) continue;
            Factored nf;
            for (auto& [P, e] : O->level) {
                int v = prime_valuation(F, P, nm);
                if (v > 0) nf.push_back({P, v});
            }
            ZLat J = lattice_sum(lat_left_mul(A, mu, O->L), lat_ideal_mul(A, ideal_from_factors(F, nf), OpO));
            if (right_order_lat(A, J) == O->L && left_order_lat(A, J) == Op->L) return J;
        }
        lo = bound;
    }
    fail(ErrKind::ResourceCap, "connecting_ideal: candidate cap reached");
}

static QuatPtr hamilton() {
    static QuatPtr A = [] {
        FieldPtr Q = rational_field();
        return make_algebra(Q, f_int(*Q, -1), f_int(*Q, -1));
    }();
    return A;
}

OrderPtr lipschitz_order() { return standard_order(hamilton()); }

OrderPtr hurwitz_order() {
    QuatPtr A = hamilton();
    QElt h = q_make(*A, f_int(*A->F, 1), f_int(*A->F, 1), f_int(*A->F, 1), f_int(*A->F, 1));
    h = q_scale(h, frac(1, 2));
    std::vector<QElt> g{q_one(*A), q_make(*A, f_int(*A->F, 0), f_int(*A->F, 1), f_int(*A->F, 0), f_int(*A->F, 0)),
                        q_make(*A, f_int(*A->F, 0), f_int(*A->F, 0), f_int(*A->F, 1), f_int(*A->F, 0)), h};
    return make_order(A, lat_span(*A, g));
}

}  // namespace qcs
