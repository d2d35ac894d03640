#pragma once

#include "qcs/io.hpp"
#include "qcs/tables.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace props {

using namespace qcs;

struct Tally {
    long cases = 0, failures = 0;
    std::string first;
    void check(bool ok, const std::string& what) {
        ++cases;
        if (!ok && failures++ == 0) first = what;
    }
    bool ok() const { return cases > 0 && failures == 0; }
};

inline Rng rng_for(uint64_t seed) { return Rng(seed); }

inline Rat small_rat(Rng& rng) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
    return frac(Int(num(rng)), Int(den(rng)));
}

inline QElt random_elt(const QuatAlgebra& A, Rng& rng) {
    QElt x(A.dim());
    for (auto& c : x) c = small_rat(rng);
    return x;
}

// Algebras used by the property suites: Hamilton quaternions, ramified at 11 over Q, and definite over Q(sqrt 5).
inline std::vector<QuatPtr> sample_algebras(const FieldPtr& F5) {
    return {hurwitz_order()->A, rational_definite_algebra(11), algebra_with_ramification(F5, {}, {0, 1})};
}

inline Tally nrd_multiplicativity(long cases, uint64_t seed, const FieldPtr& F5) {
    Tally t;
    auto algs = sample_algebras(F5);
    Rng rng = rng_for(seed);
    for (long k = 0; k < cases; ++k) {
        const QuatAlgebra& A = *algs[k % algs.size()];
        const Field& F = *A.F;
        QElt x = random_elt(A, rng), y = random_elt(A, rng);
        FElt lhs = q_nrd(A, q_mul(A, x, y)), rhs = f_mul(F, q_nrd(A, x), q_nrd(A, y));
        QElt xc = q_mul(A, x, q_conj(A, x));
        t.check(lhs == rhs && xc == q_from_field(A, q_nrd(A, x)), "nrd(xy) != nrd(x)nrd(y) in case " + std::to_string(k));
    }
    return t;
}

// Row-style HNF: upper triangular, positive pivots, entries above a pivot reduced modulo it.
inline bool is_hnf(const IMat& H) {
    for (int i = 0; i < H.r; ++i) {
        if (H(i, i) <= 0) return false;
        for (int j = 0; j < i; ++j)
            if (H(i, j) != 0) return false;
        for (int k = 0; k < i; ++k)
            if (H(k, i) < 0 || H(k, i) >= H(i, i)) return false;
    }
    return true;
}

inline Tally hnf_canonicity(long cases, uint64_t seed) {
    Tally t;
    Rng rng = rng_for(seed);
    std::uniform_int_distribution<int> dim_d(1, 6), ent(-20, 20);
    for (long k = 0; k < cases; ++k) {
        int n = dim_d(rng);
        std::vector<IVec> rows;
        IMat H;
        for (;;) {
            rows.assign(n + 2, IVec(n));
            for (auto& r : rows)
                for (auto& x : r) x = ent(rng);
            try {
                H = hnf_rows(rows, n);
                break;
            } catch (const Error&) {
            }
        }
        // same lattice through random unimodular row operations and a shuffle
        std::vector<IVec> mixed = rows;
        std::uniform_int_distribution<size_t> pick(0, mixed.size() - 1);
        for (int s = 0; s < 20; ++s) {
            size_t a = pick(rng), b = pick(rng);
            if (a == b) continue;
            Int c = ent(rng);
            for (int j = 0; j < n; ++j) mixed[a][j] += c * mixed[b][j];
            if (s % 3 == 0) std::swap(mixed[a], mixed[b]);
            if (s % 5 == 0)
                for (auto& x : mixed[b]) x = -x;
        }
        IMat H2 = hnf_rows(mixed, n);
        // covolume = gcd of the maximal minors of the generators, and every generator lies in the lattice
        Int g = 0;
        int m = (int)rows.size();
        for (int mask = 0; mask < (1 << m); ++mask) {
            if (__builtin_popcount(mask) != n) continue;
            IMat M(n, n);
            int r = 0;
            for (int i = 0; i < m; ++i)
                if (mask >> i & 1) M.set_row(r++, rows[i]);
            Int d = det(M);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
        }
        Int d = 1;
        for (int i = 0; i < n; ++i) d *= H(i, i);
        bool same_covolume = d == g;
        for (auto& r : rows) same_covolume &= lattice_contains(ZLat{1, H}, to_q(r));
        t.check(is_hnf(H) && H == H2 && same_covolume, "HNF differs under unimodular change in case " + std::to_string(k));
    }
    return t;
}

inline QMat random_gram(Rng& rng, int n) {
    std::uniform_int_distribution<int> ent(-3, 3);
    for (;;) {
        IMat B(n, n);
        for (auto& x : B.a) x = ent(rng);
        if (det(B) == 0) continue;
        return to_q(B * transpose(B));
    }
}

// Every nonzero x in the box |x_i| <= sqrt(bound * (G^-1)_ii), which contains the ellipsoid.
inline std::set<IVec> box_oracle(const QMat& G, const Rat& bound) {
    int n = G.r;
    QMat Gi = inverse(G);
    std::vector<long> r(n);
    for (int i = 0; i < n; ++i) r[i] = isqrt(floor_q(bound * Gi(i, i))).get_si();
    std::set<IVec> out;
    IVec x(n);
    std::vector<long> c(n);
    for (int i = 0; i < n; ++i) c[i] = -r[i];
    for (;;) {
        bool nz = false;
        for (int i = 0; i < n; ++i) {
            x[i] = c[i];
            nz |= c[i] != 0;
        }
        if (nz && quad_value(G, x) <= bound) out.insert(x);
        int i = 0;
        while (i < n && c[i] == r[i]) c[i] = -r[i], ++i;
        if (i == n) break;
        ++c[i];
    }
    return out;
}

inline Tally short_vectors_vs_box(long lattices, uint64_t seed) {
    Tally t;
    Rng rng = rng_for(seed);
    std::uniform_int_distribution<int> dim_d(1, 4), bnd(1, 40);
    for (long k = 0; k < lattices; ++k) {
        QMat G = random_gram(rng, dim_d(rng));
        Rat bound(bnd(rng));
        std::set<IVec> fp, sv;
        for (auto& [v, x] : fincke_pohst(G, bound)) fp.insert(x);
        bool values_ok = true;
        for (auto& [v, x] : short_vectors(G, bound)) {
            sv.insert(x);
            values_ok &= v == quad_value(G, x);
        }
        auto box = box_oracle(G, bound);
        t.check(fp == box && sv == box && values_ok, "enumeration differs from the box oracle on lattice " + std::to_string(k));
    }
    return t;
}

struct TestOrder {
    std::string name;
    OrderPtr O;
};

inline std::vector<TestOrder> round_trip_orders(const FieldPtr& F5) {
    auto Q = rational_field();
    std::vector<Prime> D2{primes_above(*Q, Int(2))[0]};
    Factored N3{{primes_above(*Q, Int(3))[0], 1}};
    return {{"Hurwitz", hurwitz_order()},
            {"level 3 over Q", definite_eichler_order(Q, {{D2[0], 1}}, N3)},
            {"maximal over Q(sqrt 5)", definite_eichler_order(F5, {}, {})}};
}

// Seeded gamma in O with 0 < N(nrd gamma) <= 10^4; is_principal on gamma O must return xi with xi^-1 gamma in O*.
inline Tally principal_round_trip(const OrderPtr& O, long cases, uint64_t seed) {
    Tally t;
    const QuatAlgebra& A = *O->A;
    const Field& F = *A.F;
    QMat G = gram_trnrd(A, O->L.basis_matrix());
    QMat B = O->L.basis_matrix();
    Rng rng = rng_for(seed);
    auto vs = short_vectors(G, Rat(F.n == 1 ? 40 : 12));
    std::uniform_int_distribution<size_t> pick(0, vs.size() - 1);
    long k = 0;
    while (k < cases) {
        QElt g = vec_mul(to_q(vs[pick(rng)].second), B);
        if (pick(rng) % 2) g = q_mul(A, g, vec_mul(to_q(vs[pick(rng)].second), B));
        Rat nn = f_norm(F, q_nrd(A, g));
        if (nn == 0 || abs(nn) > 10000) continue;
        ++k;
        RightIdeal I = principal_ideal(O, g);
        auto xi = is_principal(I);
        bool ok = false;
        if (xi) {
            QElt u = q_mul(A, q_inv(A, *xi), g);
            ok = lattice_contains(O->L, u) && lattice_contains(O->L, q_inv(A, u)) && f_is_unit(F, q_nrd(A, u));
        }
        t.check(ok, "no generator recovered in case " + std::to_string(k));
    }
    return t;
}

// [O : I] = N(nrd I)^2 for integral invertible right ideals: principal, neighbours, ideals of given norm.
inline Tally index_identity(const OrderPtr& O, long cases, uint64_t seed) {
    Tally t;
    const QuatAlgebra& A = *O->A;
    const Field& F = *A.F;
    QMat G = gram_trnrd(A, O->L.basis_matrix());
    QMat B = O->L.basis_matrix();
    Rng rng = rng_for(seed);
    auto vs = short_vectors(G, Rat(F.n == 1 ? 30 : 10));
    std::uniform_int_distribution<size_t> pick(0, vs.size() - 1);
    auto ps = primes_up_to_norm(F, 30);
    std::vector<Prime> good;
    for (auto& P : ps)
        if (!ideal_divides(P.P, O->disc)) good.push_back(P);
    std::uniform_int_distribution<size_t> pp(0, good.size() - 1);
    auto check = [&](const RightIdeal& I, const std::string& kind) {
        bool ok = is_invertible(A, I.L) && lattice_index(O->L, I.L) == ideal_norm(I.nrd) * ideal_norm(I.nrd);
        t.check(ok, "index identity fails for a " + kind + " ideal");
    };
    for (long k = 0; k < cases; ++k) {
        switch (k % 3) {
            case 0: {
                QElt g = vec_mul(to_q(vs[pick(rng)].second), B);
                check(principal_ideal(O, g), "principal");
                break;
            }
            case 1: {
                auto nb = neighbors(unit_ideal(O), good[pp(rng)]);
                std::uniform_int_distribution<size_t> w(0, nb.size() - 1);
                check(nb[w(rng)], "neighbour");
                break;
            }
            default: {
                Factored a{{good[pp(rng)], 1}, {good[pp(rng)], 1}};
                if (a[0].first == a[1].first) a = {{a[0].first, 2}};
                check(ideal_of_norm(O, a, seed + k), "given-norm");
            }
        }
    }
    return t;
}

// (J^2 = nrd(J) O) for every two-sided generator J of O.
inline Tally twosided_squares(const Order& O, Tally t = {}) {
    const QuatAlgebra& A = *O.A;
    for (auto& J : twosided_generators(O)) {
        ZLat n = reduced_norm_ideal(A, J);
        t.check(ideal_product(A, J, J) == lat_ideal_mul(A, n, O.L), "two-sided generator square differs from its norm times O");
    }
    return t;
}

// Real quadratic zeta_F(-1) by Siegel's formula: (1/60) sum_{b^2 < D, b = D mod 2} sigma_1((D - b^2)/4).
inline Rat siegel_zeta(long D) {
    auto sigma1 = [](long m) {
        long s = 0;
        for (long d = 1; d <= m; ++d)
            if (m % d == 0) s += d;
        return s;
    };
    long s = 0;
    for (long b = -(long)std::sqrt((double)D) - 1; b <= (long)std::sqrt((double)D) + 1; ++b)
        if (b * b < D && (D - b * b) % 4 == 0) s += sigma1((D - b * b) / 4);
    return frac(Int(s), Int(60));
}

// Golden table rows (n, d_F, D, N) for one class number.
struct GoldenRow {
    long n, dF, D, N, h;
    bool operator<(const GoldenRow& o) const { return std::tie(n, dF, D, N, h) < std::tie(o.n, o.dF, o.D, o.N, o.h); }
    bool operator==(const GoldenRow& o) const { return !(*this < o) && !(o < *this); }
};

inline std::set<GoldenRow> read_golden(const std::string& path, long h) {
    std::ifstream in(path);
    if (!in) fail(ErrKind::FixtureMissing, "golden file not found: " + path);
    std::set<GoldenRow> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'n') continue;
        std::stringstream ss(line);
        std::string c;
        std::vector<long> v;
        while (std::getline(ss, c, ',')) v.push_back(std::stol(c));
        out.insert({v[0], v[1], v[2], v[3], v.size() > 4 ? v[4] : h});
    }
    return out;
}

inline std::set<GoldenRow> row_set(const std::vector<TableRow>& rows, long dF, long h) {
    std::set<GoldenRow> out;
    for (auto& r : rows)
        if (r.dF == dF && r.h == h) out.insert({r.n, r.dF.get_si(), r.D.get_si(), r.N.get_si(), r.h});
    return out;
}

inline std::set<GoldenRow> restrict(const std::set<GoldenRow>& s, long dF, long h) {
    std::set<GoldenRow> out;
    for (auto& r : s)
        if (r.dF == dF && r.h == h) out.insert(r);
    return out;
}

inline std::string describe(const std::set<GoldenRow>& s) {
    std::string out;
    for (auto& r : s) out += (out.empty() ? "" : " ") + std::to_string(r.D) + "/" + std::to_string(r.N);
    return out.empty() ? "-" : out;
}

}  // namespace props
