#include "qcs/ideal.hpp"

namespace qcs {

ZLat reduced_norm_ideal(const QuatAlgebra& A, const ZLat& I) {
    auto bs = lat_elems(I);
    std::vector<FElt> gens;
    for (size_t u = 0; u < bs.size(); ++u) {
        gens.push_back(q_nrd(A, bs[u]));
        for (size_t v = u + 1; v < bs.size(); ++v) gens.push_back(q_trd(A, q_mul(A, bs[u], q_conj(A, bs[v]))));
    }
    return ideal_from_gens(*A.F, gens);
}

RightIdeal make_right_ideal(const OrderPtr& O, const ZLat& L, bool check) {
    const QuatAlgebra& A = *O->A;
    if (check) require(right_order_lat(A, L) == O->L, "lattice does not have the declared right order");
    return {L, O, reduced_norm_ideal(A, L)};
}

RightIdeal unit_ideal(const OrderPtr& O) { return {O->L, O, ideal_unit(*O->A->F)}; }

RightIdeal principal_ideal(const OrderPtr& O, const QElt& g) {
    const QuatAlgebra& A = *O->A;
    return {lat_left_mul(A, g, O->L), O, ideal_principal(*A.F, q_nrd(A, g))};
}

ZLat ideal_product(const QuatAlgebra& A, const ZLat& I, const ZLat& J) { return lat_mul(A, I, J); }

ZLat ideal_inverse_lat(const QuatAlgebra& A, const ZLat& I) {
    return lat_ideal_mul(A, ideal_inverse(*A.F, reduced_norm_ideal(A, I)), lat_conj(A, I));
}

bool is_invertible(const QuatAlgebra& A, const ZLat& I) {
    ZLat Iinv = ideal_inverse_lat(A, I);
    return lat_mul(A, I, Iinv) == left_order_lat(A, I) && lat_mul(A, Iinv, I) == right_order_lat(A, I);
}

bool is_primitive(const RightIdeal& I) {
    const QuatAlgebra& A = *I.O->A;
    const Field& F = *A.F;
    if (!lattice_contains(I.O->L, I.L)) fail(ErrKind::Precondition, "is_primitive: ideal is not integral");
    for (auto& [P, e] : factor_ideal(F, I.nrd))
        if (lattice_contains(lat_ideal_mul(A, P.P, I.O->L), I.L)) return false;
    return true;
}

QElt local_generator(const QuatAlgebra& A, const ZLat& I, const ZLat& nrdI, const Prime& P, uint64_t seed) {
    const Field& F = *A.F;
    int target = ideal_valuation(F, P, nrdI);
    auto bs = lat_elems(I);
    for (auto& b : bs)
        if (prime_valuation(F, P, q_nrd(A, b)) == target) return b;
    Rng rng(seed);
    long p = P.p.get_si();
    std::uniform_int_distribution<long> dist(-p, p);
    for (int trial = 0; trial < 20000; ++trial) {
        QElt x = q_zero(A);
        for (auto& b : bs) x = q_add(x, q_scale(b, Rat(dist(rng))));
        if (q_is_zero(x)) continue;
        if (prime_valuation(F, P, q_nrd(A, x)) == target) return x;
    }
    fail(ErrKind::ResourceCap, "local_generator: search exhausted");
}

RightIdeal ideal_of_norm(const OrderPtr& O, const Factored& a, uint64_t seed) {
    const QuatAlgebra& A = *O->A;
    const Field& F = *A.F;
    std::optional<ZLat> L;
    Rng rng(seed);
    auto basis = lat_elems(O->L);
    for (auto& [P, e] : a) {
        if (e == 0) continue;
        for (auto& R : A.ram)
            if (R == P) fail(ErrKind::Precondition, "ideal_of_norm: norm is not coprime to the discriminant");
        long p = P.p.get_si();
        std::uniform_int_distribution<long> dist(0, p * p - 1);
        std::optional<QElt> alpha;
        // deterministic seeded search over small combinations of the order basis
        for (long trial = 0; trial < 200000 && !alpha; ++trial) {
            QElt x = q_zero(A);
            if (trial < (long)basis.size()) {
                x = basis[trial];
            } else {
                for (auto& b : basis) x = q_add(x, q_scale(b, Rat(dist(rng))));
            }
            if (!q_is_zero(x) && prime_valuation(F, P, q_nrd(A, x)) == 1) alpha = x;
        }
        if (!alpha) fail(ErrKind::ResourceCap, "ideal_of_norm: no element of uniformizing norm found");
        QElt beta = q_one(A);
        for (int i = 0; i < e; ++i) beta = q_mul(A, beta, *alpha);
        ZLat Pe = ideal_pow(F, P.P, e);
        ZLat J = lattice_sum(lat_left_mul(A, beta, O->L), lat_ideal_mul(A, Pe, O->L));
        L = L ? lattice_intersect(*L, J) : J;
    }
    if (!L) return unit_ideal(O);
    return {*L, O, ideal_from_factors(F, a)};
}

std::vector<std::array<FElt, 2>> p1_points(const Field& F, const Factored& a) {
    std::vector<Factored> parts;
    for (auto& pe : a)
        if (pe.second > 0) parts.push_back({pe});
    if (parts.empty()) return {{F.one, f_int(F, 0)}};
    if (parts.size() == 1) return p1_prime_power(F, a[0].first, a[0].second);
    ZLat M = ideal_from_factors(F, a);
    std::vector<FElt> idem;
    for (size_t i = 0; i < parts.size(); ++i) {
        Factored rest;
        for (size_t j = 0; j < parts.size(); ++j)
            if (j != i) rest.push_back(parts[j][0]);
        ZLat Q = ideal_from_factors(F, rest);
        ZLat Pe = ideal_pow(F, parts[i][0].first.P, parts[i][0].second);
        std::optional<FElt> x;
        for (auto& r : coset_reps(Q, M))
            if (ideal_contains(Pe, f_sub(r, F.one))) {
                x = r;
                break;
            }
        require(bool(x), "p1_points: CRT idempotent not found");
        idem.push_back(*x);
    }
    std::vector<std::array<FElt, 2>> out{{f_int(F, 0), f_int(F, 0)}};
    for (size_t i = 0; i < parts.size(); ++i) {
        auto local = p1_prime_power(F, parts[i][0].first, parts[i][0].second);
        std::vector<std::array<FElt, 2>> next;
        for (auto& pt : out)
            for (auto& q : local)
                next.push_back({f_add(pt[0], f_mul(F, q[0], idem[i])), f_add(pt[1], f_mul(F, q[1], idem[i]))});
        out = std::move(next);
    }
    for (auto& pt : out) {
        pt[0] = zf_reduce(M, pt[0]);
        pt[1] = zf_reduce(M, pt[1]);
    }
    return out;
}

std::vector<RightIdeal> neighbors(const RightIdeal& I, const Prime& P, const LocalSplitting& S) {
    const QuatAlgebra& A = *I.O->A;
    const Field& F = *A.F;
    QElt g = local_generator(A, I.L, I.nrd, P);
    ZLat PI = lat_ideal_mul(A, P.P, I.L);
    ZLat nrdJ = ideal_mul(F, I.nrd, P.P);
    std::vector<RightIdeal> out;
    for (auto& v : p1_prime_power(F, P, 1)) {
        QElt xi = split_column_element(A, S, v[0], v[1]);
        out.push_back({lattice_sum(lat_left_mul(A, q_mul(A, g, xi), I.O->L), PI), I.O, nrdJ});
    }
    return out;
}

std::vector<RightIdeal> neighbors(const RightIdeal& I, const Prime& P) {
    for (auto& [Q, v] : I.O->disc_fac)
        if (Q == P) fail(ErrKind::Precondition, "neighbors: prime divides the discriminant of the order");
    return neighbors(I, P, local_splitting(*I.O, P, 1));
}

}  // namespace qcs
