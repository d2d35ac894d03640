#include "qcs/classset.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

namespace qcs {

namespace {

QElt lat_element(const QMat& B, const IVec& x) { return vec_mul(to_q(x), B); }

std::vector<int> all_places(const Field& F) {
    std::vector<int> v(F.n);
    for (int i = 0; i < F.n; ++i) v[i] = i;
    return v;
}

// Positive generator of a (possibly fractional) Z_F-ideal at the given places.
std::optional<FElt> signed_generator(const Field& F, const ZLat& a, const std::vector<int>& places) {
    auto g = is_principal_zf(F, a, false);
    if (!g) return std::nullopt;
    std::vector<int> sg;
    for (int v : places) sg.push_back(f_sign(F, *g, v));
    auto u = unit_with_signs(F, sg, places);
    if (!u) return std::nullopt;
    return f_mul(F, *g, *u);
}

// Balancing multiplier a with a^2 c z of roughly equal size at every real place.
FElt balance(const Field& F, const FElt& c, const FElt& z) {
    int n = F.n;
    if (n == 1) return F.one;
    double eps = (std::pow(2.0, 1.0 / n) - 1) / (std::pow(2.0, 1.0 / n) + 1);
    std::vector<std::vector<double>> x(n, std::vector<double>(n));
    std::vector<double> kappa(n, 0);
    for (int i = 0; i < n; ++i) {
        FElt e(n, Rat(0));
        e[i] = 1;
        for (int v = 0; v < n; ++v) {
            x[i][v] = f_approx(F, e, v);
            kappa[v] += std::fabs(x[i][v]) / 2;
        }
    }
    double C = 0;
    for (int v = 0; v < n; ++v) C = std::max(C, 3 * std::sqrt(f_approx(F, c, v)) / (eps * kappa[v]));
    // solve sum_i y_i x_{i,v} = r_v
    std::vector<std::vector<double>> M(n, std::vector<double>(n + 1));
    for (int v = 0; v < n; ++v) {
        for (int i = 0; i < n; ++i) M[v][i] = x[i][v];
        M[v][n] = C / std::sqrt(f_approx(F, c, v) * f_approx(F, z, v));
    }
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(M[r][col]) > std::fabs(M[piv][col])) piv = r;
        std::swap(M[col], M[piv]);
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            double f = M[r][col] / M[col][col];
            for (int k = col; k <= n; ++k) M[r][k] -= f * M[col][k];
        }
    }
    FElt a(n, Rat(0));
    for (int i = 0; i < n; ++i) a[i] = Rat((long)std::llround(M[i][n] / M[i][i]));
    if (f_is_zero(a)) return F.one;
    return a;
}

QMat lattice_gram(const QuatAlgebra& A, const ZLat& L) { return gram_trnrd(A, L.basis_matrix()); }

std::optional<QElt> principal_indefinite(const QuatAlgebra& A, ZLat cur, ZLat nrd, int max_iterations) {
    const Field& F = *A.F;
    QElt beta = q_one(A);
    if (nrd.den != 1) {
        Rat m(nrd.den);
        cur = lattice_scale(cur, m);
        nrd = ideal_mul(F, nrd, ideal_principal(F, f_int(F, m * m)));
        beta = q_scale(beta, 1 / m);
    }
    auto c = signed_generator(F, nrd, A.ram_inf);
    if (!c) return std::nullopt;
    for (int it = 0; it < max_iterations; ++it) {
        Rat Nc = abs(f_norm(F, *c));
        QMat B = cur.basis_matrix();
        QMat G = gram_absolute(A, B);
        Rat bound = G(0, 0);
        for (int i = 1; i < G.r; ++i) bound = std::min(bound, G(i, i));
        std::optional<QElt> best;
        Rat bestN = Nc;
        for (int round = 0; round < 12 && !best; ++round, bound *= 2) {
            for (auto& [val, x] : short_vectors(G, bound)) {
                QElt g = lat_element(B, x);
                Rat Nd = abs(f_norm(F, q_nrd(A, g))) / Nc;
                if (Nd == 0) continue;  // zero divisor in a split algebra
                if (Nd < bestN) {
                    bestN = Nd;
                    best = g;
                    if (Nd == 1) break;
                }
            }
        }
        if (!best) break;
        FElt d = f_mul(F, q_nrd(A, *best), f_inv(F, *c));
        if (bestN == 1) return q_mul(A, beta, *best);
        // cur = (gamma/d) * (d gamma^{-1} cur)
        beta = q_mul(A, beta, q_fmul(A, f_inv(F, d), *best));
        cur = lat_left_mul(A, q_fmul(A, d, q_inv(A, *best)), cur);
        c = d;
    }
    fail(ErrKind::ResourceCap, "is_principal: descent stalled");
}

long narrow_class(const Field& F, const ZLat& a) { return F.ncl.size() <= 1 ? 0 : class_index(F, a, true); }

bool admissible_prime(const Field& F, const Order& O, const Prime& P) {
    if (F.disc % P.p == 0) return false;
    for (auto& [Q, e] : O.disc_fac)
        if (Q == P) return false;
    return true;
}

// Subgroup of the narrow class group generated by the given classes.
std::set<int> narrow_span(const Field& F, const std::vector<int>& gens) {
    std::set<int> H{0};
    std::deque<int> todo{0};
    while (!todo.empty()) {
        int x = todo.front();
        todo.pop_front();
        for (int g : gens) {
            int y = class_index(F, ideal_mul(F, F.ncl.reps[x], F.ncl.reps[g]), true);
            if (H.insert(y).second) todo.push_back(y);
        }
    }
    return H;
}

Factored ram_factored(const QuatAlgebra& A) {
    Factored D;
    for (auto& P : A.ram) D.push_back({P, 1});
    return D;
}

struct Candidate {
    ZLat left;
    std::vector<long> theta;
    int cls = 0;
};

Candidate describe(const QuatAlgebra& A, const RightIdeal& I, long T) {
    Candidate c;
    c.left = left_order_lat(A, I.L);
    c.theta = theta_prefix(A, c.left, T);
    c.cls = (int)narrow_class(*A.F, I.nrd);
    return c;
}

// Index of the class of I among reps, or -1.
int find_class(const ClassSetResult& R, const RightIdeal& I, const Candidate& c) {
    for (size_t k = 0; k < R.reps.size(); ++k) {
        const ClassRep& r = R.reps[k];
        if (r.nrd_class != c.cls || r.theta != c.theta) continue;
        if (is_isomorphic(I, r.I)) return (int)k;
    }
    return -1;
}

}  // namespace

std::optional<QElt> is_principal_definite(const QuatAlgebra& A, const ZLat& I, const ZLat& nrdI, PrincipalConstants* consts) {
    const Field& F = *A.F;
    require(A.definite, "is_principal_definite: algebra is not totally definite");
    auto c = signed_generator(F, nrdI, all_places(F));
    if (!c) return std::nullopt;
    for (auto& z : totally_positive_unit_reps(F)) {
        FElt a = balance(F, *c, z);
        if (consts) {
            int n = F.n;
            consts->eps = (std::pow(2.0, 1.0 / n) - 1) / (std::pow(2.0, 1.0 / n) + 1);
        }
        FElt t = f_mul(F, f_mul(F, a, a), f_mul(F, *c, z));
        ZLat aI = lat_left_mul(A, q_from_field(A, a), I);
        QMat B = aI.basis_matrix();
        // every x with nrd x = t has Tr nrd x = Tr t, so this enumeration is exhaustive
        for (auto& [val, x] : short_vectors(gram_trnrd(A, B), f_trace(F, t))) {
            if (val != f_trace(F, t)) continue;
            QElt xi = lat_element(B, x);
            if (q_nrd(A, xi) == t) return q_fmul(A, f_inv(F, a), xi);
        }
    }
    return std::nullopt;
}

std::optional<QElt> is_principal_definite(const RightIdeal& I) { return is_principal_definite(*I.O->A, I.L, I.nrd); }

std::optional<QElt> is_principal_indefinite(const RightIdeal& I, int max_iterations) {
    return principal_indefinite(*I.O->A, I.L, I.nrd, max_iterations);
}

std::optional<QElt> is_principal(const RightIdeal& I) {
    return I.O->A->definite ? is_principal_definite(I) : is_principal_indefinite(I);
}

std::optional<QElt> is_isomorphic(const RightIdeal& I, const RightIdeal& J) {
    const QuatAlgebra& A = *I.O->A;
    const Field& F = *A.F;
    require(I.O->L == J.O->L, "is_isomorphic: ideals have different right orders");
    if (A.definite && narrow_class(F, I.nrd) != narrow_class(F, J.nrd)) return std::nullopt;
    // (I : J)_L = I J^{-1}, a right O_L(J)-ideal; scale by m to make it integral
    Int m = ideal_min_int(F, J.nrd.den == 1 ? J.nrd : lattice_scale(J.nrd, Rat(J.nrd.den)));
    Rat mq(m);
    ZLat C = lattice_scale(colon_left(A, I.L, J.L), mq);
    ZLat nrdC = ideal_mul(F, ideal_mul(F, I.nrd, ideal_inverse(F, J.nrd)), ideal_principal(F, f_int(F, mq * mq)));
    std::optional<QElt> xi = A.definite ? is_principal_definite(A, C, nrdC) : principal_indefinite(A, C, nrdC, 64);
    if (!xi) return std::nullopt;
    return q_scale(*xi, 1 / mq);
}

long unit_index(const QuatAlgebra& A, const ZLat& O) {
    const Field& F = *A.F;
    QMat B = O.basis_matrix();
    QMat G = gram_trnrd(A, B);
    long count = 0;
    for (auto& z : totally_positive_unit_reps(F)) {
        Rat t = f_trace(F, z);
        for (auto& [val, x] : short_vectors(G, t))
            if (val == t && q_nrd(A, lat_element(B, x)) == z) ++count;
    }
    return count / 2;
}

std::vector<long> theta_prefix(const QuatAlgebra& A, const ZLat& L, long T) {
    std::vector<long> th(T + 1, 0);
    th[0] = 1;
    for (auto& [val, x] : short_vectors(lattice_gram(A, L), Rat(T))) {
        Int k = floor_q(val);
        if (Rat(k) == val) ++th[k.get_si()];
    }
    return th;
}

long default_theta_length(const Field& F) { return F.n == 1 ? 20 : 4 * F.n; }

std::vector<Prime> choose_neighbor_primes(const Order& O) {
    const Field& F = *O.A->F;
    std::vector<Prime> S;
    for (long bound = 64;; bound *= 2) {
        if (bound > 1 << 20) fail(ErrKind::ResourceCap, "no admissible neighbour primes found");
        auto ps = primes_up_to_norm(F, bound);
        std::sort(ps.begin(), ps.end(), prime_less);
        std::vector<int> gens;
        std::set<int> H{0};
        S.clear();
        for (auto& P : ps) {
            if (P.norm <= 4 || !admissible_prime(F, O, P)) continue;
            if (S.empty()) {
                S.push_back(P);
            } else {
                int c = (int)narrow_class(F, P.P);
                if (H.count(c)) continue;
                S.push_back(P);
            }
            if (F.ncl.size() <= 1) return S;
            gens.push_back((int)narrow_class(F, P.P));
            H = narrow_span(F, gens);
            if ((long)H.size() == F.ncl.size()) return S;
        }
    }
}

ClassSetResult class_set_definite(const OrderPtr& O, const ClassSetOptions& opt) {
    const QuatAlgebra& A = *O->A;
    const Field& F = *A.F;
    require(A.definite, "class_set_definite: algebra is not totally definite");
    require(bool(is_eichler(O)), "class_set_definite: order is not an Eichler order");
    ClassSetResult R;
    R.O = O;
    R.S = opt.S.empty() ? choose_neighbor_primes(*O) : opt.S;
    std::vector<int> gens;
    for (auto& P : R.S) {
        require(admissible_prime(F, *O, P) || F.disc % P.p == 0, "neighbour prime divides the level or discriminant");
        gens.push_back((int)narrow_class(F, P.P));
    }
    require((long)narrow_span(F, gens).size() == F.ncl.size(), "neighbour primes do not generate the narrow class group");
    R.mass = mass(F, ram_factored(A), O->level).mass;
    long T = opt.theta_length ? opt.theta_length : default_theta_length(F);
    std::vector<LocalSplitting> split;
    for (auto& P : R.S) split.push_back(local_splitting(*O, P, 1));

    auto add = [&](const RightIdeal& I, const Candidate& c) {
        ClassRep r;
        r.I = I;
        r.left = make_order(O->A, c.left);
        r.unit_index = unit_index(A, c.left);
        r.theta = c.theta;
        r.nrd_class = c.cls;
        R.reps.push_back(r);
        R.edges.emplace_back();
        R.mass_sum += Rat(1, r.unit_index);
    };
    RightIdeal O1 = unit_ideal(O);
    add(O1, describe(A, O1, T));

    auto expand = [&](size_t i) {
        std::vector<int> e;
        for (size_t s = 0; s < R.S.size(); ++s)
            for (auto& J : neighbors(R.reps[i].I, R.S[s], split[s])) {
                Candidate c = describe(A, J, T);
                int k = find_class(R, J, c);
                if (k < 0) {
                    add(J, c);
                    k = (int)R.reps.size() - 1;
                }
                e.push_back(k);
            }
        R.edges[i] = e;
    };
    size_t next = 0;
    while (R.mass_sum < R.mass) {
        if (opt.stop_above && (long)R.reps.size() > opt.stop_above) {
            R.complete = false;
            return R;
        }
        if (next >= R.reps.size()) fail(ErrKind::Internal, "class_set: neighbour graph exhausted below the mass");
        expand(next++);
    }
    if (R.mass_sum != R.mass) fail(ErrKind::Internal, "class_set: mass exceeded, isomorphism test failed");
    if (opt.full_graph)
        for (; next < R.reps.size(); ++next) expand(next);
    return R;
}

std::vector<ZLat> twosided_classes(const OrderPtr& O) {
    const QuatAlgebra& A = *O->A;
    std::vector<ZLat> gens = twosided_generators(*O);
    std::vector<RightIdeal> cls{unit_ideal(O)};
    for (size_t i = 0; i < cls.size(); ++i)
        for (auto& g : gens) {
            ZLat L = lat_mul(A, cls[i].L, g);
            RightIdeal K{L, O, reduced_norm_ideal(A, L)};
            bool known = false;
            for (auto& c : cls)
                if (is_isomorphic(K, c)) {
                    known = true;
                    break;
                }
            if (!known) cls.push_back(K);
        }
    std::vector<ZLat> out;
    for (auto& c : cls) out.push_back(c.L);
    return out;
}

ClassSetResult class_set_and_conjugacy(const OrderPtr& O, const ClassSetOptions& opt) {
    const QuatAlgebra& A = *O->A;
    const Field& F = *A.F;
    require(A.definite, "class_set_and_conjugacy: algebra is not totally definite");
    require(bool(is_eichler(O)), "class_set_and_conjugacy: order is not an Eichler order");
    ClassSetResult R;
    R.O = O;
    R.S = opt.S.empty() ? choose_neighbor_primes(*O) : opt.S;
    R.mass = mass(F, ram_factored(A), O->level).mass;
    long T = opt.theta_length ? opt.theta_length : default_theta_length(F);

    // Register a new order type O_L(X) for the right O-ideal X.
    auto add_type = [&](const OrderPtr& Oi, const ZLat& X, const std::vector<long>& theta) {
        OrderType t;
        t.order = Oi;
        t.connecting = X;
        t.unit_index = unit_index(A, Oi->L);
        auto classes = twosided_classes(Oi);
        t.twosided = (long)classes.size();
        int idx = (int)R.types.size();
        R.types.push_back(t);
        for (auto& J : classes) {
            ZLat L = lat_mul(A, J, X);
            ClassRep r;
            r.I = {L, O, reduced_norm_ideal(A, L)};
            r.left = Oi;
            r.unit_index = t.unit_index;
            r.theta = theta;
            r.nrd_class = (int)narrow_class(F, r.I.nrd);
            r.type = idx;
            R.reps.push_back(r);
            R.mass_sum += Rat(1, t.unit_index);
        }
    };
    add_type(O, O->L, theta_prefix(A, O->L, T));

    size_t next = 0;
    while (R.mass_sum < R.mass) {
        if (opt.stop_above && (long)R.reps.size() > opt.stop_above) {
            R.complete = false;
            return R;
        }
        if (next >= R.types.size()) fail(ErrKind::Internal, "class_set_and_conjugacy: order graph exhausted below the mass");
        OrderType cur = R.types[next++];
        for (auto& P : R.S) {
            for (auto& I : neighbors(unit_ideal(cur.order), P)) {
                ZLat L = left_order_lat(A, I.L);
                auto theta = theta_prefix(A, L, T);
                ZLat X = lat_mul(A, I.L, cur.connecting);
                RightIdeal XI{X, O, reduced_norm_ideal(A, X)};
                bool known = false;
                for (auto& r : R.reps) {
                    if (r.theta != theta) continue;
                    if (is_isomorphic(XI, r.I)) {
                        known = true;
                        break;
                    }
                }
                if (!known) add_type(make_order(O->A, L), X, theta);
                if (R.mass_sum >= R.mass) break;
            }
            if (R.mass_sum >= R.mass) break;
        }
    }
    if (R.mass_sum != R.mass) fail(ErrKind::Internal, "class_set_and_conjugacy: mass exceeded");
    return R;
}

std::optional<QElt> is_conjugate(const OrderPtr& O, const OrderPtr& Op) {
    const QuatAlgebra& A = *O->A;
    require(O->disc == Op->disc, "is_conjugate: orders have different discriminants");
    if (A.definite) {
        long T = default_theta_length(*A.F);
        if (theta_prefix(A, O->L, T) != theta_prefix(A, Op->L, T)) return std::nullopt;
    }
    ZLat C = connecting_ideal(O, Op);
    RightIdeal I{C, O, reduced_norm_ideal(A, C)};
    for (auto& J : twosided_classes(O))
        if (auto xi = is_isomorphic(I, RightIdeal{J, O, reduced_norm_ideal(A, J)})) return xi;
    return std::nullopt;
}

bool is_sinf_principal(const Field& F, const ZLat& a, const std::vector<int>& places) {
    return bool(signed_generator(F, a, places));
}

std::vector<Prime> sinf_class_reps(const Field& F, const std::vector<int>& places, const ZLat& avoid) {
    // #Cl_S = h * 2^|S| / #(sign patterns of units on S)
    long patterns = 0;
    for (long m = 0; m < (1L << places.size()); ++m) {
        std::vector<int> sg;
        for (size_t k = 0; k < places.size(); ++k) sg.push_back((m >> k) & 1 ? -1 : 1);
        if (unit_with_signs(F, sg, places)) ++patterns;
    }
    long target = F.cl.size() * (1L << places.size()) / patterns;
    std::vector<Prime> reps;
    std::vector<ZLat> classes{ideal_unit(F)};
    for (long bound = 64; (long)classes.size() < target; bound *= 2) {
        if (bound > 1 << 20) fail(ErrKind::ResourceCap, "class representatives not found");
        auto ps = primes_up_to_norm(F, bound);
        std::sort(ps.begin(), ps.end(), prime_less);
        for (auto& P : ps) {
            if ((long)classes.size() >= target) break;
            if (ideal_divides(P.P, avoid)) continue;
            bool known = false;
            for (auto& c : classes)
                if (is_sinf_principal(F, ideal_mul(F, P.P, ideal_inverse(F, c)), places)) {
                    known = true;
                    break;
                }
            if (!known) {
                classes.push_back(P.P);
                reps.push_back(P);
            }
        }
    }
    return reps;
}

ClassSetResult class_set_indefinite(const OrderPtr& O) {
    const QuatAlgebra& A = *O->A;
    const Field& F = *A.F;
    require(!A.definite, "class_set_indefinite: algebra is totally definite");
    require(bool(is_eichler(O)), "class_set_indefinite: order is not an Eichler order");
    ClassSetResult R;
    R.O = O;
    auto add = [&](const RightIdeal& I, OrderPtr left) {
        ClassRep r;
        r.I = I;
        r.left = std::move(left);
        R.reps.push_back(r);
    };
    add(unit_ideal(O), O);
    for (auto& P : sinf_class_reps(F, A.ram_inf, O->disc)) {
        RightIdeal I = ideal_of_norm(O, {{P, 1}});
        add(I, make_order(O->A, left_order_lat(A, I.L)));
    }
    R.edges.resize(R.reps.size());
    return R;
}

std::vector<OrderPtr> conj_class_set_indefinite(const OrderPtr& O) {
    const QuatAlgebra& A = *O->A;
    const Field& F = *A.F;
    require(!A.definite, "conj_class_set_indefinite: algebra is totally definite");
    require(bool(is_eichler(O)), "conj_class_set_indefinite: order is not an Eichler order");
    std::vector<ZLat> cls{ideal_unit(F)};
    for (auto& P : sinf_class_reps(F, A.ram_inf, O->disc)) cls.push_back(P.P);
    const auto& places = A.ram_inf;
    auto index = [&](const ZLat& a) {
        for (size_t k = 0; k < cls.size(); ++k)
            if (is_sinf_principal(F, ideal_mul(F, a, ideal_inverse(F, cls[k])), places)) return (int)k;
        fail(ErrKind::Internal, "ideal is in no listed class");
    };
    // H = <2 Cl, [p^e] for p^e || disc with e odd>
    std::vector<int> gens;
    for (auto& c : cls) gens.push_back(index(ideal_mul(F, c, c)));
    for (auto& [P, e] : O->disc_fac)
        if (e % 2 == 1) gens.push_back(index(ideal_pow(F, P.P, e)));
    std::set<int> H{0};
    std::deque<int> todo{0};
    while (!todo.empty()) {
        int x = todo.front();
        todo.pop_front();
        for (int g : gens) {
            int y = index(ideal_mul(F, cls[x], cls[g]));
            if (H.insert(y).second) todo.push_back(y);
        }
    }
    std::vector<OrderPtr> out{O};
    std::set<int> covered = H;
    for (size_t k = 1; k < cls.size(); ++k) {
        if (covered.count((int)k)) continue;
        for (int h : H) covered.insert(index(ideal_mul(F, cls[k], cls[h])));
        auto fac = factor_ideal(F, cls[k]);
        RightIdeal I = ideal_of_norm(O, fac);
        out.push_back(make_order(O->A, left_order_lat(A, I.L)));
    }
    return out;
}

OrderPtr definite_eichler_order(FieldPtr F, const Factored& D, const Factored& N) {
    check_definite_pair(*F, D, N);
    static std::map<std::string, OrderPtr> cache;
    std::vector<Prime> ram;
    std::string k = F->name + ":" + F->disc.get_str();
    for (auto& [P, e] : D) {
        ram.push_back(P);
        k += ";";
        for (auto& x : P.P.H.a) k += x.get_str() + ",";
    }
    OrderPtr Omax;
    if (auto it = cache.find(k); it != cache.end()) {
        Omax = it->second;
    } else {
        QuatPtr A = algebra_with_ramification(F, ram, all_places(*F));
        Omax = maximal_order(A);
        cache[k] = Omax;
    }
    Factored Nz;
    for (auto& pe : N)
        if (pe.second > 0) Nz.push_back(pe);
    return Nz.empty() ? Omax : eichler_order(Omax, Nz);
}

ClassNumberResult class_number(FieldPtr F, const Factored& D, const Factored& N, bool enumerate, long stop_above) {
    ClassNumberResult r;
    r.mass = class_number_formula(*F, D, N);
    r.formula = r.mass.h;
    if (r.formula && !enumerate) {
        r.h = *r.formula;
        return r;
    }
    ClassSetOptions opt;
    opt.stop_above = stop_above;
    ClassSetResult cs = class_set_definite(definite_eichler_order(F, D, N), opt);
    r.complete = cs.complete;
    r.enumerated = (long)cs.reps.size();
    r.h = *r.enumerated;
    if (r.formula && r.complete && *r.formula != r.h)
        fail(ErrKind::Internal, "class number formula and enumeration disagree");
    r.classes = std::move(cs);
    return r;
}

int graph_diameter(const std::vector<std::vector<int>>& edges) {
    int n = (int)edges.size(), diam = 0;
    for (int s = 0; s < n; ++s) {
        std::vector<int> dist(n, -1);
        std::vector<int> queue{s};
        dist[s] = 0;
        for (size_t k = 0; k < queue.size(); ++k)
            for (int t : edges[queue[k]])
                if (dist[t] < 0) {
                    dist[t] = dist[queue[k]] + 1;
                    queue.push_back(t);
                }
        if ((int)queue.size() < n) return -1;
        diam = std::max(diam, dist[queue.back()]);
    }
    return diam;
}

std::optional<int> chung_diameter_bound(const ClassSetResult& R) {
    const QuatAlgebra& A = *R.O->A;
    const Field& F = *A.F;
    long H = (long)R.reps.size();
    if (H < 3 || R.S.empty()) return std::nullopt;
    double k = 1, lambda = 1;
    for (auto& P : R.S) {
        if (P.norm <= 4 || F.disc % P.p == 0 || !admissible_prime(F, *R.O, P)) return std::nullopt;
        double q = P.norm.get_d();
        k *= q + 1;
        lambda *= 2 * std::sqrt(q);
    }
    if (k <= lambda) return std::nullopt;
    return (int)std::ceil(std::log(double(H - 1)) / std::log(k / lambda));
}

}  // namespace qcs
