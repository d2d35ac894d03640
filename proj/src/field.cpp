#include "qcs/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace qcs {

namespace {

// Polynomials over Q, low to high.
using QPoly = QVec;

void qtrim(QPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly qrem(QPoly a, const QPoly& b) {
    int db = (int)b.size() - 1;
    while ((int)a.size() - 1 >= db && !a.empty()) {
        Rat c = a.back() / b.back();
        int s = (int)a.size() - 1 - db;
        for (int j = 0; j <= db; ++j) a[s + j] -= c * b[j];
        a.pop_back();
        qtrim(a);
    }
    return a;
}

Rat qeval(const QPoly& a, const Rat& x) {
    Rat r = 0;
    for (int i = (int)a.size() - 1; i >= 0; --i) r = r * x + a[i];
    return r;
}

std::vector<QPoly> sturm_chain(const IVec& f) {
    std::vector<QPoly> s;
    QPoly p0(f.begin(), f.end());
    QPoly p1;
    for (size_t i = 1; i < f.size(); ++i) p1.push_back(Rat(f[i]) * (long)i);
    s.push_back(p0);
    s.push_back(p1);
    while (s.back().size() > 1) {
        QPoly r = qrem(s[s.size() - 2], s.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        s.push_back(r);
    }
    return s;
}

int sign_changes(const std::vector<QPoly>& s, const Rat& x) {
    int cnt = 0, last = 0;
    for (auto& p : s) {
        int v = sgn(qeval(p, x));
        if (v == 0) continue;
        if (last != 0 && v != last) ++cnt;
        last = v;
    }
    return cnt;
}

void isolate(const std::vector<QPoly>& s, const Rat& lo, const Rat& hi, int vlo, int vhi, std::vector<Interval>& out) {
    int k = vlo - vhi;
    if (k == 0) return;
    if (k == 1) {
        out.push_back({lo, hi});
        return;
    }
    Rat mid = (lo + hi) / 2;
    if (qeval(s[0], mid) == 0) fail(ErrKind::Precondition, "defining polynomial has a rational root");
    int vm = sign_changes(s, mid);
    isolate(s, lo, mid, vlo, vm, out);
    isolate(s, mid, hi, vm, vhi, out);
}

Interval refine_root(const QPoly& f, Interval I, const Rat& width) {
    if (I.lo == I.hi) return I;
    int slo = sgn(qeval(f, I.lo));
    while (I.hi - I.lo > width) {
        Rat mid = (I.lo + I.hi) / 2;
        int sm = sgn(qeval(f, mid));
        if (sm == 0) return {mid, mid};
        if (sm == slo)
            I.lo = mid;
        else
            I.hi = mid;
    }
    return I;
}

Rat pow2(int bits) {
    Rat r = 1;
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), bits);
    return r;
}

Interval iv_add(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval iv_mul(const Interval& a, const Interval& b) {
    Rat p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

QPoly power_mul(const Field& F, const QPoly& x, const QPoly& y) {
    int n = F.n;
    QPoly z(2 * n - 1);
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < n; ++j) z[i + j] += x[i] * y[j];
    }
    for (int k = 2 * n - 2; k >= n; --k) {
        if (z[k] == 0) continue;
        Rat c = z[k];
        for (int j = 0; j < n; ++j) z[k - n + j] -= c * Rat(F.poly[j]);
        z[k] = 0;
    }
    z.resize(n);
    return z;
}

std::string field_key(const Field& F) {
    std::string s = F.name + "|";
    for (auto& c : F.poly) s += c.get_str() + ",";
    return s;
}

}  // namespace

Field make_field(const std::string& name, const IVec& poly, const QMat& ib, const std::vector<FElt>& units) {
    Field F;
    F.name = name;
    F.n = (int)poly.size() - 1;
    require(F.n >= 1 && poly.back() == 1, "defining polynomial must be monic of positive degree");
    F.poly = poly;
    require(ib.r == F.n && ib.c == F.n, "integral basis has the wrong shape");
    F.ib = ib;
    F.ib_inv = inverse(ib);
    Rat ind = 1 / det(ib);
    if (ind < 0) ind = -ind;
    require(ind.get_den() == 1, "integral basis does not contain Z[theta]");
    F.index = ind.get_num();
    int n = F.n;
    F.mt.assign(n, std::vector<IVec>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            QVec c = vec_mul(power_mul(F, ib.row(i), ib.row(j)), F.ib_inv);
            require(is_integral(c), "integral basis is not closed under multiplication");
            F.mt[i][j] = scale_to_int(c, 1);
        }
    QVec e0(n);
    e0[0] = 1;
    F.one = vec_mul(e0, F.ib_inv);
    require(is_integral(F.one), "1 is not in the integral basis span");
    QMat T(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            QVec ei(n), ej(n);
            ei[i] = 1;
            ej[j] = 1;
            T(i, j) = f_trace(F, f_mul(F, ei, ej));
        }
    Rat d = det(T);
    require(d.get_den() == 1 && d > 0, "field discriminant must be a positive integer");
    F.disc = d.get_num();
    F.units = units;
    return F;
}

void finish_field(Field& F) {
    auto s = sturm_chain(F.poly);
    Int B = 1;
    for (auto& c : F.poly) B = std::max(B, Int(abs(c)));
    Int P2 = 1;
    while (P2 <= B + 1) P2 *= 2;
    Rat lo = -Rat(P2), hi = Rat(P2);
    F.roots.clear();
    if (F.n == 1) {
        Rat r = -Rat(F.poly[0]);
        F.roots.push_back({r, r});
    } else {
        isolate(s, lo, hi, sign_changes(s, lo), sign_changes(s, hi), F.roots);
        if ((int)F.roots.size() != F.n) fail(ErrKind::Precondition, "defining polynomial is not totally real");
        QPoly f(F.poly.begin(), F.poly.end());
        for (auto& I : F.roots) I = refine_root(f, I, 1 / pow2(256));
    }
    F.unit_signs.clear();
    for (auto& u : F.units) {
        require((int)u.size() == F.n && is_integral(u), "unit is not an algebraic integer");
        Rat N = f_norm(F, u);
        require(N == 1 || N == -1, "claimed unit is not a unit");
        std::vector<int> sg;
        for (int v = 0; v < F.n; ++v) sg.push_back(f_sign(F, u, v));
        F.unit_signs.push_back(sg);
    }
}

FieldPtr rational_field() {
    static FieldPtr Q = [] {
        QMat ib = QMat::identity(1);
        Field F = make_field("Q", IVec{-1, 1}, ib, {});
        finish_field(F);
        F.cl.orders = {};
        F.cl.reps = {ideal_unit(F)};
        F.ncl = F.cl;
        // Z[i] and Z[zeta_3]: class number 1, unit indices 2 and 3
        F.cm = {CMExtension{FElt{Rat(0)}, FElt{Rat(1)}, 2}, CMExtension{FElt{Rat(1)}, FElt{Rat(1)}, 3}};
        F.elliptic = {EllipticOrder{2, 0, ideal_unit(F), 1}, EllipticOrder{3, 1, ideal_unit(F), 1}};
        F.has_elliptic = true;
        return std::make_shared<const Field>(std::move(F));
    }();
    return Q;
}

FElt f_int(const Field& F, const Rat& c) { return f_scale(F.one, c); }

FElt f_add(const FElt& x, const FElt& y) {
    FElt z(x);
    for (size_t i = 0; i < z.size(); ++i) z[i] += y[i];
    return z;
}

FElt f_sub(const FElt& x, const FElt& y) {
    FElt z(x);
    for (size_t i = 0; i < z.size(); ++i) z[i] -= y[i];
    return z;
}

FElt f_neg(const FElt& x) {
    FElt z(x);
    for (auto& c : z) c = -c;
    return z;
}

FElt f_scale(const FElt& x, const Rat& c) {
    FElt z(x);
    for (auto& v : z) v *= c;
    return z;
}

FElt f_mul(const Field& F, const FElt& x, const FElt& y) {
    int n = F.n;
    FElt z(n);
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < n; ++j) {
            if (y[j] == 0) continue;
            Rat c = x[i] * y[j];
            const IVec& m = F.mt[i][j];
            for (int k = 0; k < n; ++k)
                if (m[k] != 0) z[k] += c * m[k];
        }
    }
    return z;
}

QMat f_mulmat(const Field& F, const FElt& x) {
    int n = F.n;
    QMat M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (x[j] == 0) continue;
            for (int k = 0; k < n; ++k) M(i, k) += x[j] * F.mt[i][j][k];
        }
    return M;
}

FElt f_inv(const Field& F, const FElt& x) {
    if (f_is_zero(x)) fail(ErrKind::Precondition, "inverse of zero");
    return vec_mul(F.one, inverse(f_mulmat(F, x)));
}

FElt f_pow(const Field& F, const FElt& x, long e) {
    FElt b = e < 0 ? f_inv(F, x) : x;
    if (e < 0) e = -e;
    FElt r = F.one;
    while (e > 0) {
        if (e & 1) r = f_mul(F, r, b);
        e >>= 1;
        if (e) b = f_mul(F, b, b);
    }
    return r;
}

Rat f_norm(const Field& F, const FElt& x) { return det(f_mulmat(F, x)); }

Rat f_trace(const Field& F, const FElt& x) {
    Rat t = 0;
    for (int i = 0; i < F.n; ++i)
        for (int j = 0; j < F.n; ++j)
            if (x[j] != 0) t += x[j] * F.mt[i][j][i];
    return t;
}

bool f_is_zero(const FElt& x) { return is_zero(x); }

bool f_is_rational(const Field& F, const FElt& x) {
    QVec c = f_to_power(F, x);
    for (int i = 1; i < F.n; ++i)
        if (c[i] != 0) return false;
    return true;
}

bool f_is_unit(const Field& F, const FElt& x) {
    if (!is_integral(x)) return false;
    Rat N = f_norm(F, x);
    return N == 1 || N == -1;
}

FElt f_from_power(const Field& F, const QVec& c) { return vec_mul(c, F.ib_inv); }
QVec f_to_power(const Field& F, const FElt& x) { return vec_mul(x, F.ib); }

Interval f_embed(const Field& F, const FElt& x, int place, int bits) {
    QVec c = f_to_power(F, x);
    Interval root = F.roots.at(place);
    Rat target = 1 / pow2(bits);
    QPoly f(F.poly.begin(), F.poly.end());
    int rb = 256;
    while (true) {
        Interval r{c[F.n - 1], c[F.n - 1]};
        for (int k = F.n - 2; k >= 0; --k) r = iv_add(iv_mul(r, root), Interval{c[k], c[k]});
        if (r.hi - r.lo <= target || root.lo == root.hi) return r;
        rb *= 2;
        if (rb > (1 << 16)) fail(ErrKind::Internal, "embedding precision exhausted");
        root = refine_root(f, root, 1 / pow2(rb));
    }
}

int f_sign(const Field& F, const FElt& x, int place) {
    if (f_is_zero(x)) return 0;
    for (int bits = 64; bits <= (1 << 15); bits *= 2) {
        Interval I = f_embed(F, x, place, bits);
        if (I.lo > 0) return 1;
        if (I.hi < 0) return -1;
        if (I.lo == 0 && I.hi == 0) return 0;
    }
    fail(ErrKind::Internal, "embedding precision exhausted deciding a sign");
}

double f_approx(const Field& F, const FElt& x, int place) {
    Interval I = f_embed(F, x, place, 64);
    return Rat((I.lo + I.hi) / 2).get_d();
}

bool f_totally_positive(const Field& F, const FElt& x) {
    for (int v = 0; v < F.n; ++v)
        if (f_sign(F, x, v) <= 0) return false;
    return true;
}

namespace {

// All 2^(r+1) representatives s * prod u_i^{k_i} of U / U^2, with their sign vectors.
std::vector<std::pair<FElt, std::vector<int>>> unit_square_classes(const Field& F) {
    int r = (int)F.units.size();
    std::vector<std::pair<FElt, std::vector<int>>> out;
    for (int s = 1; s >= -1; s -= 2)
        for (int mask = 0; mask < (1 << r); ++mask) {
            FElt u = f_int(F, s);
            std::vector<int> sg(F.n, s);
            for (int i = 0; i < r; ++i)
                if (mask >> i & 1) {
                    u = f_mul(F, u, F.units[i]);
                    for (int v = 0; v < F.n; ++v) sg[v] *= F.unit_signs[i][v];
                }
            out.push_back({u, sg});
        }
    return out;
}

}  // namespace

std::vector<FElt> totally_positive_unit_reps(const Field& F) {
    std::vector<FElt> out;
    for (auto& [u, sg] : unit_square_classes(F))
        if (std::all_of(sg.begin(), sg.end(), [](int s) { return s > 0; })) out.push_back(u);
    return out;
}

std::optional<FElt> unit_with_signs(const Field& F, const std::vector<int>& signs, const std::vector<int>& places) {
    for (auto& [u, sg] : unit_square_classes(F)) {
        bool ok = true;
        for (size_t k = 0; k < places.size(); ++k)
            if (sg[places[k]] != signs[k]) ok = false;
        if (ok) return u;
    }
    return std::nullopt;
}

double unit_constant(const Field& F) {
    double U = 1;
    for (int v = 0; v < F.n; ++v) {
        double p = 1;
        for (auto& u : F.units) p *= std::exp(std::fabs(std::log(std::fabs(f_approx(F, u, v)))) / 2);
        U = std::max(U, p);
    }
    return U;
}

ZLat ideal_from_gens(const Field& F, const std::vector<FElt>& gens) {
    std::vector<QVec> rows;
    for (auto& g : gens) {
        if (f_is_zero(g)) continue;
        QMat M = f_mulmat(F, g);
        for (int i = 0; i < F.n; ++i) rows.push_back(M.row(i));
    }
    if (rows.empty()) fail(ErrKind::Precondition, "zero ideal");
    return lattice_from_rows(rows, F.n);
}

ZLat ideal_principal(const Field& F, const FElt& x) { return ideal_from_gens(F, {x}); }

ZLat ideal_unit(const Field& F) { return ZLat{1, IMat::identity(F.n)}; }

ZLat ideal_mul(const Field& F, const ZLat& A, const ZLat& B) {
    std::vector<QVec> rows;
    for (int i = 0; i < A.dim(); ++i)
        for (int j = 0; j < B.dim(); ++j) rows.push_back(f_mul(F, A.basis(i), B.basis(j)));
    return lattice_from_rows(rows, F.n);
}

ZLat ideal_pow(const Field& F, const ZLat& A, int e) {
    if (e < 0) return ideal_pow(F, ideal_inverse(F, A), -e);
    ZLat r = ideal_unit(F), b = A;
    while (e > 0) {
        if (e & 1) r = ideal_mul(F, r, b);
        e >>= 1;
        if (e) b = ideal_mul(F, b, b);
    }
    return r;
}

ZLat ideal_inverse(const Field& F, const ZLat& A) {
    std::vector<QVec> cols;
    for (int k = 0; k < A.dim(); ++k) {
        QMat M = f_mulmat(F, A.basis(k));
        for (int j = 0; j < F.n; ++j) {
            QVec c(F.n);
            for (int i = 0; i < F.n; ++i) c[i] = M(i, j);
            cols.push_back(c);
        }
    }
    return lattice_dual(lattice_from_rows(cols, F.n));
}

ZLat ideal_add(const ZLat& A, const ZLat& B) { return lattice_sum(A, B); }
ZLat ideal_intersect(const ZLat& A, const ZLat& B) { return lattice_intersect(A, B); }
Rat ideal_norm(const ZLat& A) { return lattice_covolume(A); }
bool ideal_contains(const ZLat& A, const FElt& x) { return lattice_contains(A, x); }
bool ideal_divides(const ZLat& A, const ZLat& B) { return lattice_contains(A, B); }

Int ideal_min_int(const Field& F, const ZLat& A) { return common_den(lattice_coords(A, F.one)); }

bool prime_less(const Prime& a, const Prime& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    const auto& x = a.P.H.a;
    const auto& y = b.P.H.a;
    for (size_t i = 0; i < x.size(); ++i)
        if (x[i] != y[i]) return x[i] < y[i];
    return false;
}

namespace {

bool in_pzf(const FElt& x, const Int& p) {
    for (auto& c : x) {
        if (c.get_den() != 1) return false;
        if (!mpz_divisible_p(c.get_num_mpz_t(), p.get_mpz_t())) return false;
    }
    return true;
}

int valuation_integral(const Field& F, const Prime& P, FElt x) {
    int v = 0;
    Rat inv_p = Rat(1) / Rat(P.p);
    while (ideal_contains(P.P, x)) {
        x = f_scale(f_mul(F, x, P.anti), inv_p);
        ++v;
    }
    return v;
}

std::map<std::string, std::vector<Prime>>& prime_cache() {
    static std::map<std::string, std::vector<Prime>> c;
    return c;
}

}  // namespace

std::vector<Prime> primes_above(const Field& F, const Int& p) {
    std::string key = field_key(F) + "#" + p.get_str();
    auto& cache = prime_cache();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    require(is_prime(p), "primes_above: not a prime");
    std::vector<Prime> out;
    if (F.n == 1) {
        Prime P;
        P.P = ZLat{1, IMat(1, 1)};
        P.P.H(0, 0) = p;
        P.p = p;
        P.norm = p;
        P.anti = F.one;
        P.unif = f_int(F, Rat(p));
        out.push_back(P);
    } else {
        if (mpz_divisible_p(F.index.get_mpz_t(), p.get_mpz_t()))
            fail(ErrKind::Unsupported, "prime divides the index of Z[theta]");
        require(p.fits_slong_p(), "prime too large");
        auto fac = factor_mod_p(F.poly, p.get_si());
        for (auto& [g, e] : fac) {
            QVec pw(F.n);
            int dg = (int)g.size() - 1;
            if (dg < F.n)
                for (int k = 0; k <= dg; ++k) pw[k] = g[k];
            FElt gt = f_from_power(F, pw);
            Prime P;
            P.p = p;
            P.e = e;
            P.f = dg;
            mpz_pow_ui(P.norm.get_mpz_t(), p.get_mpz_t(), dg);
            P.P = ideal_from_gens(F, {f_int(F, Rat(p)), gt});
            if (ideal_norm(P.P) != Rat(P.norm)) fail(ErrKind::Internal, "prime ideal norm mismatch");
            ZLat pinv = lattice_scale(ideal_inverse(F, P.P), Rat(p));
            bool found = false;
            for (int i = 0; i < F.n && !found; ++i) {
                FElt b = pinv.basis(i);
                if (!in_pzf(b, p)) {
                    P.anti = b;
                    found = true;
                }
            }
            if (!found) fail(ErrKind::Internal, "no anti-uniformizer");
            if (e == 1) {
                P.unif = f_int(F, Rat(p));
            } else {
                FElt c1 = gt, c2 = f_add(gt, f_int(F, Rat(p)));
                P.unif = valuation_integral(F, P, c1) == 1 ? c1 : c2;
                if (valuation_integral(F, P, P.unif) != 1) fail(ErrKind::Internal, "no uniformizer");
            }
            out.push_back(P);
        }
        std::sort(out.begin(), out.end(), prime_less);
    }
    cache[key] = out;
    return out;
}

int prime_valuation(const Field& F, const Prime& P, const FElt& x) {
    if (f_is_zero(x)) fail(ErrKind::Precondition, "valuation of zero");
    Int d = common_den(x);
    return valuation_integral(F, P, f_scale(x, Rat(d))) - P.e * valuation(d, P.p);
}

int ideal_valuation(const Field& F, const Prime& P, const ZLat& A) {
    ZLat B{1, A.H};
    int v = 0;
    Rat inv_p = Rat(1) / Rat(P.p);
    while (lattice_contains(P.P, B)) {
        std::vector<QVec> rows;
        for (int i = 0; i < B.dim(); ++i) rows.push_back(f_scale(f_mul(F, B.basis(i), P.anti), inv_p));
        B = lattice_from_rows(rows, F.n);
        ++v;
    }
    return v - P.e * valuation(A.den, P.p);
}

std::vector<std::pair<Prime, int>> factor_ideal(const Field& F, const ZLat& A) {
    Rat N = ideal_norm(A);
    require(A.den == 1 && N.get_den() == 1, "factor_ideal: ideal must be integral");
    std::vector<std::pair<Prime, int>> out;
    Rat check = 1;
    for (auto& [p, e] : factor_int(N.get_num(), default_factor_bound())) {
        for (auto& P : primes_above(F, p)) {
            int v = ideal_valuation(F, P, A);
            if (v > 0) {
                out.push_back({P, v});
                for (int k = 0; k < v; ++k) check *= Rat(P.norm);
            }
        }
    }
    if (check != N) fail(ErrKind::Internal, "factor_ideal: norms do not match");
    return out;
}

ZLat ideal_from_factors(const Field& F, const std::vector<std::pair<Prime, int>>& fac) {
    ZLat r = ideal_unit(F);
    for (auto& [P, e] : fac) r = ideal_mul(F, r, ideal_pow(F, P.P, e));
    return r;
}

std::vector<Prime> primes_up_to_norm(const Field& F, long bound) {
    std::vector<Prime> out;
    for (long p : primes_up_to(bound))
        for (auto& P : primes_above(F, Int(p)))
            if (P.norm <= bound) out.push_back(P);
    std::sort(out.begin(), out.end(), prime_less);
    return out;
}

std::optional<FElt> is_principal_zf(const Field& F, const ZLat& A, bool narrow) {
    if (F.n == 1) return f_int(F, Rat(A.H(0, 0), A.den));
    Rat N = ideal_norm(A);
    int n = F.n;
    QMat G(n, n);
    std::vector<FElt> B;
    for (int i = 0; i < n; ++i) B.push_back(A.basis(i));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = f_trace(F, f_mul(F, B[i], B[j]));
    double U = unit_constant(F);
    double val = n * U * U * std::pow(N.get_d(), 2.0 / n);
    Rat bound = Rat(val * 1.01) + Rat(1, 100);
    for (auto& [t, x] : short_vectors(G, bound)) {
        FElt a(n);
        for (int i = 0; i < n; ++i)
            if (x[i] != 0) a = f_add(a, f_scale(B[i], Rat(x[i])));
        Rat Na = f_norm(F, a);
        if (Na != N && Na != -N) continue;
        if (!narrow) return a;
        std::vector<int> sg, places;
        for (int v = 0; v < n; ++v) {
            sg.push_back(f_sign(F, a, v));
            places.push_back(v);
        }
        auto u = unit_with_signs(F, sg, places);
        if (!u) return std::nullopt;
        return f_mul(F, a, *u);
    }
    return std::nullopt;
}

int class_index(const Field& F, const ZLat& A, bool narrow) {
    const ClassGroup& C = narrow ? F.ncl : F.cl;
    if (C.size() <= 1) return 0;
    for (int i = 0; i < C.size(); ++i)
        if (is_principal_zf(F, ideal_mul(F, A, ideal_inverse(F, C.reps[i])), narrow)) return i;
    fail(ErrKind::Internal, "class_index: ideal is in no listed class");
}

std::optional<Prime> prime_in_class(const Field& F, int cls, bool narrow, const std::vector<Prime>& exclude, long bound) {
    for (auto& P : primes_up_to_norm(F, bound)) {
        if (std::find(exclude.begin(), exclude.end(), P) != exclude.end()) continue;
        if (class_index(F, P.P, narrow) == cls) return P;
    }
    return std::nullopt;
}

namespace {

// Invariant factors from the element orders of a finite abelian group.
std::vector<long> invariants_from_orders(const std::vector<long>& ords) {
    long N = (long)ords.size();
    std::vector<long> result;
    if (N <= 1) return result;
    std::map<long, std::vector<int>> parts;  // prime -> exponents of cyclic factors
    long m = N;
    for (long l = 2; l <= m; ++l) {
        if (m % l) continue;
        int a = 0;
        while (m % l == 0) { m /= l; ++a; }
        // c(l^j) = l^{sum_i min(j, a_i)}
        std::vector<int> cnt;  // cnt[j] = number of a_i >= j
        int prevlog = 0;
        std::vector<int> logs;
        for (int j = 1; j <= a; ++j) {
            long lj = 1;
            for (int t = 0; t < j; ++t) lj *= l;
            long c = 0;
            for (long o : ords)
                if (lj % o == 0) ++c;
            int lg = 0;
            while (c > 1) { c /= l; ++lg; }
            logs.push_back(lg - prevlog);
            prevlog = lg;
        }
        // logs[j-1] = #{i : a_i >= j}
        std::vector<int> ex;
        for (size_t j = 0; j < logs.size(); ++j) {
            int ge = logs[j];
            int ge_next = j + 1 < logs.size() ? logs[j + 1] : 0;
            for (int t = 0; t < ge - ge_next; ++t) ex.push_back((int)j + 1);
        }
        parts[l] = ex;
    }
    size_t k = 0;
    for (auto& [l, ex] : parts) k = std::max(k, ex.size());
    for (size_t i = 0; i < k; ++i) {
        long d = 1;
        for (auto& [l, ex] : parts) {
            std::vector<int> e = ex;
            std::sort(e.rbegin(), e.rend());
            if (i < e.size())
                for (int t = 0; t < e[i]; ++t) d *= l;
        }
        result.push_back(d);
    }
    std::sort(result.begin(), result.end());
    return result;
}

}  // namespace

ClassGroup compute_class_group(const Field& F, bool narrow, long hint_size) {
    ClassGroup C;
    C.reps.push_back(ideal_unit(F));
    long bound = 50;
    std::vector<Prime> seen;
    while ((long)C.reps.size() < hint_size) {
        for (auto& P : primes_up_to_norm(F, bound)) {
            if ((long)C.reps.size() >= hint_size) break;
            if (std::find(seen.begin(), seen.end(), P) != seen.end()) continue;
            seen.push_back(P);
            bool known = false;
            for (auto& R : C.reps)
                if (is_principal_zf(F, ideal_mul(F, P.P, ideal_inverse(F, R)), narrow)) {
                    known = true;
                    break;
                }
            if (!known) C.reps.push_back(P.P);
        }
        bound *= 2;
        if (bound > 1000000) fail(ErrKind::ResourceCap, "class group representatives not found");
    }
    std::vector<long> ords;
    for (auto& R : C.reps) {
        long k = 1;
        ZLat X = R;
        while (!is_principal_zf(F, X, narrow)) {
            X = ideal_mul(F, X, R);
            ++k;
        }
        ords.push_back(k);
    }
    C.orders = invariants_from_orders(ords);
    return C;
}

ResidueField residue_field(const Field& F, const Prime& P) {
    ResidueField R;
    R.F = &F;
    R.P = P;
    require(P.p.fits_slong_p(), "residue characteristic too large");
    R.p = P.p.get_si();
    R.f = P.f;
    for (int i = 0; i < F.n; ++i)
        if (P.P.H(i, i) == P.p)
            R.pos.push_back(i);
        else if (P.P.H(i, i) != 1)
            fail(ErrKind::Internal, "unexpected prime HNF diagonal");
    if ((int)R.pos.size() != R.f) fail(ErrKind::Internal, "residue degree mismatch");
    R.mt.assign(R.f, std::vector<std::vector<int64_t>>(R.f));
    for (int s = 0; s < R.f; ++s)
        for (int t = 0; t < R.f; ++t) {
            QVec a(F.n), b(F.n);
            a[R.pos[s]] = 1;
            b[R.pos[t]] = 1;
            R.mt[s][t] = R.reduce(f_mul(F, a, b));
        }
    R.one = R.reduce(F.one);
    return R;
}

ResidueField::E ResidueField::reduce(const FElt& x) const {
    Int d = common_den(x);
    Int pp = p;
    if (mpz_divisible_p(d.get_mpz_t(), pp.get_mpz_t())) fail(ErrKind::Precondition, "element not integral at the prime");
    IVec y = scale_to_int(x, d);
    int n = F->n;
    std::vector<int64_t> v(n);
    for (int i = 0; i < n; ++i) {
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), y[i].get_mpz_t(), pp.get_mpz_t());
        v[i] = r.get_si();
    }
    const IMat& H = P.P.H;
    for (int j = 0; j < n; ++j) {
        if (H(j, j) != 1 || v[j] == 0) continue;
        int64_t c = v[j];
        for (int k = j; k < n; ++k) {
            Int hk;
            mpz_fdiv_r(hk.get_mpz_t(), H(j, k).get_mpz_t(), pp.get_mpz_t());
            v[k] = (v[k] - mulmod(c, hk.get_si(), p) + p) % p;
        }
    }
    Int dr;
    mpz_fdiv_r(dr.get_mpz_t(), d.get_mpz_t(), pp.get_mpz_t());
    int64_t dinv = invmod(dr.get_si(), p);
    E out(f);
    for (int s = 0; s < f; ++s) out[s] = mulmod(v[pos[s]], dinv, p);
    return out;
}

FElt ResidueField::lift(const E& x) const {
    FElt a(F->n);
    for (int s = 0; s < f; ++s) a[pos[s]] = x[s];
    return a;
}

ResidueField::E ResidueField::mul(const E& x, const E& y) const {
    E z(f, 0);
    for (int s = 0; s < f; ++s) {
        if (x[s] == 0) continue;
        for (int t = 0; t < f; ++t) {
            if (y[t] == 0) continue;
            int64_t c = mulmod(x[s], y[t], p);
            for (int k = 0; k < f; ++k) z[k] = (z[k] + mulmod(c, mt[s][t][k], p)) % p;
        }
    }
    return z;
}

ResidueField::E ResidueField::add(const E& x, const E& y) const {
    E z(f);
    for (int s = 0; s < f; ++s) z[s] = (x[s] + y[s]) % p;
    return z;
}

ResidueField::E ResidueField::sub(const E& x, const E& y) const {
    E z(f);
    for (int s = 0; s < f; ++s) z[s] = (x[s] - y[s] + p) % p;
    return z;
}

ResidueField::E ResidueField::scal(const E& x, int64_t c) const {
    c %= p;
    if (c < 0) c += p;
    E z(f);
    for (int s = 0; s < f; ++s) z[s] = mulmod(x[s], c, p);
    return z;
}

ResidueField::E ResidueField::pow(const E& x, const Int& e0) const {
    E r = one, b = x;
    Int e = e0;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mul(r, b);
        e >>= 1;
        if (e > 0) b = mul(b, b);
    }
    return r;
}

ResidueField::E ResidueField::inv(const E& x) const {
    if (is_zero(x)) fail(ErrKind::Precondition, "residue field inverse of zero");
    return pow(x, size() - 2);
}

bool ResidueField::is_zero(const E& x) const {
    for (auto c : x)
        if (c) return false;
    return true;
}

Int ResidueField::size() const { return P.norm; }

int ResidueField::legendre(const E& x) const {
    if (is_zero(x)) return 0;
    E r = pow(x, (size() - 1) / 2);
    return r == one ? 1 : -1;
}

ResidueField::E ResidueField::from_index(Int k) const {
    E x(f);
    for (int s = 0; s < f; ++s) {
        Int r;
        mpz_fdiv_qr_ui(k.get_mpz_t(), r.get_mpz_t(), k.get_mpz_t(), (unsigned long)p);
        x[s] = r.get_si();
    }
    return x;
}

std::vector<ResidueField::E> ResidueField::elements() const {
    require(size() <= 1000000, "residue field too large to enumerate");
    std::vector<E> out;
    long q = size().get_si();
    for (long k = 0; k < q; ++k) out.push_back(from_index(k));
    return out;
}

}  // namespace qcs
