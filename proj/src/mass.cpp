#include "qcs/mass.hpp"

#include <cmath>
#include <map>
#include <mpfr.h>
#include <numeric>

namespace qcs {

namespace {

using IPoly = std::vector<Int>;  // low to high

IPoly pmul(const IPoly& a, const IPoly& b) {
    IPoly c(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

IPoly pdiv_exact(IPoly a, const IPoly& b) {
    int db = (int)b.size() - 1;
    IPoly q(a.size() - b.size() + 1, Int(0));
    for (int i = (int)a.size() - 1; i >= db; --i) {
        Int c = a[i] / b.back();
        q[i - db] = c;
        for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
}

IPoly cyclotomic(long m) {
    IPoly f(m + 1, Int(0));
    f[0] = -1;
    f[m] = 1;
    for (long d = 1; d < m; ++d)
        if (m % d == 0) f = pdiv_exact(f, cyclotomic(d));
    return f;
}

// Minimal polynomial of 2cos(2 pi / m), m >= 3.
IPoly real_cyclotomic(long m) {
    IPoly phi = cyclotomic(m);
    int k = ((int)phi.size() - 1) / 2;
    std::vector<IPoly> C{{Int(2)}, {Int(0), Int(1)}};
    for (int j = 2; j <= k; ++j) {
        IPoly t = pmul(IPoly{Int(0), Int(1)}, C[j - 1]);
        for (size_t i = 0; i < C[j - 2].size(); ++i) t[i] -= C[j - 2][i];
        C.push_back(t);
    }
    IPoly psi(k + 1, Int(0));
    psi[0] = phi[k];
    for (int j = 1; j <= k; ++j)
        for (size_t i = 0; i < C[j].size(); ++i) psi[i] += phi[k + j] * C[j][i];
    return psi;
}

long euler_phi(long m) {
    long r = m;
    for (long p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            r -= r / p;
        }
    if (m > 1) r -= r / m;
    return r;
}

FElt eval_poly(const Field& F, const IPoly& f, const FElt& x) {
    FElt r = f_int(F, 0);
    for (int i = (int)f.size() - 1; i >= 0; --i) r = f_add(f_mul(F, r, x), f_int(F, Rat(f[i])));
    return r;
}

// Residue degrees of the primes above p.
std::vector<int> residue_degrees(const Field& F, long p) {
    std::vector<int> out;
    if (F.index % p == 0) {
        for (auto& P : primes_above(F, Int(p))) out.push_back(P.f);
        return out;
    }
    for (auto& [g, m] : factor_mod_p(F.poly, p)) out.push_back((int)g.size() - 1);
    return out;
}

Rat mpfr_to_rat(mpfr_t x) {
    Rat r;
    mpfr_get_q(r.get_mpq_t(), x);
    return r;
}

}  // namespace

long zeta_denominator_bound(const Field& F) {
    QMat G(F.n, F.n);
    for (int i = 0; i < F.n; ++i)
        for (int j = 0; j < F.n; ++j) {
            FElt wi(F.n, Rat(0)), wj(F.n, Rat(0));
            wi[i] = 1;
            wj[j] = 1;
            G(i, j) = f_trace(F, f_mul(F, wi, wj));
        }
    std::vector<FElt> cands{f_int(F, 0)};
    for (auto& [v, c] : short_vectors(G, Rat(4 * F.n))) cands.push_back(to_q(c));
    long Q = 1;
    for (long q = 2; q <= 1000; ++q) {
        long k = euler_phi(2 * q) / 2;
        if (F.n % k != 0) continue;
        IPoly psi = q == 2 ? IPoly{Int(0), Int(1)} : real_cyclotomic(2 * q);
        for (auto& x : cands)
            if (f_is_zero(eval_poly(F, psi, x))) {
                Q = std::lcm(Q, q);
                break;
            }
    }
    return Q;
}

Rat zeta_minus_one(const Field& F, ZetaInfo* info, int precision_bits) {
    static std::map<std::pair<std::string, Int>, std::pair<Rat, ZetaInfo>> cache;
    auto key = std::make_pair(F.name, F.disc);
    auto it = cache.find(key);
    if (it != cache.end() && precision_bits == 128) {
        if (info) *info = it->second.second;
        return it->second.first;
    }
    ZetaInfo zi;
    zi.Q = zeta_denominator_bound(F);
    const long B = 2 * zi.Q;
    const int n = F.n;
    double dF = F.disc.get_d();
    double eps = (1.0 / B) * std::pow(2 * M_PI * M_PI, n) / std::pow(dF, 1.5);
    double z2 = M_PI * M_PI / 6;
    zi.P = (long)(n * (1 + std::pow(z2, n) / eps)) + 1;
    mpfr_prec_t prec = precision_bits;
    mpfr_t lo, hi, a, t, pi_lo, pi_hi, c;
    mpfr_inits2(prec, lo, hi, a, t, pi_lo, pi_hi, c, (mpfr_ptr)0);
    Rat result;
    bool done = false;
    for (zi.doublings = 0; zi.doublings <= 3 && !done; ++zi.doublings) {
        long P = zi.P;
        mpfr_set_ui(lo, 1, MPFR_RNDD);
        mpfr_set_ui(hi, 1, MPFR_RNDU);
        for (long p : primes_up_to(P)) {
            for (int f : residue_degrees(F, p)) {
                Int q2;
                mpz_ui_pow_ui(q2.get_mpz_t(), (unsigned long)p, (unsigned long)(2 * f));
                Int q1 = q2 - 1;
                // local factor q2 / (q2 - 1)
                mpfr_set_z(a, q2.get_mpz_t(), MPFR_RNDD);
                mpfr_div_z(a, a, q1.get_mpz_t(), MPFR_RNDD);
                mpfr_mul(lo, lo, a, MPFR_RNDD);
                mpfr_set_z(a, q2.get_mpz_t(), MPFR_RNDU);
                mpfr_div_z(a, a, q1.get_mpz_t(), MPFR_RNDU);
                mpfr_mul(hi, hi, a, MPFR_RNDU);
            }
        }
        // tail: log of the remaining product is at most (4/3) n / P
        mpfr_set_ui(a, 4 * n, MPFR_RNDU);
        mpfr_div_ui(a, a, 3 * (unsigned long)P, MPFR_RNDU);
        mpfr_exp(a, a, MPFR_RNDU);
        mpfr_mul(hi, hi, a, MPFR_RNDU);
        // constant d_F^{3/2} / (2 pi^2)^n
        mpfr_const_pi(pi_lo, MPFR_RNDD);
        mpfr_const_pi(pi_hi, MPFR_RNDU);
        Int d3 = F.disc * F.disc * F.disc;
        mpfr_set_z(c, d3.get_mpz_t(), MPFR_RNDD);
        mpfr_sqrt(c, c, MPFR_RNDD);
        mpfr_sqr(t, pi_hi, MPFR_RNDU);
        mpfr_mul_ui(t, t, 2, MPFR_RNDU);
        mpfr_pow_ui(t, t, (unsigned long)n, MPFR_RNDU);
        mpfr_div(c, c, t, MPFR_RNDD);
        mpfr_mul(lo, lo, c, MPFR_RNDD);
        mpfr_set_z(c, d3.get_mpz_t(), MPFR_RNDU);
        mpfr_sqrt(c, c, MPFR_RNDU);
        mpfr_sqr(t, pi_lo, MPFR_RNDD);
        mpfr_mul_ui(t, t, 2, MPFR_RNDD);
        mpfr_pow_ui(t, t, (unsigned long)n, MPFR_RNDD);
        mpfr_div(c, c, t, MPFR_RNDU);
        mpfr_mul(hi, hi, c, MPFR_RNDU);
        zi.interval = {mpfr_to_rat(lo), mpfr_to_rat(hi)};
        Int kl = ceil_q(zi.interval.lo * B), kh = floor_q(zi.interval.hi * B);
        if (kl == kh) {
            result = frac(kl, Int(B));
            done = true;
            break;
        }
        zi.P *= 2;
    }
    mpfr_clears(lo, hi, a, t, pi_lo, pi_hi, c, (mpfr_ptr)0);
    if (!done) fail(ErrKind::ResourceCap, "zeta_minus_one: interval did not isolate a unique rational");
    if (n % 2 == 1) result = -result;
    if (precision_bits == 128) cache[key] = {result, zi};
    if (info) *info = zi;
    return result;
}

void check_definite_pair(const Field& F, const Factored& D, const Factored& N) {
    for (auto& [P, e] : D)
        if (e != 1) fail(ErrKind::Precondition, "discriminant must be squarefree");
    for (auto& [P, e] : N)
        for (auto& [Q, f] : D)
            if (e > 0 && P == Q) fail(ErrKind::Precondition, "level must be coprime to the discriminant");
    if ((D.size() + F.n) % 2 != 0)
        fail(ErrKind::Precondition, "discriminant is not realizable by a totally definite algebra");
}

MassValue mass(const Field& F, const Factored& D, const Factored& N) {
    check_definite_pair(F, D, N);
    MassValue m;
    m.zeta = zeta_minus_one(F);
    m.hF = F.cl.size();
    m.phi = 1;
    for (auto& [P, e] : D) m.phi *= Rat(P.norm - 1);
    m.psi = 1;
    for (auto& [P, e] : N) {
        if (e == 0) continue;
        Rat Ne = 1;
        for (int i = 0; i < e; ++i) Ne *= Rat(P.norm);
        m.psi *= Ne * (1 + frac(1, P.norm));
    }
    Rat z = m.zeta < 0 ? Rat(-m.zeta) : m.zeta;
    m.mass = z * Rat(m.hF) * m.phi * m.psi / Rat(Int(1) << (F.n - 1));
    return m;
}

int artin_symbol(const Field& F, const CMExtension& K, const Prime& P) {
    ResidueField RF = residue_field(F, P);
    auto g1 = RF.reduce(K.g1), g0 = RF.reduce(K.g0);
    int roots = 0;
    for (auto& x : RF.elements()) {
        auto v = RF.add(RF.add(RF.mul(x, x), RF.mul(g1, x)), g0);
        if (RF.is_zero(v)) ++roots;
    }
    if (roots == 0) return -1;
    return roots == 2 ? 1 : 0;
}

std::optional<std::vector<std::pair<int, Rat>>> embedding_numbers(const Field& F, const Factored& D, const Factored& N) {
    if (!F.has_elliptic) return std::nullopt;
    for (auto& [P, e] : N)
        if (e > 1) return std::nullopt;
    std::map<int, Rat> eq;
    for (auto& R : F.elliptic) {
        const CMExtension& K = F.cm.at(R.ext);
        Rat prod = Rat(R.h);
        for (auto& [P, e] : D) {
            if (lattice_contains(P.P, R.conductor))
                prod = 0;
            else
                prod *= 1 - artin_symbol(F, K, P);
        }
        for (auto& [P, e] : N) {
            if (e == 0) continue;
            if (lattice_contains(P.P, R.conductor))
                prod *= 2;
            else
                prod *= 1 + artin_symbol(F, K, P);
        }
        eq[R.q] += prod / 2;
    }
    std::vector<std::pair<int, Rat>> out(eq.begin(), eq.end());
    return out;
}

MassValue class_number_formula(const Field& F, const Factored& D, const Factored& N) {
    MassValue m = mass(F, D, N);
    auto e = embedding_numbers(F, D, N);
    if (!e) return m;
    Rat h = m.mass;
    for (auto& [q, eq] : *e) {
        Rat w = 1 - frac(1, q);
        m.corrections.push_back({q, eq, w});
        h += eq * w;
    }
    if (h.get_den() != 1) fail(ErrKind::Internal, "mass formula produced a non-integral class number");
    m.h = h.get_num();
    return m;
}

}  // namespace qcs
