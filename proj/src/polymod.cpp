#include "qcs/field.hpp"

#include <algorithm>

namespace qcs {

int64_t mulmod(int64_t a, int64_t b, int64_t m) { return (int64_t)((__int128)a * b % m); }

int64_t powmod(int64_t a, Int e, int64_t m) {
    int64_t r = 1 % m;
    a %= m;
    if (a < 0) a += m;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

int64_t invmod(int64_t a, int64_t m) {
    Int x = a, mm = m, r;
    if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), mm.get_mpz_t()) == 0) fail(ErrKind::Internal, "invmod: not invertible");
    return r.get_si();
}

namespace {

struct PF {
    int64_t p;

    void trim(PolyP& a) const {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    int deg(const PolyP& a) const { return (int)a.size() - 1; }

    PolyP sub(PolyP a, const PolyP& b) const {
        if (a.size() < b.size()) a.resize(b.size(), 0);
        for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] - b[i] + p) % p;
        trim(a);
        return a;
    }
    PolyP mul(const PolyP& a, const PolyP& b) const {
        if (a.empty() || b.empty()) return {};
        PolyP c(a.size() + b.size() - 1, 0);
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
        }
        trim(c);
        return c;
    }
    // quotient and remainder
    std::pair<PolyP, PolyP> divmod(PolyP a, const PolyP& b) const {
        int db = deg(b);
        if (db < 0) fail(ErrKind::Internal, "poly division by zero");
        int64_t inv = invmod(b.back(), p);
        if (deg(a) < db) return {{}, a};
        PolyP q(deg(a) - db + 1, 0);
        for (int i = deg(a); i >= db; --i) {
            int64_t c = mulmod(a[i], inv, p);
            q[i - db] = c;
            if (c == 0) continue;
            for (int j = 0; j <= db; ++j) a[i - db + j] = (a[i - db + j] - mulmod(c, b[j], p) + p) % p;
        }
        trim(a);
        trim(q);
        return {q, a};
    }
    PolyP mod(const PolyP& a, const PolyP& b) const { return divmod(a, b).second; }
    PolyP monic(PolyP a) const {
        if (a.empty()) return a;
        int64_t inv = invmod(a.back(), p);
        for (auto& x : a) x = mulmod(x, inv, p);
        return a;
    }
    PolyP gcd(PolyP a, PolyP b) const {
        while (!b.empty()) {
            PolyP r = mod(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }
    PolyP deriv(const PolyP& a) const {
        PolyP d;
        for (size_t i = 1; i < a.size(); ++i) d.push_back(mulmod((int64_t)(i % p), a[i], p));
        trim(d);
        return d;
    }
    PolyP powmod_poly(PolyP a, Int e, const PolyP& m) const {
        PolyP r{1};
        a = mod(a, m);
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = mod(mul(r, a), m);
            a = mod(mul(a, a), m);
            e >>= 1;
        }
        return r;
    }
    // p-th root of a polynomial whose derivative vanishes
    PolyP proot(const PolyP& a) const {
        PolyP r;
        for (size_t i = 0; i < a.size(); i += (size_t)p) r.push_back(a[i]);
        trim(r);
        return r;
    }

    void edf(const PolyP& g, int d, Rng& rng, std::vector<PolyP>& out) const {
        if (deg(g) == d) {
            out.push_back(g);
            return;
        }
        std::uniform_int_distribution<int64_t> dist(0, p - 1);
        while (true) {
            PolyP a(deg(g), 0);
            for (auto& x : a) x = dist(rng);
            trim(a);
            if (deg(a) < 1) continue;
            PolyP b;
            if (p == 2) {
                PolyP t = a, s = mod(a, g);
                for (int i = 1; i < d; ++i) {
                    t = mod(mul(t, t), g);
                    PolyP acc = s;
                    if (acc.size() < t.size()) acc.resize(t.size(), 0);
                    for (size_t k = 0; k < t.size(); ++k) acc[k] = (acc[k] + t[k]) % 2;
                    trim(acc);
                    s = acc;
                }
                b = s;
            } else {
                Int e;
                mpz_ui_pow_ui(e.get_mpz_t(), (unsigned long)p, (unsigned long)d);
                e = (e - 1) / 2;
                b = sub(powmod_poly(a, e, g), PolyP{1});
            }
            PolyP h = gcd(g, b);
            if (deg(h) > 0 && deg(h) < deg(g)) {
                edf(h, d, rng, out);
                edf(divmod(g, h).first, d, rng, out);
                return;
            }
        }
    }

    // monic squarefree g -> irreducible factors
    void ddf(PolyP g, Rng& rng, std::vector<PolyP>& out) const {
        PolyP x{0, 1};
        PolyP h = x;
        int d = 0;
        while (deg(g) >= 2 * (d + 1)) {
            ++d;
            h = powmod_poly(h, Int(p), g);
            PolyP gd = gcd(g, sub(h, x));
            if (deg(gd) > 0) {
                edf(gd, d, rng, out);
                g = divmod(g, gd).first;
                h = mod(h, g);
            }
        }
        if (deg(g) > 0) out.push_back(monic(g));
    }

    void sqf(PolyP f, int mult, Rng& rng, std::vector<std::pair<PolyP, int>>& out) const {
        f = monic(f);
        if (deg(f) <= 0) return;
        PolyP fd = deriv(f);
        if (fd.empty()) {
            sqf(proot(f), mult * (int)p, rng, out);
            return;
        }
        PolyP c = gcd(f, fd);
        PolyP w = divmod(f, c).first;
        int i = 1;
        while (deg(w) > 0) {
            PolyP y = gcd(w, c);
            PolyP z = divmod(w, y).first;
            if (deg(z) > 0) {
                std::vector<PolyP> irr;
                ddf(monic(z), rng, irr);
                for (auto& q : irr) out.push_back({q, i * mult});
            }
            ++i;
            w = y;
            c = divmod(c, y).first;
        }
        if (deg(c) > 0) sqf(proot(c), mult * (int)p, rng, out);
    }
};

}  // namespace

std::vector<std::pair<PolyP, int>> factor_mod_p(const IVec& f, int64_t p, uint64_t seed) {
    PF pf{p};
    PolyP a;
    for (auto& c : f) {
        Int r;
        mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), (unsigned long)p);
        a.push_back(r.get_si());
    }
    pf.trim(a);
    Rng rng(seed);
    std::vector<std::pair<PolyP, int>> out;
    pf.sqf(a, 1, rng, out);
    // merge equal factors and sort canonically
    std::sort(out.begin(), out.end(), [](auto& x, auto& y) {
        if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
        return x.first < y.first;
    });
    std::vector<std::pair<PolyP, int>> merged;
    for (auto& e : out) {
        if (!merged.empty() && merged.back().first == e.first)
            merged.back().second += e.second;
        else
            merged.push_back(e);
    }
    return merged;
}

}  // namespace qcs
