#include "qcs/quadratic.hpp"

#include <numeric>
#include <set>
#include <tuple>

namespace qcs {

long fundamental_discriminant(long d) { return d % 4 == 1 || d % 4 == -3 ? d : 4 * d; }

QuadUnit fundamental_unit_cf(long D) {
    require(D > 0 && !is_square(D), "discriminant must be a positive non-square");
    Int sq = isqrt(Int(D));
    auto floor_quot = [&](const Int& P, const Int& Q) {
        // floor((P + sqrt D)/Q), Q > 0
        Int num = P + sq;
        Int r;
        mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
        return r;
    };
    Int P = D % 2, Q = 2;
    // advance once so that the complete quotient is reduced
    Int a = floor_quot(P, Q);
    Int P1 = a * Q - P, Q1 = (Int(D) - P1 * P1) / Q;
    P = P1;
    Q = Q1;
    Int P0 = P, Q0 = Q;
    // product of complete quotients (P + sqrt D)/Q as (x + y sqrt D)
    Rat x = 1, y = 0;
    int len = 0;
    do {
        Rat nx = (x * Rat(P) + y * Rat(D)) / Rat(Q);
        Rat ny = (x + y * Rat(P)) / Rat(Q);
        x = nx;
        y = ny;
        ++len;
        a = floor_quot(P, Q);
        Int Pn = a * Q - P;
        Int Qn = (Int(D) - Pn * Pn) / Q;
        P = Pn;
        Q = Qn;
    } while (P != P0 || Q != Q0);
    QuadUnit e;
    Rat t = 2 * x, u = 2 * y;
    if (t.get_den() != 1 || u.get_den() != 1) fail(ErrKind::Internal, "unit reconstruction failed");
    e.t = t.get_num();
    e.u = u.get_num();
    if (e.u < 0) {
        e.t = -e.t;
        e.u = -e.u;
    }
    if (e.t < 0) e.t = -e.t;
    Int nrm4 = e.t * e.t - Int(D) * e.u * e.u;
    if (nrm4 != 4 && nrm4 != -4) fail(ErrKind::Internal, "continued fraction unit has wrong norm");
    e.norm = nrm4 > 0 ? 1 : -1;
    (void)len;
    return e;
}

namespace {

using Form = std::tuple<long, long, long>;

long lgcd(long a, long b) { return std::gcd(std::labs(a), std::labs(b)); }

}  // namespace

long narrow_class_number_forms(long D) {
    long s = isqrt(Int(D)).get_si();  // floor(sqrt D), D non-square
    auto reduced = [&](long a, long b) {
        long A = std::labs(a);
        if (!(b > 0 && b * b < D)) return false;
        if (!((2 * A + b) * (2 * A + b) > D)) return false;
        long t = 2 * A - b;
        return t < 0 || t * t < D;
    };
    std::set<Form> forms;
    for (long b = 1; b <= s; ++b) {
        if ((b - D) % 2) continue;
        long ac = (b * b - D) / 4;  // negative
        for (long a = 1; a <= -ac; ++a) {
            if ((-ac) % a) continue;
            for (long sa : {a, -a}) {
                long c = ac / sa;
                if (lgcd(lgcd(sa, b), c) != 1) continue;
                if (reduced(sa, b)) forms.insert({sa, b, c});
            }
        }
    }
    auto rho = [&](const Form& f) {
        auto [a, b, c] = f;
        long m = 2 * std::labs(c);
        // largest b' < sqrt D with b' = -b mod m
        long bp = s;
        long r = ((-b - bp) % m + m) % m;
        bp += r;
        while (bp > s) bp -= m;
        long ap = (bp * bp - D) / (4 * c);
        return Form{c, bp, ap};
    };
    long cycles = 0;
    std::set<Form> seen;
    for (auto& f : forms) {
        if (seen.count(f)) continue;
        ++cycles;
        Form g = f;
        do {
            seen.insert(g);
            g = rho(g);
            if (!forms.count(g)) fail(ErrKind::Internal, "form cycle left the reduced set");
        } while (g != f);
    }
    return cycles;
}

long class_number_imag(long D) {
    require(D < 0 && (D % 4 == 0 || D % 4 == -3), "not a negative discriminant");
    long h = 0;
    for (long a = 1; 3 * a * a <= -D; ++a)
        for (long b = -a + 1; b <= a; ++b) {
            if ((b * b - D) % (4 * a)) continue;
            long c = (b * b - D) / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            if (lgcd(lgcd(a, b), c) != 1) continue;
            ++h;
        }
    return h;
}

FieldPtr quadratic_field(long d) {
    require(d > 1 && is_squarefree(d), "d must be a squarefree integer > 1");
    long D = fundamental_discriminant(d);
    IVec poly = D == d ? IVec{-(d - 1) / 4, -1, 1} : IVec{-d, 0, 1};
    QuadUnit e = fundamental_unit_cf(D);
    // (t + u sqrt D)/2 in the basis (1, theta)
    FElt u(2);
    if (D == d) {
        // sqrt d = 2 theta - 1
        u[0] = frac(e.t - e.u, 2);
        u[1] = Rat(e.u);
    } else {
        // sqrt D = 2 sqrt d
        u[0] = frac(e.t, 2);
        u[1] = Rat(e.u);
    }
    Field F = make_field("Q(sqrt " + std::to_string(d) + ")", poly, QMat::identity(2), {u});
    if (F.disc != D) fail(ErrKind::Internal, "quadratic field discriminant mismatch");
    finish_field(F);
    long hp = narrow_class_number_forms(D);
    long h = e.norm == -1 ? hp : hp / 2;
    F.cl = compute_class_group(F, false, h);
    F.ncl = compute_class_group(F, true, hp);
    return std::make_shared<const Field>(std::move(F));
}

}  // namespace qcs
