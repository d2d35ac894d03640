#include "qcs/tables.hpp"

#include "qcs/io.hpp"

#include <algorithm>

namespace qcs {

std::vector<FElt> field_automorphisms(const Field& F) {
    QVec e(F.n, Rat(0));
    if (F.n > 1) e[1] = 1;
    else e[0] = -Rat(F.poly[0]);
    FElt theta = f_from_power(F, e);
    std::vector<FElt> out{theta};
    if (F.n == 1) return out;
    QMat G(F.n, F.n);
    for (int i = 0; i < F.n; ++i)
        for (int j = 0; j < F.n; ++j) {
            FElt wi(F.n, Rat(0)), wj(F.n, Rat(0));
            wi[i] = 1;
            wj[j] = 1;
            G(i, j) = f_trace(F, f_mul(F, wi, wj));
        }
    Rat t = f_trace(F, f_mul(F, theta, theta));
    for (auto& [val, x] : short_vectors(G, t)) {
        if (val != t) continue;
        FElt r = to_q(x);
        if (r == theta) continue;
        FElt v = f_int(F, 0);
        for (int i = F.n; i >= 0; --i) v = f_add(f_mul(F, v, r), f_int(F, Rat(F.poly[i])));
        if (f_is_zero(v)) out.push_back(r);
    }
    return out;
}

FElt apply_automorphism(const Field& F, const FElt& image, const FElt& x) {
    QVec c = f_to_power(F, x);
    FElt r = f_int(F, 0), pw = F.one;
    for (int i = 0; i < F.n; ++i) {
        r = f_add(r, f_scale(pw, c[i]));
        pw = f_mul(F, pw, image);
    }
    return r;
}

Prime conjugate_prime(const Field& F, const FElt& image, const Prime& P) {
    std::vector<FElt> gens;
    for (int i = 0; i < F.n; ++i) gens.push_back(apply_automorphism(F, image, P.P.basis(i)));
    ZLat Q = ideal_from_gens(F, gens);
    for (auto& R : primes_above(F, P.p))
        if (R.P == Q) return R;
    fail(ErrKind::Internal, "conjugate prime not found");
}

namespace {

struct Scan {
    FieldPtr F;
    const TableOptions* opt;
    std::vector<Prime> ps;
    std::vector<std::vector<int>> perm;  // per automorphism
    Rat bound;
    std::vector<TableRow> rows;

    using Key = std::pair<std::vector<int>, std::vector<std::pair<int, int>>>;

    Key key(const std::vector<int>& D, const std::vector<std::pair<int, int>>& N, const std::vector<int>& p) const {
        Key k;
        for (int i : D) k.first.push_back(p[i]);
        for (auto [i, e] : N) k.second.push_back({p[i], e});
        std::sort(k.first.begin(), k.first.end());
        std::sort(k.second.begin(), k.second.end());
        return k;
    }

    void visit(const std::vector<int>& D, const std::vector<std::pair<int, int>>& N) {
        Key k0 = key(D, N, perm[0]);
        for (size_t s = 1; s < perm.size(); ++s)
            if (key(D, N, perm[s]) < k0) return;
        Factored Df, Nf;
        for (int i : D) Df.push_back({ps[i], 1});
        for (auto [i, e] : N) Nf.push_back({ps[i], e});
        const Field& Fd = *F;
        MassValue m = class_number_formula(Fd, Df, Nf);
        if (m.mass > opt->max_h) return;
        if (m.h && *m.h > opt->max_h) return;
        ClassNumberResult r = class_number(F, Df, Nf, true, opt->max_h);
        if (!r.complete || r.h > opt->max_h) return;
        TableRow row;
        row.n = Fd.n;
        row.dF = Fd.disc;
        row.D = factored_norm(Df);
        row.N = factored_norm(Nf);
        row.h = r.h.get_si();
        row.ideals = "D=" + factored_to_string(Fd, Df) + ";N=" + factored_to_string(Fd, Nf);
        row.by_formula = bool(r.formula);
        row.by_enumeration = true;
        if (opt->on_row) opt->on_row(row, *r.classes);
        rows.push_back(row);
    }

    void levels(const std::vector<int>& D, std::vector<std::pair<int, int>>& N, size_t start, const Rat& used) {
        visit(D, N);
        for (size_t i = start; i < ps.size(); ++i) {
            if (std::find(D.begin(), D.end(), (int)i) != D.end()) continue;
            Rat q(ps[i].norm);
            Rat f = q + 1;
            for (int e = 1; used * f <= bound; ++e, f *= q) {
                N.push_back({(int)i, e});
                levels(D, N, i + 1, used * f);
                N.pop_back();
            }
        }
    }

    void discs(std::vector<int>& D, size_t start, const Rat& used) {
        if ((D.size() + F->n) % 2 == 0) {
            std::vector<std::pair<int, int>> N;
            levels(D, N, 0, used);
        }
        for (size_t i = start; i < ps.size(); ++i) {
            Rat f(ps[i].norm - 1);
            if (used * f > bound) continue;
            D.push_back((int)i);
            discs(D, i + 1, used * f);
            D.pop_back();
        }
    }
};

}  // namespace

std::vector<TableRow> table_rows(FieldPtr F, const TableOptions& opt) {
    Scan s;
    s.F = F;
    s.opt = &opt;
    Rat z = zeta_minus_one(*F);
    if (z < 0) z = -z;
    // M = 2^{1-n} |zeta| h Phi(D) Psi(N) <= max_h
    s.bound = Rat(opt.max_h) * Rat(Int(1) << (F->n - 1)) / (z * Rat(F->cl.size()));
    s.ps = primes_up_to_norm(*F, floor_q(s.bound).get_si() + 1);
    std::sort(s.ps.begin(), s.ps.end(), prime_less);
    for (auto& image : field_automorphisms(*F)) {
        std::vector<int> p;
        for (auto& P : s.ps) {
            Prime Q = conjugate_prime(*F, image, P);
            auto it = std::find(s.ps.begin(), s.ps.end(), Q);
            p.push_back((int)(it - s.ps.begin()));
        }
        s.perm.push_back(p);
    }
    std::vector<int> D;
    s.discs(D, 0, Rat(1));
    auto rows = s.rows;
    std::sort(rows.begin(), rows.end(), [](const TableRow& a, const TableRow& b) {
        return std::tie(a.n, a.dF, a.D, a.N, a.ideals) < std::tie(b.n, b.dF, b.D, b.N, b.ideals);
    });
    return rows;
}

std::vector<TableRow> reproduce_tables(const std::vector<FieldPtr>& fields, const TableOptions& opt) {
    std::vector<TableRow> all;
    for (auto& F : fields) {
        auto r = table_rows(F, opt);
        all.insert(all.end(), r.begin(), r.end());
    }
    std::sort(all.begin(), all.end(), [](const TableRow& a, const TableRow& b) {
        return std::tie(a.n, a.dF, a.D, a.N, a.ideals) < std::tie(b.n, b.dF, b.D, b.N, b.ideals);
    });
    return all;
}

std::string table_csv(const std::vector<TableRow>& rows) {
    std::string s = "n,d_F,D,N,h,ideals\n";
    for (auto& r : rows)
        s += std::to_string(r.n) + "," + r.dF.get_str() + "," + r.D.get_str() + "," + r.N.get_str() + "," +
             std::to_string(r.h) + "," + r.ideals + "\n";
    return s;
}

}  // namespace qcs
