#include "qcs/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qcs {

namespace {

json int_to_json(const Int& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_string()) return Int(j.get<std::string>());
    fail(ErrKind::Precondition, "schema: expected an integer");
}

QVec rats_from_json(const json& j, int n) {
    if (!j.is_array() || (int)j.size() != n) fail(ErrKind::Precondition, "schema: vector has the wrong length");
    QVec v;
    for (auto& x : j) v.push_back(rat_from_json(x));
    return v;
}

json rats_to_json(const QVec& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(rat_to_json(x));
    return a;
}

ClassGroup class_group_from_json(const Field& F, const json& j) {
    ClassGroup C;
    for (auto& o : j.at("orders")) C.orders.push_back(o.get<long>());
    for (auto& r : j.at("reps")) C.reps.push_back(lattice_from_json(r, F.n));
    if (C.reps.empty()) C.reps.push_back(ideal_unit(F));
    long size = 1;
    for (long o : C.orders) size *= o;
    if (size != C.size()) fail(ErrKind::Precondition, "schema: class group orders do not match the representatives");
    return C;
}

json class_group_to_json(const ClassGroup& C) {
    json reps = json::array();
    for (auto& r : C.reps) reps.push_back(lattice_to_json(r));
    return {{"orders", C.orders}, {"reps", reps}};
}

void verify_class_group(const Field& F, const ClassGroup& C, bool narrow) {
    const char* what = narrow ? "narrow class group" : "class group";
    if (!is_principal_zf(F, C.reps[0], narrow))
        fail(ErrKind::Precondition, std::string("invariant: first ") + what + " representative is not trivial");
    for (int i = 0; i < C.size(); ++i)
        for (int k = 0; k < i; ++k)
            if (is_principal_zf(F, ideal_mul(F, C.reps[i], ideal_inverse(F, C.reps[k])), narrow))
                fail(ErrKind::Precondition, std::string("invariant: repeated ") + what + " representatives");
    // every prime below the Minkowski bound lies in a listed class
    double mk = std::sqrt(F.disc.get_d());
    for (int k = 1; k <= F.n; ++k) mk *= double(k) / F.n;
    for (auto& P : primes_up_to_norm(F, (long)mk)) {
        bool found = false;
        for (auto& R : C.reps)
            if (is_principal_zf(F, ideal_mul(F, P.P, ideal_inverse(F, R)), narrow)) {
                found = true;
                break;
            }
        if (!found) fail(ErrKind::Precondition, std::string("invariant: ") + what + " representatives are incomplete");
    }
}

std::vector<Prime> primes_of_norm(const Field& F, const Int& q) {
    std::vector<Prime> out;
    auto f = factor_int(q, Int(1000000));
    if (f.size() != 1) return out;
    for (auto& P : primes_above(F, f[0].first))
        if (P.norm == q) out.push_back(P);
    std::sort(out.begin(), out.end(), prime_less);
    return out;
}

// Split a positive integer into prime norms, first primes of each norm.
bool split_norm(const Field& F, const std::vector<std::pair<Int, int>>& pf, size_t i, Factored& acc) {
    if (i == pf.size()) return true;
    auto [p, a] = pf[i];
    if (a == 0) return split_norm(F, pf, i + 1, acc);
    auto ps = primes_above(F, p);
    std::sort(ps.begin(), ps.end(), prime_less);
    for (auto& P : ps) {
        if (P.f > a) continue;
        auto next = pf;
        next[i].second -= P.f;
        bool merged = false;
        for (auto& pe : acc)
            if (pe.first == P) {
                ++pe.second;
                merged = true;
            }
        if (!merged) acc.push_back({P, 1});
        if (split_norm(F, next, i, acc)) return true;
        for (auto it = acc.begin(); it != acc.end(); ++it)
            if (it->first == P) {
                if (--it->second == 0) acc.erase(it);
                break;
            }
    }
    return false;
}

void add_factor(Factored& a, const Prime& P, int e) {
    for (auto& pe : a)
        if (pe.first == P) {
            pe.second += e;
            return;
        }
    a.push_back({P, e});
}

}  // namespace

json rat_to_json(const Rat& x) { return to_string(x); }

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    fail(ErrKind::Precondition, "schema: expected a rational \"p/q\"");
}

json lattice_to_json(const ZLat& L) {
    json rows = json::array();
    for (int i = 0; i < L.H.r; ++i) {
        json r = json::array();
        for (int k = 0; k < L.H.c; ++k) r.push_back(int_to_json(L.H(i, k)));
        rows.push_back(r);
    }
    return {{"den", int_to_json(L.den)}, {"hnf", rows}};
}

ZLat lattice_from_json(const json& j, int dim) {
    if (!j.is_object() || !j.contains("hnf")) fail(ErrKind::Precondition, "schema: lattice needs \"hnf\"");
    Int den = j.contains("den") ? int_from_json(j.at("den")) : Int(1);
    if (den <= 0) fail(ErrKind::Precondition, "schema: lattice denominator must be positive");
    std::vector<IVec> rows;
    for (auto& r : j.at("hnf")) {
        if ((int)r.size() != dim) fail(ErrKind::Precondition, "schema: lattice row has the wrong length");
        IVec v;
        for (auto& x : r) v.push_back(int_from_json(x));
        rows.push_back(v);
    }
    return lattice_from_int_rows(rows, den, dim);
}

json field_to_json(const Field& F) {
    json ib = json::array(), units = json::array();
    for (int i = 0; i < F.n; ++i) ib.push_back(rats_to_json(F.ib.row(i)));
    for (auto& u : F.units) units.push_back(rats_to_json(u));
    json poly = json::array();
    for (auto& c : F.poly) poly.push_back(int_to_json(c));
    json j = {{"name", F.name},
              {"degree", F.n},
              {"poly", poly},
              {"integral_basis", ib},
              {"disc", int_to_json(F.disc)},
              {"units", units},
              {"class_group", class_group_to_json(F.cl)},
              {"narrow_class_group", class_group_to_json(F.ncl)},
              {"unit_signs", F.unit_signs}};
    if (F.has_elliptic) {
        json cm = json::array(), ell = json::array();
        for (auto& K : F.cm) cm.push_back({{"g1", rats_to_json(K.g1)}, {"g0", rats_to_json(K.g0)}, {"q", K.q}});
        for (auto& R : F.elliptic)
            ell.push_back({{"q", R.q}, {"ext", R.ext}, {"conductor", lattice_to_json(R.conductor)}, {"h", R.h}});
        j["cm"] = cm;
        j["elliptic"] = ell;
    }
    return j;
}

Field field_from_json(const json& j) {
    try {
        int n = j.at("degree").get<int>();
        if (n < 1) fail(ErrKind::Precondition, "schema: degree must be positive");
        IVec poly;
        for (auto& c : j.at("poly")) poly.push_back(int_from_json(c));
        if ((int)poly.size() != n + 1) fail(ErrKind::Precondition, "schema: poly must have degree+1 coefficients");
        QMat ib(n, n);
        auto& jb = j.at("integral_basis");
        if ((int)jb.size() != n) fail(ErrKind::Precondition, "schema: integral_basis must have degree rows");
        for (int i = 0; i < n; ++i) ib.set_row(i, rats_from_json(jb[i], n));
        std::vector<FElt> units;
        for (auto& u : j.at("units")) units.push_back(rats_from_json(u, n));
        if ((int)units.size() != n - 1) fail(ErrKind::Precondition, "invariant: need degree-1 fundamental units");
        Field F = make_field(j.value("name", std::string("field")), poly, ib, units);
        if (F.disc != int_from_json(j.at("disc"))) fail(ErrKind::Precondition, "invariant: basis discriminant differs from disc");
        finish_field(F);
        if (n > 1) {
            // multiplicative independence through the log embedding
            std::vector<std::vector<double>> M(n - 1, std::vector<double>(n - 1));
            for (int i = 0; i < n - 1; ++i)
                for (int v = 0; v < n - 1; ++v) M[i][v] = std::log(std::fabs(f_approx(F, units[i], v)));
            double d = 1;
            for (int c = 0; c < n - 1; ++c) {
                int piv = c;
                for (int r = c + 1; r < n - 1; ++r)
                    if (std::fabs(M[r][c]) > std::fabs(M[piv][c])) piv = r;
                std::swap(M[c], M[piv]);
                d *= M[c][c];
                if (std::fabs(M[c][c]) < 1e-9) break;
                for (int r = c + 1; r < n - 1; ++r) {
                    double f = M[r][c] / M[c][c];
                    for (int k = c; k < n - 1; ++k) M[r][k] -= f * M[c][k];
                }
            }
            if (std::fabs(d) < 1e-9) fail(ErrKind::Precondition, "invariant: units are not independent");
        }
        if (j.contains("unit_signs") && j.at("unit_signs").get<std::vector<std::vector<int>>>() != F.unit_signs)
            fail(ErrKind::Precondition, "invariant: unit_signs do not match the real embeddings");
        F.cl = class_group_from_json(F, j.at("class_group"));
        F.ncl = class_group_from_json(F, j.at("narrow_class_group"));
        verify_class_group(F, F.cl, false);
        verify_class_group(F, F.ncl, true);
        long patterns = 0;
        std::vector<int> places(n);
        for (int v = 0; v < n; ++v) places[v] = v;
        for (long m = 0; m < (1L << n); ++m) {
            std::vector<int> sg;
            for (int v = 0; v < n; ++v) sg.push_back((m >> v) & 1 ? -1 : 1);
            if (unit_with_signs(F, sg, places)) ++patterns;
        }
        if (F.ncl.size() * patterns != F.cl.size() * (1L << n))
            fail(ErrKind::Precondition, "invariant: narrow class number is inconsistent with the unit signs");
        if (j.contains("cm")) {
            for (auto& c : j.at("cm")) F.cm.push_back({rats_from_json(c.at("g1"), n), rats_from_json(c.at("g0"), n), c.at("q").get<int>()});
            for (auto& e : j.at("elliptic")) {
                EllipticOrder R{e.at("q").get<int>(), e.at("ext").get<int>(), lattice_from_json(e.at("conductor"), n),
                                e.at("h").get<long>()};
                if (R.ext < 0 || R.ext >= (int)F.cm.size()) fail(ErrKind::Precondition, "schema: elliptic ext out of range");
                F.elliptic.push_back(R);
            }
            for (auto& K : F.cm) {
                // g must be totally negative discriminant (a CM extension)
                FElt disc = f_sub(f_mul(F, K.g1, K.g1), f_scale(K.g0, 4));
                for (int v = 0; v < n; ++v)
                    if (f_sign(F, disc, v) >= 0) fail(ErrKind::Precondition, "invariant: cm polynomial is not totally imaginary");
            }
            F.has_elliptic = true;
        }
        return F;
    } catch (const json::exception& e) {
        fail(ErrKind::Precondition, std::string("schema: ") + e.what());
    }
}

FieldPtr load_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrKind::FixtureMissing, "field fixture not found: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(ErrKind::Precondition, std::string("schema: ") + e.what());
    }
    return std::make_shared<const Field>(field_from_json(j));
}

Factored parse_factored(const Field& F, const std::string& s) {
    Factored out;
    std::string t = s;
    std::replace(t.begin(), t.end(), '*', ',');
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty()) continue;
        int e = 1;
        long idx = -1;
        if (auto k = item.find('^'); k != std::string::npos) {
            e = std::stoi(item.substr(k + 1));
            item = item.substr(0, k);
        }
        if (auto k = item.find('@'); k != std::string::npos) {
            idx = std::stol(item.substr(k + 1));
            item = item.substr(0, k);
        }
        Int q(item);
        require(q >= 1 && e >= 0, "ideal item must be a positive norm with nonnegative exponent");
        if (q == 1) continue;
        auto ps = primes_of_norm(F, q);
        if (!ps.empty()) {
            if (idx >= (long)ps.size()) fail(ErrKind::Precondition, "prime index out of range in " + s);
            if (e > 0) add_factor(out, ps[idx < 0 ? 0 : idx], e);
            continue;
        }
        require(idx < 0, "prime index given for a composite norm in " + s);
        Factored acc;
        if (!split_norm(F, factor_int(q, Int(1000000)), 0, acc)) fail(ErrKind::Precondition, "no ideal has norm " + item);
        for (auto& [P, k] : acc) add_factor(out, P, k * e);
    }
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return prime_less(a.first, b.first); });
    return out;
}

std::string factored_to_string(const Field& F, const Factored& a) {
    if (a.empty()) return "1";
    std::string s;
    for (auto& [P, e] : a) {
        if (!s.empty()) s += "*";
        s += P.norm.get_str();
        auto ps = primes_of_norm(F, P.norm);
        if (ps.size() > 1)
            for (size_t i = 0; i < ps.size(); ++i)
                if (ps[i] == P) s += "@" + std::to_string(i);
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

Int factored_norm(const Factored& a) {
    Int N = 1;
    for (auto& [P, e] : a)
        for (int i = 0; i < e; ++i) N *= P.norm;
    return N;
}

json algebra_to_json(const QuatAlgebra& A) {
    Factored ram;
    for (auto& P : A.ram) ram.push_back({P, 1});
    return {{"a", rats_to_json(A.a)}, {"b", rats_to_json(A.b)}, {"ram", factored_to_string(*A.F, ram)}, {"ram_inf", A.ram_inf}};
}

QuatPtr algebra_from_json(FieldPtr F, const json& j) {
    if (!j.is_object() || !j.contains("a") || !j.contains("b")) fail(ErrKind::Precondition, "schema: algebra needs \"a\" and \"b\"");
    FElt a = rats_from_json(j.at("a"), F->n), b = rats_from_json(j.at("b"), F->n);
    if (!j.contains("ram")) return make_algebra(F, a, b);
    std::vector<Prime> ram;
    for (auto& [P, e] : parse_factored(*F, j.at("ram").get<std::string>())) {
        require(e == 1, "schema: ramification must be squarefree");
        ram.push_back(P);
    }
    std::vector<int> ram_inf = j.value("ram_inf", std::vector<int>{});
    return make_algebra_with_ramification(F, a, b, ram, ram_inf);
}

json order_to_json(const Order& O) { return {{"algebra", algebra_to_json(*O.A)}, {"order", lattice_to_json(O.L)}}; }

OrderPtr order_from_json(FieldPtr F, const json& j) {
    if (!j.is_object() || !j.contains("algebra") || !j.contains("order")) fail(ErrKind::Precondition, "schema: order needs \"algebra\" and \"order\"");
    QuatPtr A = algebra_from_json(F, j.at("algebra"));
    ZLat L = lattice_from_json(j.at("order"), A->dim());
    require(is_order(*A, L), "schema: lattice is not an order");
    return make_order(A, L);
}

json ideal_to_json(const RightIdeal& I) {
    json j = order_to_json(*I.O);
    j["ideal"] = lattice_to_json(I.L);
    return j;
}

RightIdeal ideal_from_json(FieldPtr F, const json& j) {
    OrderPtr O = order_from_json(F, j);
    if (!j.contains("ideal")) fail(ErrKind::Precondition, "schema: ideal needs \"ideal\"");
    return make_right_ideal(O, lattice_from_json(j.at("ideal"), O->A->dim()));
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrKind::Precondition, "cannot read " + path);
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::exception& e) {
        fail(ErrKind::Precondition, std::string("schema: ") + e.what());
    }
}

json class_set_to_json(const ClassSetResult& R, const std::string& emit) {
    json j;
    j["algebra"] = algebra_to_json(*R.O->A);
    j["order"] = lattice_to_json(R.O->L);
    json S = json::array();
    for (auto& P : R.S) S.push_back(int_to_json(P.norm));
    j["S"] = S;
    j["class_number"] = R.reps.size();
    j["mass"] = rat_to_json(R.mass);
    json reps = json::array(), masses = json::array();
    for (auto& r : R.reps) {
        json x = {{"nrd", lattice_to_json(r.I.nrd)}, {"nrd_norm", rat_to_json(ideal_norm(r.I.nrd))}, {"unit_index", r.unit_index}};
        if (emit != "masses") {
            x["ideal"] = lattice_to_json(r.I.L);
            x["left_order"] = lattice_to_json(r.left->L);
        }
        reps.push_back(x);
        masses.push_back(rat_to_json(r.unit_index ? Rat(1, r.unit_index) : Rat(0)));
    }
    if (emit == "reps" || emit == "graph" || emit.empty()) j["reps"] = reps;
    j["masses"] = masses;
    if (emit == "graph" || emit.empty()) j["edges"] = R.edges;
    if (!R.types.empty()) {
        json types = json::array();
        for (auto& t : R.types) types.push_back({{"unit_index", t.unit_index}, {"twosided_classes", t.twosided}, {"order", lattice_to_json(t.order->L)}});
        j["types"] = types;
    }
    return j;
}

std::string class_set_to_csv(const ClassSetResult& R) {
    std::string s = "index,nrd_norm,unit_index,mass\n";
    for (size_t i = 0; i < R.reps.size(); ++i) {
        const auto& r = R.reps[i];
        s += std::to_string(i) + "," + to_string(ideal_norm(r.I.nrd)) + "," + std::to_string(r.unit_index) + "," +
             to_string(Rat(1, std::max(1L, r.unit_index))) + "\n";
    }
    return s;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(path);
    if (!out) fail(ErrKind::Precondition, "cannot write " + path);
    out << text;
    if (!out) fail(ErrKind::Precondition, "write failed: " + path);
}

}  // namespace qcs
