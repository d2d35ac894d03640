#include "qcs/io.hpp"
#include "qcs/tables.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

using namespace qcs;

namespace {

struct Globals {
    std::string field, format = "json", out;
    uint64_t seed = 1;
    int precision_bits = 128;
    long factor_bound = 0;
};

FieldPtr field_of(const std::string& f) {
    if (f.empty() || f == "q" || f == "Q") return rational_field();
    return load_field(f);
}

json elt_to_json(const QElt& x) {
    json a = json::array();
    for (auto& c : x) a.push_back(rat_to_json(c));
    return a;
}

std::string csv_field(const json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

// Flat objects become a header line plus one row.
std::string flat_csv(const json& j) {
    std::string head, row;
    for (auto& [k, v] : j.items()) {
        head += (head.empty() ? "" : ",") + k;
        row += (row.empty() ? "" : ",") + csv_field(v);
    }
    return head + "\n" + row + "\n";
}

void emit(const Globals& g, const json& j, const std::string& csv = "") {
    if (g.format == "csv") write_text(g.out, csv.empty() ? flat_csv(j) : csv);
    else write_text(g.out, j.dump(2) + "\n");
}

json mass_to_json(const Field& F, const Factored& D, const Factored& N, const MassValue& m) {
    json corr = json::array();
    for (auto& t : m.corrections) corr.push_back({{"q", t.q}, {"e", rat_to_json(t.e)}, {"weight", rat_to_json(t.weight)}});
    return {{"D", factored_to_string(F, D)}, {"N", factored_to_string(F, N)}, {"mass", rat_to_json(m.mass)},
            {"zeta", rat_to_json(m.zeta)}, {"phi", rat_to_json(m.phi)}, {"psi", rat_to_json(m.psi)},
            {"h_F", m.hF.get_str()}, {"corrections", corr}};
}

std::vector<FieldPtr> table_fields(const Globals& g, const std::string& dir, const std::vector<int>& degrees) {
    if (!g.field.empty()) return {field_of(g.field)};
    std::vector<FieldPtr> out;
    for (int d : degrees) {
        if (d == 1) {
            out.push_back(rational_field());
            continue;
        }
        std::vector<std::string> paths;
        if (std::filesystem::is_directory(dir))
            for (auto& e : std::filesystem::directory_iterator(dir))
                if (e.path().extension() == ".json") paths.push_back(e.path().string());
        std::sort(paths.begin(), paths.end());
        size_t before = out.size();
        for (auto& p : paths) {
            FieldPtr F = load_field(p);
            if (F->n == d) out.push_back(F);
        }
        if (out.size() == before) fail(ErrKind::FixtureMissing, "no field fixtures of degree " + std::to_string(d) + " in " + dir);
    }
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return std::tie(a->n, a->disc) < std::tie(b->n, b->disc); });
    return out;
}

int exit_code(ErrKind k) {
    switch (k) {
        case ErrKind::Precondition:
        case ErrKind::Unsupported: return 2;
        case ErrKind::ResourceCap: return 3;
        case ErrKind::FixtureMissing: return 4;
        default: return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ideal classes and class numbers of quaternion orders over totally real fields"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--field", g.field, "field fixture (JSON path); Q when omitted");
    app.add_option("--seed", g.seed, "seed for local choices (splittings)");
    app.add_option("--precision-bits", g.precision_bits, "initial working precision for zeta")->check(CLI::Range(32, 1 << 16));
    app.add_option("--factor-bound", g.factor_bound, "trial-division bound for integer factorisation");
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", g.out, "output path (stdout when omitted)");

    std::string disc = "", level = "1", emit_kind = "graph", primes, dir = "data/fields", degrees_s = "1,2";
    int depth = 1, max_h = 2;
    bool enumerate = false, conjugacy = false;
    std::string prime;
    std::vector<std::string> ideals, orders;

    auto add_dn = [&](CLI::App* c) {
        c->add_option("--disc", disc, "discriminant: prime norms, e.g. 2*3 or 11@1 (default 1 in even degree)");
        c->add_option("--level", level, "level: prime norms with exponents, e.g. 4^2*5");
    };
    auto* zeta = app.add_subcommand("zeta", "zeta_F(-1) as an exact rational");
    auto* massc = app.add_subcommand("mass", "mass of a definite Eichler order");
    add_dn(massc);
    auto* cn = app.add_subcommand("classnumber", "class number of a definite Eichler order");
    add_dn(cn);
    cn->add_flag("--enumerate", enumerate, "also enumerate the class set");
    auto* cs = app.add_subcommand("classset", "right ideal classes of a definite Eichler order");
    add_dn(cs);
    cs->add_option("--primes", primes, "neighbour primes, e.g. 3,5@1");
    cs->add_option("--emit", emit_kind, "content")->check(CLI::IsMember({"graph", "reps", "masses"}));
    cs->add_flag("--conjugacy", conjugacy, "also compute types and two-sided classes");
    auto* nb = app.add_subcommand("neighbors", "p-neighbour traversal from the order itself");
    add_dn(nb);
    nb->add_option("--prime", prime, "prime norm, e.g. 3 or 11@1")->required();
    nb->add_option("--depth", depth, "traversal depth")->check(CLI::Range(0, 8));
    auto* ip = app.add_subcommand("isprincipal", "principal generator of a right ideal");
    ip->add_option("--ideal", ideals, "ideal JSON")->required()->expected(1);
    auto* iso = app.add_subcommand("isisomorphic", "xi with I = xi J");
    iso->add_option("--ideal", ideals, "two ideal JSON files (I then J)")->required()->expected(2);
    auto* conj = app.add_subcommand("isconjugate", "conjugacy of two orders");
    conj->add_option("--order", orders, "two order JSON files")->required()->expected(2);
    auto* ci = app.add_subcommand("connecting-ideal", "invertible ideal with left order O' and right order O");
    ci->add_option("--order", orders, "O then O' (order JSON)")->required()->expected(2);
    auto* tb = app.add_subcommand("tables", "definite Eichler orders with small class number");
    tb->add_option("--max-h", max_h, "largest class number listed")->check(CLI::Range(1, 2));
    tb->add_option("--degrees", degrees_s, "field degrees, e.g. 1,2");
    tb->add_option("--fields-dir", dir, "directory of field fixtures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (g.factor_bound > 0) set_default_factor_bound(Int(g.factor_bound));
        FieldPtr F = field_of(g.field);
        auto default_disc = [&]() -> Factored {
            if (!disc.empty()) return parse_factored(*F, disc);
            require(F->n % 2 == 0, "--disc is required for fields of odd degree");
            return {};
        };

        if (*zeta) {
            ZetaInfo info;
            Rat z = zeta_minus_one(*F, &info, g.precision_bits);
            emit(g, {{"field", F->name}, {"d_F", F->disc.get_str()}, {"zeta_minus_one", rat_to_json(z)},
                     {"denominator_bound", info.Q}, {"truncation", info.P},
                     {"enclosure", {to_string(info.interval.lo), to_string(info.interval.hi)}}});
        } else if (*massc) {
            Factored D = default_disc(), N = parse_factored(*F, level);
            emit(g, mass_to_json(*F, D, N, mass(*F, D, N)));
        } else if (*cn) {
            Factored D = default_disc(), N = parse_factored(*F, level);
            ClassNumberResult r = class_number(F, D, N, enumerate);
            json j = mass_to_json(*F, D, N, r.mass);
            j["h"] = r.h.get_str();
            j["formula"] = r.formula ? json(r.formula->get_str()) : json(nullptr);
            j["enumerated"] = r.enumerated ? json(*r.enumerated) : json(nullptr);
            if (g.format == "csv") j.erase("corrections");
            emit(g, j);
        } else if (*cs) {
            Factored D = default_disc(), N = parse_factored(*F, level);
            OrderPtr O = definite_eichler_order(F, D, N);
            ClassSetOptions opt;
            for (auto& [P, e] : parse_factored(*F, primes)) opt.S.push_back(P);
            opt.full_graph = emit_kind == "graph";
            ClassSetResult R = conjugacy ? class_set_and_conjugacy(O, opt) : class_set_definite(O, opt);
            emit(g, class_set_to_json(R, emit_kind), class_set_to_csv(R));
        } else if (*nb) {
            Factored D = default_disc(), N = parse_factored(*F, level);
            OrderPtr O = definite_eichler_order(F, D, N);
            Factored pf = parse_factored(*F, prime);
            require(pf.size() == 1 && pf[0].second == 1, "--prime must name a single prime");
            const Prime& P = pf[0].first;
            LocalSplitting S = local_splitting(*O, P, 1, g.seed);
            std::vector<RightIdeal> nodes{unit_ideal(O)};
            std::vector<int> level_of{0};
            std::vector<std::vector<int>> edges{{}};
            auto index_of = [&](const RightIdeal& J) {
                for (size_t k = 0; k < nodes.size(); ++k)
                    if (nodes[k].L == J.L) return (int)k;
                nodes.push_back(J);
                edges.emplace_back();
                return (int)nodes.size() - 1;
            };
            for (size_t k = 0; k < nodes.size(); ++k) {
                if (level_of[k] >= depth) continue;
                for (auto& J : neighbors(nodes[k], P, S)) {
                    size_t before = nodes.size();
                    int t = index_of(J);
                    if (nodes.size() > before) level_of.push_back(level_of[k] + 1);
                    edges[k].push_back(t);
                }
            }
            json jn = json::array();
            std::string csv = "from,to\n";
            for (size_t k = 0; k < nodes.size(); ++k) {
                jn.push_back({{"depth", level_of[k]}, {"ideal", lattice_to_json(nodes[k].L)}, {"nrd", lattice_to_json(nodes[k].nrd)}});
                for (int t : edges[k]) csv += std::to_string(k) + "," + std::to_string(t) + "\n";
            }
            emit(g, {{"prime", factored_to_string(*F, pf)}, {"depth", depth}, {"order", order_to_json(*O)}, {"nodes", jn}, {"edges", edges}}, csv);
        } else if (*ip) {
            RightIdeal I = ideal_from_json(F, read_json(ideals[0]));
            auto xi = is_principal(I);
            emit(g, {{"principal", bool(xi)}, {"generator", xi ? elt_to_json(*xi) : json(nullptr)}});
        } else if (*iso) {
            RightIdeal I = ideal_from_json(F, read_json(ideals[0])), J = ideal_from_json(F, read_json(ideals[1]));
            require(I.O->A->a == J.O->A->a && I.O->A->b == J.O->A->b, "ideals lie in different algebras");
            J = make_right_ideal(I.O, J.L);
            auto xi = is_isomorphic(I, J);
            emit(g, {{"isomorphic", bool(xi)}, {"xi", xi ? elt_to_json(*xi) : json(nullptr)}});
        } else if (*conj) {
            OrderPtr O = order_from_json(F, read_json(orders[0])), Op = order_from_json(F, read_json(orders[1]));
            require(O->A->a == Op->A->a && O->A->b == Op->A->b, "orders lie in different algebras");
            Op = make_order(O->A, Op->L);
            auto x = is_conjugate(O, Op);
            emit(g, {{"conjugate", bool(x)}, {"element", x ? elt_to_json(*x) : json(nullptr)}});
        } else if (*ci) {
            OrderPtr O = order_from_json(F, read_json(orders[0])), Op = order_from_json(F, read_json(orders[1]));
            require(O->A->a == Op->A->a && O->A->b == Op->A->b, "orders lie in different algebras");
            Op = make_order(O->A, Op->L);
            ZLat I = connecting_ideal(O, Op);
            RightIdeal R = make_right_ideal(O, I);
            json j = ideal_to_json(R);
            j["left_order"] = lattice_to_json(Op->L);
            emit(g, j);
        } else if (*tb) {
            std::vector<int> degrees;
            std::stringstream ss(degrees_s);
            for (std::string t; std::getline(ss, t, ',');) degrees.push_back(std::stoi(t));
            TableOptions opt;
            opt.max_h = max_h;
            auto rows = reproduce_tables(table_fields(g, dir, degrees), opt);
            json j = json::array();
            for (auto& r : rows)
                j.push_back({{"n", r.n}, {"d_F", r.dF.get_str()}, {"D", r.D.get_str()}, {"N", r.N.get_str()}, {"h", r.h}, {"ideals", r.ideals}});
            emit(g, j, table_csv(rows));
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
