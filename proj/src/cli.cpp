#include "cr3/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "cr3/bounds.hpp"
#include "cr3/cyclotomic.hpp"
#include "cr3/diophantine.hpp"
#include "cr3/ledger.hpp"
#include "cr3/totient.hpp"

namespace cr3::cli {

using nlohmann::json;

namespace {

json to_json(const FactoredInteger& v) {
    json f = json::object();
    for (auto [p, e] : v.factors()) f[std::to_string(p)] = e;
    return {{"factored", f}, {"decimal", v.decimal()}};
}

json to_json(const LedgerValue& v) { return v ? to_json(*v) : json(nullptr); }

struct Painter {
    bool on;
    std::string operator()(std::string_view s, const char* code) const {
        if (!on) return std::string(s);
        return std::string("\x1b[") + code + "m" + std::string(s) + "\x1b[0m";
    }
};

Tristate parse_tristate(const std::string& s) {
    if (s == "yes") return Tristate::Yes;
    if (s == "no") return Tristate::No;
    if (s == "unknown") return Tristate::Unknown;
    throw UsageError("flag value must be yes, no or unknown, got '" + s + "'");
}

FieldFlags parse_flags(const std::string& spec) {
    FieldFlags f;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("flags look like minus1=yes,sqrt5=no");
        auto key = item.substr(0, eq);
        auto val = parse_tristate(item.substr(eq + 1));
        if (key == "minus1") f.minus1_sum_two_squares = val;
        else if (key == "sqrt5") f.contains_sqrt5 = val;
        else if (key == "xi4") f.xi4_in_K = val;
        else throw UsageError("unknown flag '" + key + "' (minus1, sqrt5, xi4)");
    }
    return f;
}

void emit(std::ostream& out, bool as_json, const FactoredInteger& v) {
    if (as_json) out << to_json(v).dump() << "\n";
    else out << v.decimal() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color) {
    CLI::App app{"Exact bounds for finite subgroups of GL_n / PGL_n over number fields", "cr3bound"};
    app.require_subcommand(1);
    std::string format = "text";
    auto add_format = [&](CLI::App* sc) {
        sc->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    };
    std::uint64_t n = 0, d = 0, conductor = 1, p = 0, dmax = 0, B = 0;
    std::optional<std::uint64_t> tmax;
    std::uint64_t emin = 1;
    std::string flags;
    bool all = false;
    std::string file, node_id, out_path;
    std::vector<std::string> overrides;

    auto* mink = app.add_subcommand("minkowski", "Minkowski bound for GL_n(Q)");
    mink->add_option("-n", n, "rank")->required()->check(CLI::PositiveNumber);
    add_format(mink);

    auto* schur = app.add_subcommand("schur", "Schur bound over Q(xi_C)");
    schur->add_option("-n", n, "rank")->required()->check(CLI::PositiveNumber);
    schur->add_option("--conductor", conductor, "cyclotomic conductor C")->check(CLI::PositiveNumber);
    add_format(schur);

    auto* serre = app.add_subcommand("serre", "Serre bound for PGL_n over Q(xi_C)");
    serre->add_option("-n", n, "n (rank n-1 group)")->required()->check(CLI::Range(2, 1000));
    serre->add_option("--conductor", conductor, "cyclotomic conductor C")->check(CLI::PositiveNumber);
    add_format(serre);

    auto* rough = app.add_subcommand("rough", "degree-only rough bound B_{n,d}");
    rough->add_option("-n", n, "rank")->required()->check(CLI::PositiveNumber);
    rough->add_option("-d", d, "field degree")->required()->check(CLI::PositiveNumber);
    add_format(rough);

    auto* tab = app.add_subcommand("table", "rows d = 1..dmax of B_{n,d}");
    tab->add_option("-n", n, "rank")->required()->check(CLI::PositiveNumber);
    tab->add_option("--dmax", dmax, "largest degree")->required()->check(CLI::PositiveNumber);
    add_format(tab);

    auto* invs = app.add_subcommand("invariants", "cyclotomic invariants t, m, e of Q(xi_N) at p (JSON)");
    invs->add_option("--conductor", conductor, "conductor N")->required()->check(CLI::PositiveNumber);
    invs->add_option("--prime", p, "prime p")->required();
    add_format(invs);

    auto* invphi = app.add_subcommand("invphi", "max{n : phi(n) <= B}");
    invphi->add_option("-B", B, "bound")->required()->check(CLI::PositiveNumber);
    invphi->add_flag("--all", all, "list every n with phi(n) <= B");
    add_format(invphi);

    auto* solve = app.add_subcommand("solve-eq", "solutions of p^(m-1)(p-1)e = d t");
    solve->add_option("-p", p, "odd prime")->required();
    solve->add_option("-d", d, "field degree")->required()->check(CLI::PositiveNumber);
    solve->add_option("-n", n, "rank for the Schur maximum (default 3)")->check(CLI::PositiveNumber);
    solve->add_option("--tmax", tmax, "largest t (default: n)");
    solve->add_option("--emin", emin, "smallest e (default 1)")->check(CLI::PositiveNumber);
    add_format(solve);

    auto* pgl2 = app.add_subcommand("pgl2", "finite subgroups of PGL_2(K)");
    auto* pgl2_d = pgl2->add_option("-d", d, "field degree")->check(CLI::PositiveNumber);
    auto* pgl2_c = pgl2->add_option("--conductor", conductor, "exact field Q(xi_C)")->check(CLI::PositiveNumber);
    pgl2_d->excludes(pgl2_c);
    pgl2->add_option("--flags", flags, "minus1=yes|no|unknown,sqrt5=...,xi4=...");
    add_format(pgl2);

    auto* ledger = app.add_subcommand("ledger", "the bound-composition ledger");
    ledger->require_subcommand(1);
    ledger->add_option("--file", file, "ledger JSON (default: shipped)");
    auto* lverify = ledger->add_subcommand("verify", "compare computed and declared values");
    lverify->add_option("--file", file, "ledger JSON (default: shipped)");
    add_format(lverify);
    auto* leval = ledger->add_subcommand("eval", "value of one node");
    leval->add_option("id", node_id)->required();
    leval->add_option("--file", file, "ledger JSON (default: shipped)");
    leval->add_option("--override", overrides, "ID=VALUE, VALUE 0 removes the case");
    add_format(leval);
    auto* lexplain = ledger->add_subcommand("explain", "derivation tree of one node");
    lexplain->add_option("id", node_id)->required();
    lexplain->add_option("--file", file, "ledger JSON (default: shipped)");
    lexplain->add_option("--override", overrides, "ID=VALUE, VALUE 0 removes the case");
    auto* lfinal = ledger->add_subcommand("final", "value of the root");
    lfinal->add_option("--file", file, "ledger JSON (default: shipped)");
    lfinal->add_option("--override", overrides, "ID=VALUE, VALUE 0 removes the case");
    add_format(lfinal);
    auto* lexport = ledger->add_subcommand("export", "write the shipped ledger");
    lexport->add_option("-o,--output", out_path, "destination (default: stdout)");

    n = 0;
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    const bool as_json = format == "json";
    Painter paint{color && !as_json};

    try {
        if (mink->parsed()) {
            emit(out, as_json, minkowski_bound(n));
        } else if (schur->parsed()) {
            emit(out, as_json, schur_bound(n, ExactCyclotomic{Conductor(conductor)}));
        } else if (serre->parsed()) {
            emit(out, as_json, serre_bound(n, ExactCyclotomic{Conductor(conductor)}));
        } else if (rough->parsed()) {
            emit(out, as_json, rough_bound(n, d));
        } else if (tab->parsed()) {
            auto rows = table(n, dmax);
            if (as_json) {
                json j = json::array();
                for (const auto& r : rows) {
                    auto v = to_json(r.value);
                    v["d"] = r.d;
                    j.push_back(v);
                }
                out << j.dump() << "\n";
            } else {
                for (const auto& r : rows) out << (r.d < 10 ? " " : "") << r.d << "  " << r.rendered() << "\n";
            }
        } else if (invs->parsed()) {
            auto inv = all_invariants(ExactCyclotomic{Conductor(conductor)}, Prime(p));
            json j = {{"p", inv.p}, {"t", inv.t}, {"m", inv.m}, {"e", inv.e}, {"xi4", inv.xi4},
                      {"degree", Conductor(conductor).degree()}};
            out << j.dump() << "\n";
        } else if (invphi->parsed()) {
            if (all) {
                auto v = invphi_all(B);
                if (as_json) {
                    out << json(v).dump() << "\n";
                } else {
                    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
                    out << "\n";
                }
            } else {
                auto v = invphi_max(B);
                if (as_json) out << json{{"B", B}, {"max", v}}.dump() << "\n";
                else out << v << "\n";
            }
        } else if (solve->parsed()) {
            if (n == 0) n = 3;
            const Prime pp(p);
            SolutionConstraints c;
            c.e_min = emin;
            c.t_max = tmax.value_or(n);
            if (c.t_max == 0) throw UsageError("--tmax must be positive");
            auto sols = solve_standard_equation(pp, d, c);
            auto k = max_schur_exponent(pp, n, d, c);
            json rows = json::array();
            for (const auto& s : sols) rows.push_back({{"m", s.m}, {"e", s.e}, {"t", s.t}});
            if (as_json) {
                out << json{{"p", p}, {"d", d}, {"n", n}, {"t_max", c.t_max}, {"e_min", c.e_min},
                            {"solutions", rows}, {"max_schur_exponent", k}}
                           .dump()
                    << "\n";
            } else {
                for (const auto& r : rows) out << r.dump() << "\n";
                out << "max schur exponent (n=" << n << "): " << k << "\n";
            }
        } else if (pgl2->parsed()) {
            FieldSpec K = ExactCyclotomic{Conductor(1)};
            if (pgl2_c->count()) {
                if (!flags.empty()) throw UsageError("--flags only applies with -d");
                K = ExactCyclotomic{Conductor(conductor)};
            } else if (pgl2_d->count()) {
                K = DegreeOnly{d, flags.empty() ? FieldFlags{} : parse_flags(flags)};
            } else {
                throw UsageError("pgl2 needs -d or --conductor");
            }
            auto r = pgl2_admissible(K);
            if (as_json) {
                json fam = json::array();
                for (const auto& g : r.families) fam.push_back({{"name", g.name()}, {"order", g.order()}});
                out << json{{"families", fam}, {"max_order", to_json(r.max_order)}}.dump() << "\n";
            } else {
                out << "families:";
                for (const auto& g : r.families) out << " " << g.name();
                out << "\nmax order: " << r.max_order.decimal() << "\n";
            }
        } else if (ledger->parsed()) {
            std::optional<Ledger> own;
            if (!file.empty()) {
                std::ifstream in(file);
                if (!in) throw UsageError("cannot open " + file);
                std::stringstream ss;
                ss << in.rdbuf();
                own = Ledger::load(std::string_view(ss.str()));
            }
            const Ledger& L = own ? *own : shipped_ledger();
            Overrides ov;
            for (const auto& o : overrides) ov.insert(parse_override(o));

            if (lverify->parsed()) {
                auto rep = verify_ledger(L);
                auto bad = rep.unexpected_mismatches();
                if (as_json) {
                    json rows = json::array();
                    for (const auto& r : rep.rows) {
                        json j = {{"id", r.id},
                                  {"status", std::string(status_name(r.status))},
                                  {"declared", to_json(r.declared)},
                                  {"computed", to_json(r.computed)},
                                  {"whitelisted", r.whitelisted}};
                        if (!r.remark.empty()) j["remark"] = r.remark;
                        rows.push_back(j);
                    }
                    out << json{{"rows", rows}, {"unexpected_mismatches", bad}, {"ok", bad.empty()}}.dump(1) << "\n";
                } else {
                    std::size_t match = 0, mism = 0, unchecked = 0;
                    for (const auto& r : rep.rows) {
                        std::string st(status_name(r.status));
                        st.resize(9, ' ');
                        if (r.status == Status::Match) { ++match; st = paint(st, "32"); }
                        else if (r.status == Status::Mismatch) { ++mism; st = paint(st, r.whitelisted ? "33" : "31"); }
                        else ++unchecked;
                        out << st << " " << r.id << "  declared " << r.declared.decimal();
                        if (r.status != Status::Unchecked)
                            out << "  computed " << (r.computed ? r.computed->decimal() : "-");
                        if (r.status == Status::Mismatch) {
                            out << "  (" << r.declared.factored() << " vs "
                                << (r.computed ? r.computed->factored() : "-") << ")";
                            if (r.whitelisted) out << " [known discrepancy]";
                        }
                        if (!r.remark.empty()) out << "  # " << r.remark;
                        out << "\n";
                    }
                    out << match << " match, " << mism << " mismatch (" << bad.size() << " unexpected), " << unchecked
                        << " unchecked\n";
                }
                if (!bad.empty()) return 3;
            } else if (leval->parsed() || lfinal->parsed()) {
                Evaluator ev(L, ov);
                std::string id = node_id;
                if (lfinal->parsed()) {
                    if (!L.root()) throw DomainError("ledger has no root");
                    id = *L.root();
                }
                const auto& v = ev.value(id);
                if (as_json) {
                    json j = to_json(v);
                    if (j.is_null()) j = {{"decimal", "0"}};
                    j["id"] = id;
                    out << j.dump() << "\n";
                } else {
                    out << (v ? v->factored() + " = " + v->decimal(true) : "0") << "\n";
                }
            } else if (lexplain->parsed()) {
                out << explain(L, node_id, ov);
            } else if (lexport->parsed()) {
                std::string text = L.to_json().dump(1) + "\n";
                if (out_path.empty()) {
                    out << text;
                } else {
                    std::ofstream o(out_path);
                    if (!o) throw UsageError("cannot write " + out_path);
                    o << text;
                }
            }
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace cr3::cli
