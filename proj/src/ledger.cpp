#include "cr3/ledger.hpp"

#include "cr3/bounds.hpp"
#include "cr3/cyclotomic.hpp"
#include "cr3/diophantine.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace cr3 {

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

const std::vector<std::pair<NodeKind, std::string_view>> kKinds = {
    {NodeKind::Constant, "Constant"},         {NodeKind::Minkowski, "Minkowski"},
    {NodeKind::SchurRough, "SchurRough"},     {NodeKind::SerreQ, "SerreQ"},
    {NodeKind::Pgl2, "Pgl2"},                 {NodeKind::Gl2, "Gl2"},
    {NodeKind::Product, "Product"},           {NodeKind::Max, "Max"},
    {NodeKind::ScaledProduct, "ScaledProduct"}, {NodeKind::AppendixProp, "AppendixProp"},
    {NodeKind::EquationCase, "EquationCase"},
};

NodeKind parse_kind(const std::string& s, const std::string& id) {
    for (auto [k, name] : kKinds)
        if (name == s) return k;
    throw SchemaError(id + ": unknown kind '" + s + "'");
}

bool is_composite(NodeKind k) {
    return k == NodeKind::Product || k == NodeKind::Max || k == NodeKind::ScaledProduct ||
           k == NodeKind::AppendixProp;
}

struct ArgShape {
    std::set<std::string> required, optional;
};

ArgShape arg_shape(NodeKind k) {
    switch (k) {
        case NodeKind::Constant: return {};
        case NodeKind::Minkowski: return {{"n"}, {}};
        case NodeKind::SchurRough: return {{"n", "d"}, {"p"}};
        case NodeKind::SerreQ: return {{"n"}, {"conductor"}};
        case NodeKind::Pgl2: return {{}, {"d", "conductor", "flags"}};
        case NodeKind::Gl2: return {{"d"}, {}};
        case NodeKind::Product:
        case NodeKind::Max: return {};
        case NodeKind::ScaledProduct: return {{"den"}, {"num", "num_basket"}};
        case NodeKind::AppendixProp: return {{"n", "d_max", "by_degree"}, {}};
        case NodeKind::EquationCase:
            return {{"p", "n"},
                    {"d", "e_min", "e_max", "t_min", "t_max", "m_max", "gcd_e_p", "m", "t", "bound", "xi4", "e_p"}};
    }
    return {};
}

bool is_uint(const json& j) {
    return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0);
}

std::uint64_t uarg(const LedgerNode& n, const char* key) {
    const auto& a = n.args;
    if (!a.contains(key) || !is_uint(a[key]))
        throw SchemaError(n.id + ": argument '" + key + "' must be a non-negative integer");
    return a[key].get<std::uint64_t>();
}

std::uint64_t uarg_or(const LedgerNode& n, const char* key, std::uint64_t dflt) {
    return n.args.contains(key) ? uarg(n, key) : dflt;
}

Tristate tristate(const json& j, const std::string& id) {
    if (j.is_boolean()) return j.get<bool>() ? Tristate::Yes : Tristate::No;
    if (j.is_string()) {
        auto s = j.get<std::string>();
        if (s == "yes") return Tristate::Yes;
        if (s == "no") return Tristate::No;
        if (s == "unknown") return Tristate::Unknown;
    }
    throw SchemaError(id + ": flag must be yes/no/unknown");
}

Rational rational_arg(const json& j, const std::string& id) {
    if (!j.is_array() || j.size() != 2 || !is_uint(j[0]) || !is_uint(j[1]))
        throw SchemaError(id + ": rational must be [num, den]");
    return {j[0].get<std::uint64_t>(), j[1].get<std::uint64_t>()};
}

FactoredInteger parse_declared(const json& j, const std::string& id) {
    if (!j.is_object()) throw BadDeclaredValue(id + ": declared must be a prime -> exponent map");
    FactoredInteger::Map m;
    for (auto& [k, v] : j.items()) {
        std::uint64_t p = 0;
        try {
            std::size_t used = 0;
            p = std::stoull(k, &used);
            if (used != k.size()) throw std::invalid_argument(k);
        } catch (const std::exception&) {
            throw BadDeclaredValue(id + ": key '" + k + "' is not an integer");
        }
        if (!is_prime(p)) throw BadDeclaredValue(id + ": key " + k + " is not prime");
        if (!is_uint(v) || v.get<std::uint64_t>() == 0)
            throw BadDeclaredValue(id + ": exponent of " + k + " must be a positive integer");
        m[static_cast<std::uint32_t>(p)] = v.get<std::uint32_t>();
    }
    return FactoredInteger(m);
}

std::string show(const LedgerValue& v, bool grouped = false) {
    return v ? v->decimal(grouped) : "0";
}

std::string show_factored(const LedgerValue& v) { return v ? v->factored() : "0"; }

}  // namespace

std::string_view kind_name(NodeKind k) {
    for (auto [kk, name] : kKinds)
        if (kk == k) return name;
    return "?";
}

std::string_view status_name(Status s) {
    switch (s) {
        case Status::Match: return "Match";
        case Status::Mismatch: return "Mismatch";
        case Status::Unchecked: return "Unchecked";
    }
    return "?";
}

// ---------------------------------------------------------------- loading

Ledger Ledger::load(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("ledger is not valid JSON: ") + e.what());
    }
    return load(doc);
}

Ledger Ledger::load(const json& doc) {
    if (!doc.is_object()) throw SchemaError("ledger must be a JSON object");
    if (!doc.contains("schema_version") || doc["schema_version"] != kSchemaVersion)
        throw SchemaError("unsupported or missing schema_version");
    if (!doc.contains("nodes") || !doc["nodes"].is_array()) throw SchemaError("ledger needs a 'nodes' array");

    static const std::set<std::string> kFields = {"id", "kind", "args", "children", "declared",
                                                  "decimal", "citation", "paper_prints", "note"};
    static const std::set<std::string> kRequired = {"id", "kind", "args", "children", "declared", "decimal", "citation"};

    Ledger l;
    for (const auto& jn : doc["nodes"]) {
        if (!jn.is_object()) throw SchemaError("node must be an object");
        const std::string id = jn.contains("id") && jn["id"].is_string() ? jn["id"].get<std::string>() : "?";
        for (auto& [k, _] : jn.items())
            if (!kFields.count(k)) throw SchemaError(id + ": unknown field '" + k + "'");
        for (const auto& k : kRequired)
            if (!jn.contains(k)) throw SchemaError(id + ": missing field '" + k + "'");
        if (id == "?" || id.empty()) throw SchemaError("node id must be a non-empty string");
        if (l.index_.count(id)) throw SchemaError("duplicate node id '" + id + "'");

        LedgerNode n;
        n.id = id;
        if (!jn["kind"].is_string()) throw SchemaError(id + ": kind must be a string");
        n.kind = parse_kind(jn["kind"].get<std::string>(), id);
        n.args = jn["args"];
        if (!n.args.is_object()) throw SchemaError(id + ": args must be an object");
        auto shape = arg_shape(n.kind);
        for (auto& [k, _] : n.args.items())
            if (!shape.required.count(k) && !shape.optional.count(k))
                throw SchemaError(id + ": unexpected argument '" + k + "'");
        for (const auto& k : shape.required)
            if (!n.args.contains(k)) throw SchemaError(id + ": missing argument '" + k + "'");

        if (!jn["children"].is_array()) throw SchemaError(id + ": children must be an array");
        for (const auto& c : jn["children"]) {
            if (!c.is_string()) throw SchemaError(id + ": child ids must be strings");
            n.children.push_back(c.get<std::string>());
        }
        if (is_composite(n.kind) && n.children.empty()) throw SchemaError(id + ": composite node without children");
        if (!is_composite(n.kind) && !n.children.empty()) throw SchemaError(id + ": leaf kind with children");

        if (!jn["declared"].is_null()) n.declared = parse_declared(jn["declared"], id);
        const auto& dec = jn["decimal"];
        if (n.declared.has_value() != !dec.is_null())
            throw BadDeclaredValue(id + ": declared and decimal must both be present or both null");
        if (n.declared) {
            if (!dec.is_string()) throw BadDeclaredValue(id + ": decimal must be a string");
            if (dec.get<std::string>() != n.declared->decimal())
                throw BadDeclaredValue(id + ": decimal " + dec.get<std::string>() + " does not equal " +
                                       n.declared->factored() + " = " + n.declared->decimal());
        }
        if (n.kind == NodeKind::Constant && !n.declared) throw SchemaError(id + ": Constant needs a declared value");

        if (!jn["citation"].is_string()) throw SchemaError(id + ": citation must be a string");
        n.citation = jn["citation"].get<std::string>();
        if (jn.contains("paper_prints")) {
            if (!jn["paper_prints"].is_string()) throw SchemaError(id + ": paper_prints must be a string");
            n.paper_prints = jn["paper_prints"].get<std::string>();
        }
        if (jn.contains("note")) {
            if (!jn["note"].is_string()) throw SchemaError(id + ": note must be a string");
            n.note = jn["note"].get<std::string>();
        }
        l.index_[id] = l.nodes_.size();
        l.nodes_.push_back(std::move(n));
    }

    for (const auto& n : l.nodes_)
        for (const auto& c : n.children)
            if (!l.index_.count(c)) throw DanglingChild(n.id + " -> " + c);

    for (const auto& n : l.nodes_) {
        if (n.kind != NodeKind::AppendixProp) continue;
        const auto& by = n.args["by_degree"];
        if (!by.is_object()) throw SchemaError(n.id + ": by_degree must be an object");
        const auto dmax = uarg(n, "d_max");
        std::set<std::string> used;
        for (std::uint64_t d = 1; d <= dmax; ++d) {
            auto key = std::to_string(d);
            if (!by.contains(key) || !by[key].is_string())
                throw SchemaError(n.id + ": no node for degree " + key);
            used.insert(by[key].get<std::string>());
        }
        if (by.size() != dmax) throw SchemaError(n.id + ": by_degree has degrees beyond d_max");
        if (used != std::set<std::string>(n.children.begin(), n.children.end()))
            throw SchemaError(n.id + ": by_degree and children disagree");
    }

    // cycle check, iterative three-colour DFS
    std::vector<int> colour(l.nodes_.size(), 0);
    for (std::size_t s = 0; s < l.nodes_.size(); ++s) {
        if (colour[s]) continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
        colour[s] = 1;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            const auto& ch = l.nodes_[v].children;
            if (i == ch.size()) {
                colour[v] = 2;
                stack.pop_back();
                continue;
            }
            auto w = l.index_.at(ch[i++]);
            if (colour[w] == 1) throw CycleError("cycle through " + l.nodes_[w].id);
            if (colour[w] == 0) {
                colour[w] = 1;
                stack.push_back({w, 0});
            }
        }
    }

    if (doc.contains("root")) {
        if (!doc["root"].is_string()) throw SchemaError("root must be a string");
        l.root_ = doc["root"].get<std::string>();
        if (!l.index_.count(*l.root_)) throw DanglingChild("root -> " + *l.root_);
    }
    return l;
}

const LedgerNode& Ledger::node(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw DomainError("no ledger node '" + id + "'");
    return nodes_[it->second];
}

json Ledger::to_json() const {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    if (root_) doc["root"] = *root_;
    doc["nodes"] = json::array();
    for (const auto& n : nodes_) {
        json j;
        j["id"] = n.id;
        j["kind"] = std::string(kind_name(n.kind));
        j["args"] = n.args;
        j["children"] = n.children;
        if (n.declared) {
            json d = json::object();
            for (auto [p, e] : n.declared->factors()) d[std::to_string(p)] = e;
            j["declared"] = d;
            j["decimal"] = n.declared->decimal();
        } else {
            j["declared"] = nullptr;
            j["decimal"] = nullptr;
        }
        j["citation"] = n.citation;
        if (n.paper_prints) j["paper_prints"] = *n.paper_prints;
        if (n.note) j["note"] = *n.note;
        doc["nodes"].push_back(std::move(j));
    }
    return doc;
}

Ledger load_ledger(const json& doc) { return Ledger::load(doc); }
Ledger load_ledger(std::string_view text) { return Ledger::load(text); }

const Ledger& shipped_ledger() {
    static const Ledger l = Ledger::load(shipped_ledger_text());
    return l;
}

std::pair<std::string, LedgerValue> parse_override(std::string_view spec) {
    auto eq = spec.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == spec.size())
        throw UsageError("override must look like ID=VALUE");
    std::string id(spec.substr(0, eq));
    auto val = spec.substr(eq + 1);
    if (val == "0") return {id, std::nullopt};
    return {id, FactoredInteger::parse(val)};
}

// ---------------------------------------------------------------- evaluation

namespace {

struct CaseResult {
    std::uint32_t p;
    std::uint64_t k;
    std::string detail;
};

CaseResult eval_case(const LedgerNode& n) {
    const Prime p = static_cast<std::uint64_t>(uarg(n, "p"));
    const auto nn = uarg(n, "n");
    const auto& a = n.args;
    const std::string bound = a.contains("bound") ? a["bound"].get<std::string>() : "schur";
    if (bound != "schur" && bound != "serre") throw SchemaError(n.id + ": bound must be schur or serre");

    if (a.contains("d")) {
        if (bound != "schur") throw SchemaError(n.id + ": equation search is Schur-only");
        const auto d = uarg(n, "d");
        SolutionConstraints c;
        c.e_min = uarg_or(n, "e_min", 1);
        c.e_max = uarg_or(n, "e_max", 0);
        c.t_min = uarg_or(n, "t_min", 1);
        c.t_max = uarg_or(n, "t_max", nn);
        c.m_max = uarg_or(n, "m_max", 0);
        if (a.contains("gcd_e_p")) c.t_min = std::max(c.t_min, tq_lower_from_gcd(p, d, uarg(n, "gcd_e_p")));
        auto r = max_schur(p, nn, d, c);
        std::ostringstream os;
        os << "t>=" << c.t_min << ", e>=" << c.e_min;
        if (c.e_max) os << ", e<=" << c.e_max;
        os << "; (m,e,t) in {";
        for (std::size_t i = 0; i < r.solutions.size(); ++i)
            os << (i ? "," : "") << "(" << r.solutions[i].m << "," << r.solutions[i].e << "," << r.solutions[i].t << ")";
        os << "}";
        return {p, r.exponent, os.str()};
    }

    CycloInvariants inv{p, 1, 1, 1, false};
    std::string how;
    if (a.contains("xi4")) {
        if (!a["xi4"].is_boolean()) throw SchemaError(n.id + ": xi4 must be a boolean");
        inv.xi4 = a["xi4"].get<bool>();
    }
    if (a.contains("e_p")) {
        if (p != 2 || !a.contains("xi4")) throw SchemaError(n.id + ": e_p form is for p=2 with xi4");
        inv.m = m2_upper_from_ep(uarg(n, "e_p"), inv.xi4);
        if (inv.m < 2) throw DomainError(n.id + ": m_2 < 2 is impossible");
        inv.t = inv.xi4 ? 1 : 2;
        how = "m2<=" + std::to_string(inv.m) + " from e_p=" + std::to_string(uarg(n, "e_p"));
    } else if (a.contains("m")) {
        inv.m = uarg(n, "m");
        if (a.contains("t")) inv.t = uarg(n, "t");
        else if (p == 2) inv.t = inv.xi4 ? 1 : 2;
        else throw SchemaError(n.id + ": odd p needs t");
        if (p == 2 && inv.m < 2) throw DomainError(n.id + ": m_2 < 2 is impossible");
        how = "m=" + std::to_string(inv.m) + ", t=" + std::to_string(inv.t);
    } else {
        throw SchemaError(n.id + ": EquationCase needs d, m or e_p");
    }
    if (p == 2) how += inv.xi4 ? ", xi4 in K" : ", xi4 not in K";
    auto k = bound == "serre" ? serre_exponent(nn, p, inv) : schur_exponent(nn, p, inv);
    return {p, k, bound + ": " + how};
}

FieldSpec pgl2_field(const LedgerNode& n) {
    const auto& a = n.args;
    if (a.contains("conductor") == a.contains("d")) throw SchemaError(n.id + ": Pgl2 needs exactly one of d, conductor");
    if (a.contains("conductor")) return ExactCyclotomic{Conductor(uarg(n, "conductor"))};
    DegreeOnly K{uarg(n, "d")};
    if (a.contains("flags")) {
        const auto& f = a["flags"];
        if (!f.is_object()) throw SchemaError(n.id + ": flags must be an object");
        for (auto& [k, v] : f.items()) {
            if (k == "minus1_sum_two_squares") K.flags.minus1_sum_two_squares = tristate(v, n.id);
            else if (k == "contains_sqrt5") K.flags.contains_sqrt5 = tristate(v, n.id);
            else if (k == "xi4_in_K") K.flags.xi4_in_K = tristate(v, n.id);
            else throw SchemaError(n.id + ": unknown flag '" + k + "'");
        }
    }
    return K;
}

}  // namespace

Evaluator::Evaluator(const Ledger& l, Overrides ov) : ledger_(l), overrides_(std::move(ov)) {
    for (const auto& [id, _] : overrides_)
        if (!ledger_.contains(id)) throw DomainError("override names unknown node '" + id + "'");
}

const LedgerValue& Evaluator::value(const std::string& id) {
    if (auto it = memo_.find(id); it != memo_.end()) return it->second;
    const auto& n = ledger_.node(id);
    LedgerValue v;
    if (auto o = overrides_.find(id); o != overrides_.end()) v = o->second;
    else v = compute(n);
    return memo_.emplace(id, std::move(v)).first->second;
}

std::string Evaluator::detail(const std::string& id) {
    const auto& n = ledger_.node(id);
    if (overrides_.count(id)) return "overridden";
    if (n.kind == NodeKind::EquationCase) return eval_case(n).detail;
    if (n.kind == NodeKind::ScaledProduct) {
        const auto& a = n.args;
        std::uint64_t num = a.contains("num") ? uarg(n, "num") : 0;
        if (a.contains("num_basket"))
            num = max_basket_points(rational_arg(a["num_basket"]["budget"], n.id),
                                    rational_arg(a["num_basket"]["per_point"], n.id));
        return "scale " + std::to_string(num) + "/" + std::to_string(uarg(n, "den"));
    }
    return {};
}

LedgerValue Evaluator::compute(const LedgerNode& n) {
    switch (n.kind) {
        case NodeKind::Constant: return n.declared;
        case NodeKind::Minkowski: return minkowski_bound(uarg(n, "n"));
        case NodeKind::SchurRough: {
            const auto nn = uarg(n, "n"), d = uarg(n, "d");
            if (n.args.contains("p")) {
                const Prime p = uarg(n, "p");
                return FactoredInteger::prime_power(p, rough_exponent(nn, d, p));
            }
            return rough_bound(nn, d);
        }
        case NodeKind::SerreQ:
            return serre_bound(uarg(n, "n"), ExactCyclotomic{Conductor(uarg_or(n, "conductor", 1))});
        case NodeKind::Pgl2: return pgl2_max_order(pgl2_field(n));
        case NodeKind::Gl2: return gl2_max_order(uarg(n, "d"));
        case NodeKind::EquationCase: {
            auto r = eval_case(n);
            return FactoredInteger::prime_power(r.p, static_cast<std::uint32_t>(r.k));
        }
        case NodeKind::Product:
        case NodeKind::ScaledProduct: {
            FactoredInteger acc;
            for (const auto& c : n.children) {
                const auto& v = value(c);
                if (!v) return std::nullopt;
                acc = acc * *v;
            }
            if (n.kind == NodeKind::Product) return acc;
            const auto& a = n.args;
            if (a.contains("num") == a.contains("num_basket"))
                throw SchemaError(n.id + ": ScaledProduct needs exactly one of num, num_basket");
            std::uint64_t num;
            if (a.contains("num")) {
                num = uarg(n, "num");
            } else {
                const auto& b = a["num_basket"];
                if (!b.is_object() || !b.contains("budget") || !b.contains("per_point"))
                    throw SchemaError(n.id + ": num_basket needs budget and per_point");
                num = max_basket_points(rational_arg(b["budget"], n.id), rational_arg(b["per_point"], n.id));
            }
            if (num == 0) return std::nullopt;
            const auto den = uarg(n, "den");
            if (den == 0) throw SchemaError(n.id + ": den must be positive");
            try {
                return fi_div_exact(acc * FactoredInteger::from_u64(num), FactoredInteger::from_u64(den));
            } catch (const NonDivisible&) {
                throw ScaleNotExact(n.id + ": " + std::to_string(num) + "*" + acc.decimal() + " is not divisible by " +
                                    std::to_string(den));
            }
        }
        case NodeKind::Max:
        case NodeKind::AppendixProp: {
            LedgerValue best;
            for (const auto& c : n.children) {
                const auto& v = value(c);
                if (v && (!best || fi_cmp(*v, *best) > 0)) best = v;
            }
            return best;
        }
    }
    throw InternalInconsistency("unhandled node kind");
}

FactoredInteger eval_node(const Ledger& l, const std::string& id, const Overrides& ov) {
    Evaluator ev(l, ov);
    const auto& v = ev.value(id);
    if (!v) throw DomainError(id + " evaluates to 0 under the given overrides");
    return *v;
}

FactoredInteger final_bound(const Ledger& l, const Overrides& ov) {
    if (!l.root()) throw DomainError("ledger has no root");
    return eval_node(l, *l.root(), ov);
}

// ---------------------------------------------------------------- verification

const std::set<std::string>& mismatch_whitelist() {
    static const std::set<std::string> w = {"lemma-degree-4-input", "gq-mfs-typo-note"};
    return w;
}

std::vector<std::string> VerificationReport::mismatches() const {
    std::vector<std::string> out;
    for (const auto& r : rows)
        if (r.status == Status::Mismatch) out.push_back(r.id);
    return out;
}

std::vector<std::string> VerificationReport::unexpected_mismatches() const {
    std::vector<std::string> out;
    for (const auto& r : rows)
        if (r.status == Status::Mismatch && !r.whitelisted) out.push_back(r.id);
    return out;
}

VerificationReport verify_ledger(const Ledger& l) {
    VerificationReport rep;
    Evaluator ev(l);
    for (const auto& n : l.nodes()) {
        if (!n.declared) continue;
        VerificationRow row{n.id, *n.declared, std::nullopt, Status::Unchecked, false, {}};
        if (n.kind != NodeKind::Constant) {
            try {
                row.computed = ev.value(n.id);
                row.status = row.computed == n.declared ? Status::Match : Status::Mismatch;
            } catch (const Error& e) {
                row.status = Status::Mismatch;
                row.remark = e.what();
            }
        } else {
            row.computed = n.declared;
        }
        row.whitelisted = row.status == Status::Mismatch && mismatch_whitelist().count(n.id);
        if (n.paper_prints && *n.paper_prints != n.declared->decimal()) {
            if (!row.remark.empty()) row.remark += "; ";
            row.remark += "printed as " + *n.paper_prints;
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

// ---------------------------------------------------------------- explain

std::string explain(const Ledger& l, const std::string& id, const Overrides& ov) {
    Evaluator ev(l, ov);
    std::ostringstream os;
    std::set<std::string> shown;
    std::function<void(const std::string&, int)> walk = [&](const std::string& nid, int depth) {
        const auto& n = l.node(nid);
        const auto& v = ev.value(nid);
        os << std::string(2 * depth, ' ') << n.id << " (" << kind_name(n.kind) << ") = " << show_factored(v);
        if (show_factored(v) != show(v, true)) os << " = " << show(v, true);
        bool seen = !shown.insert(nid).second;
        if (seen && !n.children.empty()) {
            os << "  [see above]\n";
            return;
        }
        if (auto d = ev.detail(nid); !d.empty()) os << "  {" << d << "}";
        if (n.declared && v != n.declared) os << "  !! declared " << n.declared->decimal(true);
        if (n.paper_prints) os << "  (printed as " << *n.paper_prints << ")";
        if (!n.citation.empty()) os << "  [" << n.citation << "]";
        os << "\n";
        for (const auto& c : n.children) walk(c, depth + 1);
    };
    walk(id, 0);
    return os.str();
}

}  // namespace cr3
