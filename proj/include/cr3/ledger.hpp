#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "cr3/exactnum.hpp"

namespace cr3 {

enum class NodeKind {
    Constant,
    Minkowski,
    SchurRough,
    SerreQ,
    Pgl2,
    Gl2,
    Product,
    Max,
    ScaledProduct,
    AppendixProp,
    EquationCase,
};

std::string_view kind_name(NodeKind k);

struct LedgerNode {
    std::string id;
    NodeKind kind;
    nlohmann::json args;
    std::vector<std::string> children;
    std::optional<FactoredInteger> declared;
    std::string citation;
    std::optional<std::string> paper_prints;
    std::optional<std::string> note;
};

class Ledger {
public:
    static Ledger load(const nlohmann::json& doc);
    static Ledger load(std::string_view text);

    const std::vector<LedgerNode>& nodes() const { return nodes_; }
    const LedgerNode& node(const std::string& id) const;
    bool contains(const std::string& id) const { return index_.count(id) != 0; }
    const std::optional<std::string>& root() const { return root_; }

    nlohmann::json to_json() const;

private:
    std::vector<LedgerNode> nodes_;
    std::unordered_map<std::string, std::size_t> index_;
    std::optional<std::string> root_;
};

Ledger load_ledger(const nlohmann::json& doc);
Ledger load_ledger(std::string_view text);

// the shipped ledger, compiled into the library
std::string_view shipped_ledger_text();
const Ledger& shipped_ledger();

// node value; nullopt stands for 0 (a case removed by an override)
using LedgerValue = std::optional<FactoredInteger>;
using Overrides = std::map<std::string, LedgerValue>;

// "g10=0", "g10=2^5*3", "g10=735746457600"
std::pair<std::string, LedgerValue> parse_override(std::string_view spec);

class Evaluator {
public:
    explicit Evaluator(const Ledger& l, Overrides ov = {});
    const LedgerValue& value(const std::string& id);
    // extra text for EquationCase nodes: the solutions that were maximized over
    std::string detail(const std::string& id);

private:
    LedgerValue compute(const LedgerNode& n);

    const Ledger& ledger_;
    Overrides overrides_;
    std::unordered_map<std::string, LedgerValue> memo_;
};

FactoredInteger eval_node(const Ledger& l, const std::string& id, const Overrides& ov = {});
FactoredInteger final_bound(const Ledger& l, const Overrides& ov = {});

enum class Status { Match, Mismatch, Unchecked };
std::string_view status_name(Status s);

struct VerificationRow {
    std::string id;
    FactoredInteger declared;
    LedgerValue computed;
    Status status;
    bool whitelisted = false;
    std::string remark;  // evaluation error or paper_prints note
};

struct VerificationReport {
    std::vector<VerificationRow> rows;
    std::vector<std::string> unexpected_mismatches() const;
    std::vector<std::string> mismatches() const;
    bool ok() const { return unexpected_mismatches().empty(); }
};

const std::set<std::string>& mismatch_whitelist();
VerificationReport verify_ledger(const Ledger& l);

std::string explain(const Ledger& l, const std::string& id, const Overrides& ov = {});

}  // namespace cr3
