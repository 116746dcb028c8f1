#include <doctest.h>

#include "cr3/cli.hpp"
#include "oracles.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <sstream>

using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cr3::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream ss(s);
    for (std::string w; ss >> w;) v.push_back(w);
    return v;
}

// golden name -> command line; CR3_UPDATE_GOLDEN=1 rewrites the files
const std::vector<std::pair<std::string, std::string>> kGolden = {
    {"minkowski_12", "minkowski -n 12"},
    {"minkowski_4_json", "minkowski -n 4 --format json"},
    {"schur_3", "schur -n 3"},
    {"schur_3_c4", "schur -n 3 --conductor 4"},
    {"serre_5", "serre -n 5"},
    {"serre_4_json", "serre -n 4 --format json"},
    {"rough_3_12", "rough -n 3 -d 12"},
    {"table_3_15", "table -n 3 --dmax 15"},
    {"table_4_7", "table -n 4 --dmax 7"},
    {"table_4_2_json", "table -n 4 --dmax 2 --format json"},
    {"invariants_12_3", "invariants --conductor 12 --prime 3"},
    {"invariants_1_2", "invariants --conductor 1 --prime 2"},
    {"invphi_48", "invphi -B 48"},
    {"invphi_2_all", "invphi -B 2 --all"},
    {"invphi_12_json", "invphi -B 12 --format json"},
    {"solve_13_12", "solve-eq -p 13 -d 12 --emin 3"},
    {"solve_7_12", "solve-eq -p 7 -d 12 --emin 3"},
    {"solve_7_12_json", "solve-eq -p 7 -d 12 --emin 3 --format json"},
    {"pgl2_q", "pgl2 --conductor 1"},
    {"pgl2_d24", "pgl2 -d 24"},
    {"pgl2_d2_flags", "pgl2 -d 2 --flags sqrt5=no"},
    {"pgl2_c5_json", "pgl2 --conductor 5 --format json"},
    {"ledger_final", "ledger final"},
    {"ledger_final_g10", "ledger final --override g10=0"},
    {"ledger_final_json", "ledger final --format json"},
    {"ledger_eval_sch4", "ledger eval appendix-prop-sch4-7"},
    {"ledger_explain_rho1", "ledger explain prop-gorenstein-rho1"},
    {"ledger_explain_leaf", "ledger explain idx-2"},
    {"ledger_explain_nongor", "ledger explain prop-non-gorenstein"},
    {"ledger_verify", "ledger verify"},
};

std::string golden_path(const std::string& name) { return std::string(CR3_GOLDEN_DIR) + "/cli/" + name + ".txt"; }

}  // namespace

TEST_CASE("golden output for every subcommand") {
    const bool update = std::getenv("CR3_UPDATE_GOLDEN") != nullptr;
    for (const auto& [name, cmd] : kGolden) {
        INFO(cmd);
        auto r = cli(split(cmd));
        CHECK(r.code == 0);
        CHECK(r.err.empty());
        if (update) {
            std::filesystem::create_directories(std::string(CR3_GOLDEN_DIR) + "/cli");
            std::ofstream(golden_path(name), std::ios::binary) << r.out;
            continue;
        }
        REQUIRE(std::filesystem::exists(golden_path(name)));
        CHECK(r.out == oracle::slurp(golden_path(name)));
    }
}

TEST_CASE("headline outputs") {
    CHECK(cli({"minkowski", "-n", "12"}).out == "24103053950976000\n");
    CHECK(cli({"serre", "-n", "3"}).out == "10080\n");
    auto t = oracle::lines(cli({"table", "-n", "3", "--dmax", "15"}).out);
    CHECK(t.size() == 15);
    auto g = oracle::lines(oracle::slurp(std::string(CR3_GOLDEN_DIR) + "/table1.txt"));
    for (std::size_t i = 0; i < t.size() && i < g.size(); ++i) CHECK(t[i].substr(t[i].find("  ") + 2) == g[i].substr(g[i].find('\t') + 1));
    auto f = cli({"ledger", "final"}).out;
    CHECK(f.rfind("2^22·3^8·5^3·7^2·11·13 = ", 0) == 0);
}

TEST_CASE("exit codes") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"minkowski"}).code == 2);
    CHECK(cli({"minkowski", "-n", "x"}).code == 2);
    CHECK(cli({"minkowski", "-n", "3", "--format", "xml"}).code == 2);
    CHECK(cli({"pgl2"}).code == 2);
    CHECK(cli({"pgl2", "-d", "2", "--flags", "sqrt5=maybe"}).code == 2);
    CHECK(cli({"ledger", "final", "--override", "g10"}).code == 2);
    CHECK(cli({"ledger", "verify", "--file", "/nonexistent/ledger.json"}).code == 2);

    auto bad_prime = cli({"invariants", "--conductor", "5", "--prime", "4"});
    CHECK(bad_prime.code == 1);
    CHECK(bad_prime.err.find("not a prime") != std::string::npos);
    CHECK(cli({"solve-eq", "-p", "2", "-d", "4"}).code == 1);
    CHECK(cli({"ledger", "eval", "no-such-node"}).code == 1);
    CHECK(cli({"ledger", "final", "--override", "nope=3"}).code == 1);

    CHECK(cli({"ledger", "verify"}).code == 0);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("verify exits 3 on a new mismatch, export round trip") {
    auto dir = std::filesystem::temp_directory_path() / "cr3bound-test";
    std::filesystem::create_directories(dir);
    auto path = (dir / "ledger.json").string();
    REQUIRE(cli({"ledger", "export", "-o", path}).code == 0);
    CHECK(cli({"ledger", "verify", "--file", path}).code == 0);
    CHECK(cli({"ledger", "final", "--file", path}).out == cli({"ledger", "final"}).out);
    CHECK(cli({"ledger", "export"}).out == oracle::slurp(path));

    auto j = json::parse(oracle::slurp(path));
    for (auto& n : j["nodes"])
        if (n["id"] == "lemma-1.2.7") {
            n["declared"] = json::object({{"2", 3}});
            n["decimal"] = "8";
        }
    std::ofstream(path) << j.dump();
    auto r = cli({"ledger", "verify", "--file", path});
    CHECK(r.code == 3);
    CHECK(r.out.find("1 unexpected") != std::string::npos);
    auto rj = cli({"ledger", "verify", "--file", path, "--format", "json"});
    CHECK(rj.code == 3);
    CHECK(json::parse(rj.out)["unexpected_mismatches"] == json::array({"lemma-1.2.7"}));

    std::ofstream(path) << "{";
    CHECK(cli({"ledger", "verify", "--file", path}).code == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("JSON output round-trips") {
    for (const auto& [name, cmd] : kGolden) {
        auto args = split(cmd);
        if (std::find(args.begin(), args.end(), "json") == args.end() && args[0] != "invariants") continue;
        INFO(cmd);
        auto out = cli(args).out;
        REQUIRE(!out.empty());
        auto j = json::parse(out);
        CHECK(j.dump() + "\n" == out);
        CHECK(json::parse(j.dump()) == j);
    }
    auto v = cli({"ledger", "verify", "--format", "json"}).out;
    auto j = json::parse(v);
    CHECK(j.dump(1) + "\n" == v);
    CHECK(j["ok"] == true);
    CHECK(cli({"minkowski", "-n", "12", "--format", "json"}).out ==
          "{\"decimal\":\"24103053950976000\",\"factored\":{\"11\":1,\"13\":1,\"2\":22,\"3\":8,\"5\":3,\"7\":2}}\n");
}

TEST_CASE("no color unless asked") {
    std::ostringstream out, err;
    cr3::cli::run({"ledger", "verify"}, out, err, true);
    CHECK(out.str().find("\x1b[") != std::string::npos);
    CHECK(cli({"ledger", "verify"}).out.find("\x1b[") == std::string::npos);
}
