#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "traverse/cli_app.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
    int status = 0;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int status = traverse::run_cli(args, out, err);
    return {status, out.str(), err.str()};
}

std::string data(const std::string& name) {
    return std::string(TRAVERSE_DATA_DIR) + "/" + name;
}

fs::path temp_dir() {
    const auto dir = fs::temp_directory_path() / "traverse_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::set<std::string> lines_of(const std::string& text) {
    std::set<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.insert(line);
    return out;
}

void write_temp(const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    REQUIRE(f.good());
    f << text;
}

}  // namespace

TEST_CASE("transversals lists the six minimal transversals") {
    const auto r = cli({"transversals", data("fig2.hg")});
    CHECK(r.status == 0);
    CHECK(lines_of(r.out) == std::set<std::string>{"v1 v5", "v1 v6", "v2 v3 v6", "v2 v5",
                                                   "v3 v4 v6", "v4 v5"});
    const auto oracle = cli({"transversals", data("fig2.hg"), "--oracle"});
    CHECK(oracle.status == 0);
    CHECK(oracle.out == r.out);
}

TEST_CASE("mine accepts percent, decimal and rational thresholds") {
    const auto pct = cli({"mine", data("d1.txt"), "--minfr", "20"});
    const auto dec = cli({"mine", data("d1.txt"), "--minfr", "0.2"});
    const auto rat = cli({"mine", data("d1.txt"), "--minfr", "1/5"});
    CHECK(pct.status == 0);
    CHECK(pct.out == dec.out);
    CHECK(pct.out == rat.out);
    CHECK(pct.out.find("W1 W2 W3 | SP1 SP2 SP3 | 3/8") != std::string::npos);
    CHECK(pct.out.find("W9 | SP7 SP8 | 1/4") != std::string::npos);
}

TEST_CASE("cluster output feeds strategies") {
    const auto dir = temp_dir();
    const auto communities_file = dir / "clusters.txt";
    const auto r = cli({"cluster", data("d1.txt"), "--minfr", "20", "--m", "1", "--output",
                        communities_file.string()});
    CHECK(r.status == 0);

    const auto s = cli({"strategies", communities_file.string()});
    CHECK(s.status == 0);
    CHECK(!s.out.empty());
    // every line is a set of super-peer ids from d1
    for (const auto& line : lines_of(s.out)) CHECK(line.find("SP") == 0);
}

TEST_CASE("communities accepts both datasets and topologies") {
    const auto from_dataset = cli({"communities", data("d2.txt"), "--minfr", "20", "--m", "1"});
    CHECK(from_dataset.status == 0);
    CHECK(from_dataset.out.find(" : ") != std::string::npos);

    const auto from_topology =
        cli({"communities", data("topology10.json"), "--minfr", "20", "--m", "1"});
    CHECK(from_topology.status == 0);
    CHECK(from_topology.out.find(" : ") != std::string::npos);
}

TEST_CASE("strategies of the shipped five communities") {
    const auto r = cli({"strategies", data("communities_d2.txt")});
    CHECK(r.status == 0);
    const auto got = lines_of(r.out);
    CHECK(got.count("SP1 SP2 SP6") == 1);
    CHECK(got.count("SP1 SP6 SP8") == 1);
}

TEST_CASE("route-baseline emits a structured record") {
    const auto r = cli({"route-baseline", data("topology10.json"), "--query", "W21", "--source",
                        "P01", "--similarity", "exact"});
    CHECK(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("source") == "P01");
    CHECK(doc.at("messages").get<long long>() >= 1);
    CHECK(doc.at("answers").is_array());
}

TEST_CASE("route-traverse with explicit communities matches the library trace") {
    const auto r = cli({"route-traverse", data("topology10.json"), "--query", "W21", "--source",
                        "P01", "--communities", data("communities_d2.txt"), "--similarity",
                        "exact"});
    CHECK(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("messages").get<long long>() == 3);
    CHECK(doc.at("hops").get<int>() == 2);
    REQUIRE(doc.at("answers").size() == 1);
    CHECK(doc.at("answers")[0].at("peer") == "P03");

    // pipeline mode: mine the topology itself
    const auto mined = cli({"route-traverse", data("topology10.json"), "--query", "W21",
                            "--source", "P01", "--minfr", "20", "--similarity", "exact"});
    CHECK(mined.status == 0);
}

TEST_CASE("simulate writes the two csv files") {
    const auto dir = temp_dir();
    const auto prefix = (dir / "sim").string();
    const auto r = cli({"simulate", "--config", data("config_small.json"), "--output", prefix});
    CHECK(r.status == 0);
    const auto queries = slurp(prefix + "_queries.csv");
    const auto summary = slurp(prefix + "_summary.csv");
    CHECK(queries.rfind("size,superpeers,architecture,query_id,messages,hops,latency,precision,recall\n",
                        0) == 0);
    CHECK(summary.rfind("size,superpeers,architecture,queries,mean_messages,", 0) == 0);
    CHECK(queries.find("baseline") != std::string::npos);
    CHECK(queries.find("traverse") != std::string::npos);
}

TEST_CASE("simulate honours the jsonl format") {
    const auto dir = temp_dir();
    const auto prefix = (dir / "simj").string();
    const auto r = cli({"simulate", "--config", data("config_small.json"), "--output", prefix,
                        "--format", "jsonl"});
    CHECK(r.status == 0);
    std::istringstream in(slurp(prefix + "_queries.jsonl"));
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        const auto doc = nlohmann::json::parse(line);
        CHECK(doc.contains("architecture"));
        ++rows;
    }
    CHECK(rows == 40);  // 20 queries x 2 architectures
}

TEST_CASE("compare runs the sweep deterministically") {
    const auto dir = temp_dir();
    const auto cfg = dir / "sweep.json";
    write_temp(cfg, R"({
      "vocabulary": 120, "expertise_terms": [3, 6], "queries": 8,
      "minfr": 0.2, "seed": 3,
      "sweep": [{"peers": 60, "superpeers": 6}, {"peers": 90, "superpeers": 6, "seed": 4}]
    })");

    const auto p1 = (dir / "cmp1").string();
    const auto p2 = (dir / "cmp2").string();
    CHECK(cli({"compare", "--config", cfg.string(), "--output", p1}).status == 0);
    CHECK(cli({"compare", "--config", cfg.string(), "--output", p2, "--jobs", "2"}).status == 0);
    CHECK(slurp(p1 + "_queries.csv") == slurp(p2 + "_queries.csv"));
    CHECK(slurp(p1 + "_summary.csv") == slurp(p2 + "_summary.csv"));

    // per-query rows for both entries and both architectures
    const auto summary = slurp(p1 + "_summary.csv");
    CHECK(summary.find("60,6,baseline") != std::string::npos);
    CHECK(summary.find("90,6,traverse") != std::string::npos);
}

TEST_CASE("the shipped size sweep produces one row per size and architecture") {
    const auto dir = temp_dir();
    const auto prefix = (dir / "shipped").string();
    const auto r = cli({"compare", "--config", data("config_sweep.json"), "--output", prefix,
                        "--jobs", "2"});
    CHECK(r.status == 0);

    const auto summary = slurp(prefix + "_summary.csv");
    for (const char* row : {"300,10,baseline", "300,10,traverse", "600,12,baseline",
                            "600,12,traverse", "1200,16,baseline", "1200,16,traverse"})
        CHECK(summary.find(row) != std::string::npos);

    std::istringstream in(slurp(prefix + "_queries.csv"));
    std::string line;
    int rows = -1;  // header
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 3 * 2 * 30);  // sizes x architectures x queries
}

TEST_CASE("exit codes distinguish input from config problems") {
    CHECK(cli({"transversals", "/nonexistent/file.hg"}).status == 2);
    CHECK(cli({"mine", data("d1.txt"), "--minfr", "garbage"}).status == 2);
    CHECK(cli({"mine", data("d1.txt"), "--bogus-flag"}).status == 2);
    CHECK(cli({"nonsense-subcommand"}).status == 2);

    const auto dir = temp_dir();
    const auto empty = dir / "empty.txt";
    write_temp(empty, "# nothing\n");
    CHECK(cli({"mine", empty.string(), "--minfr", "20"}).status == 2);

    const auto bad_json = dir / "bad.json";
    write_temp(bad_json, "{ nope");
    CHECK(cli({"simulate", "--config", bad_json.string(), "--output",
               (dir / "x").string()}).status == 2);

    // structurally valid but infeasible: vocabulary far too small
    const auto infeasible = dir / "infeasible.json";
    write_temp(infeasible, R"({"peers": 50, "superpeers": 5, "vocabulary": 3})");
    CHECK(cli({"simulate", "--config", infeasible.string(), "--output",
               (dir / "y").string()}).status == 3);
}

TEST_CASE("route errors surface as input failures") {
    CHECK(cli({"route-baseline", data("topology10.json"), "--query", "W21", "--source",
               "PXX"}).status == 2);
    CHECK(cli({"route-traverse", data("topology10.json"), "--query", "", "--source",
               "P01", "--communities", data("communities_d2.txt")}).status == 2);
}
