#include "traverse/cli_app.hpp"

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "traverse/ecclat.hpp"
#include "traverse/errors.hpp"
#include "traverse/fraction.hpp"
#include "traverse/hypergraph.hpp"
#include "traverse/mining.hpp"
#include "traverse/network.hpp"
#include "traverse/routing_baseline.hpp"
#include "traverse/routing_transversal.hpp"
#include "traverse/simulator.hpp"
#include "traverse/sorted_sets.hpp"

namespace traverse {

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file '" + path + "'");
    return in;
}

void write_result(const std::string& text, const std::string& output_path, std::ostream& out) {
    if (output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(output_path, std::ios::binary);
    if (!f) throw InputError("cannot write file '" + output_path + "'");
    f << text;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write file '" + path + "'");
    f << text;
}

std::vector<std::string> split_terms(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return sets::normalized(std::move(out));
}

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
        if (!out.empty()) out += ' ';
        out += s;
    }
    return out;
}

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

TermSimilarityFn similarity_by_name(const std::string& name) {
    if (name == "exact") return exact_term_similarity;
    if (name == "trigram") return term_similarity;
    throw InputError("similarity must be 'exact' or 'trigram'");
}

bool looks_like_json(const std::string& path) {
    std::ifstream in(path);
    char c = 0;
    while (in.get(c))
        if (!std::isspace(static_cast<unsigned char>(c))) break;
    return c == '{';
}

nlohmann::json parse_json_file(const std::string& path) {
    auto in = open_input(path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

// Dataset from either a transaction file or a topology document.
TransactionDataset dataset_from_path(const std::string& path, std::ostream& err) {
    if (looks_like_json(path)) {
        auto in = open_input(path);
        const Network net = Network::load(in, path);
        const auto ed = expertise_dataset(net);
        for (const auto& sp : ed.excluded_super_peers)
            err << "warning: super-peer '" << sp << "' has no items; excluded\n";
        return ed.dataset;
    }
    auto in = open_input(path);
    return TransactionDataset::parse(in, path);
}

std::string format_patterns(const TransactionDataset& d, const std::vector<ClosedPattern>& patterns) {
    std::string out;
    for (const auto& p : patterns)
        out += join(d.item_labels(p.items)) + " | " + join(d.transaction_ids(p.support)) +
               " | " + to_string(p.frequency) + "\n";
    return out;
}

std::string format_clustering(const TransactionDataset& d, const Clustering& clustering) {
    std::string out;
    for (const auto& c : clustering.selected)
        out += join(d.item_labels(c.pattern.items)) + " : " +
               join(d.transaction_ids(c.pattern.support)) + "  # h=" + fmt6(c.homogeneity) +
               " conc=" + fmt6(c.concentration) + " int=" + fmt6(c.interestingness) + "\n";
    if (!clustering.unclassified.empty())
        out += "# unclassified: " + join(d.transaction_ids(clustering.unclassified)) + "\n";
    return out;
}

nlohmann::json outcome_to_json(const Query& q, const RoutingOutcome& r) {
    nlohmann::json answers = nlohmann::json::array();
    for (const auto& a : r.answers)
        answers.push_back({{"peer", a.peer}, {"superpeer", a.super_peer}});
    return nlohmann::json{{"query", q.id},
                          {"source", q.source_peer},
                          {"subject", q.subject},
                          {"answers", answers},
                          {"messages", r.messages},
                          {"hops", r.hop_depth},
                          {"cap_evaluations", r.cap_evaluations}};
}

WorkloadConfig config_from_doc(const nlohmann::json& doc) {
    try {
        return WorkloadConfig::from_json(doc);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("config: ") + e.what());
    }
}

struct SweepPaths {
    std::string queries_path;
    std::string summary_path;
};

SweepPaths sweep_paths(const std::string& prefix, const std::string& format) {
    return {prefix + (format == "jsonl" ? "_queries.jsonl" : "_queries.csv"),
            prefix + "_summary.csv"};
}

void run_sweep(const nlohmann::json& base_doc, const std::vector<nlohmann::json>& entries,
               std::uint64_t seed_override, bool has_seed_override, const std::string& prefix,
               const std::string& format, int jobs, std::ostream& err) {
    std::vector<WorkloadConfig> configs;
    for (const auto& entry : entries) {
        nlohmann::json merged = base_doc;
        merged.erase("sweep");
        if (!entry.is_object()) throw InputError("sweep entries must be objects");
        for (const auto& [k, v] : entry.items()) merged[k] = v;
        auto cfg = config_from_doc(merged);
        if (has_seed_override) cfg.seed = seed_override;
        cfg.validate();
        configs.push_back(std::move(cfg));
    }

    std::vector<ExperimentOutput> results(configs.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < configs.size(); ++i) results[i] = run_experiment(configs[i]);
    } else {
        std::vector<std::future<ExperimentOutput>> futures;
        futures.reserve(configs.size());
        for (const auto& cfg : configs)
            futures.push_back(std::async(std::launch::async, [&cfg] { return run_experiment(cfg); }));
        for (std::size_t i = 0; i < futures.size(); ++i) results[i] = futures[i].get();
    }

    std::string queries_text = format == "jsonl" ? std::string() : query_csv_header();
    std::string summary_text = summary_csv_header();
    for (std::size_t i = 0; i < configs.size(); ++i) {
        for (const ExperimentResult* r : {&results[i].baseline, &results[i].traverse}) {
            if (format == "jsonl")
                append_query_jsonl(queries_text, configs[i], *r);
            else
                append_query_rows(queries_text, configs[i], *r);
            append_summary_row(summary_text, configs[i], *r);
        }
    }

    const auto paths = sweep_paths(prefix, format);
    write_file(paths.queries_path, queries_text);
    write_file(paths.summary_path, summary_text);
    err << "wrote " << paths.queries_path << "\n";
    err << "wrote " << paths.summary_path << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.push_back("traverse");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"hybrid P2P query-routing toolkit: pattern mining, super-peer communities, "
                 "transversal strategies and routing simulation"};
    app.require_subcommand(1);

    std::string input_path, output_path, query_text, source_peer, minfr_text = "0.2";
    std::string communities_path, strategies_path, config_path, format = "csv";
    std::string similarity_name = "trigram";
    bool use_oracle = false;
    int oracle_limit = 20;
    int m_value = 1;
    int ttl = 8;
    double theta_peer = 0.5, theta_sp = 0.3;
    std::uint64_t seed = 0;
    int jobs = 1;

    auto* cmd_transversals =
        app.add_subcommand("transversals", "minimal transversals of a hypergraph file");
    cmd_transversals->add_option("file", input_path, "hypergraph file (one edge per line)")
        ->required();
    cmd_transversals->add_flag("--oracle", use_oracle, "use the exhaustive oracle enumeration");
    cmd_transversals->add_option("--oracle-limit", oracle_limit, "oracle vertex-count limit");
    cmd_transversals->add_option("--output", output_path, "output path (default stdout)");

    auto* cmd_mine = app.add_subcommand("mine", "frequent closed patterns of a dataset");
    cmd_mine->add_option("file", input_path, "transaction dataset file")->required();
    cmd_mine->add_option("--minfr", minfr_text, "minimum frequency (0.2, 3/8 or 20 for 20%)");
    cmd_mine->add_option("--output", output_path, "output path (default stdout)");

    auto* cmd_cluster = app.add_subcommand("cluster", "overlapping clustering of a dataset");
    cmd_cluster->add_option("file", input_path, "transaction dataset file")->required();
    cmd_cluster->add_option("--minfr", minfr_text, "minimum frequency");
    cmd_cluster->add_option("--m", m_value, "minimum new transactions per extra cluster");
    cmd_cluster->add_option("--output", output_path, "output path (default stdout)");

    auto* cmd_communities =
        app.add_subcommand("communities", "super-peer communities from a topology or dataset");
    cmd_communities->add_option("file", input_path, "topology JSON or dataset file")->required();
    cmd_communities->add_option("--minfr", minfr_text, "minimum frequency");
    cmd_communities->add_option("--m", m_value, "minimum new transactions per extra cluster");
    cmd_communities->add_option("--output", output_path, "output path (default stdout)");

    auto* cmd_strategies =
        app.add_subcommand("strategies", "minimal-transversal strategies of a communities file");
    cmd_strategies->add_option("file", input_path, "communities file (items : super-peers)")
        ->required();
    cmd_strategies->add_option("--output", output_path, "output path (default stdout)");

    auto* cmd_route_b = app.add_subcommand("route-baseline", "two-level semantic routing");
    cmd_route_b->add_option("topology", input_path, "topology JSON")->required();
    cmd_route_b->add_option("--query", query_text, "query subject terms")->required();
    cmd_route_b->add_option("--source", source_peer, "source peer id")->required();
    cmd_route_b->add_option("--theta-peer", theta_peer, "peer capacity threshold");
    cmd_route_b->add_option("--theta-sp", theta_sp, "super-peer relevance threshold");
    cmd_route_b->add_option("--ttl", ttl, "query ttl");
    cmd_route_b->add_option("--similarity", similarity_name, "'exact' or 'trigram'");
    cmd_route_b->add_option("--output", output_path, "output path (default stdout)");

    auto* cmd_route_t = app.add_subcommand("route-traverse", "one-strategy transversal routing");
    cmd_route_t->add_option("topology", input_path, "topology JSON")->required();
    cmd_route_t->add_option("--query", query_text, "query subject terms")->required();
    cmd_route_t->add_option("--source", source_peer, "source peer id")->required();
    cmd_route_t->add_option("--communities", communities_path,
                            "communities file (default: mined from the topology)");
    cmd_route_t->add_option("--strategies", strategies_path,
                            "strategies file (default: computed from the communities)");
    cmd_route_t->add_option("--minfr", minfr_text, "minimum frequency for mining");
    cmd_route_t->add_option("--m", m_value, "clustering overlap control");
    cmd_route_t->add_option("--theta-peer", theta_peer, "peer capacity threshold");
    cmd_route_t->add_option("--ttl", ttl, "query ttl");
    cmd_route_t->add_option("--similarity", similarity_name, "'exact' or 'trigram'");
    cmd_route_t->add_option("--output", output_path, "output path (default stdout)");

    auto* cmd_simulate = app.add_subcommand("simulate", "run one seeded experiment (both architectures)");
    cmd_simulate->add_option("--config", config_path, "workload config JSON")->required();
    auto* sim_seed = cmd_simulate->add_option("--seed", seed, "override the config seed");
    cmd_simulate->add_option("--output", output_path, "output path prefix")->required();
    cmd_simulate->add_option("--format", format, "'csv' or 'jsonl'")
        ->check(CLI::IsMember({"csv", "jsonl"}));

    auto* cmd_compare = app.add_subcommand("compare", "run the sweep in the config");
    cmd_compare->add_option("--config", config_path, "workload config JSON with a 'sweep' array")
        ->required();
    auto* cmp_seed = cmd_compare->add_option("--seed", seed, "override every entry's seed");
    cmd_compare->add_option("--output", output_path, "output path prefix")->required();
    cmd_compare->add_option("--format", format, "'csv' or 'jsonl'")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    cmd_compare->add_option("--jobs", jobs, "parallel sweep entries");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (app.got_subcommand(cmd_transversals)) {
            auto in = open_input(input_path);
            const Hypergraph h = Hypergraph::parse(in, input_path);
            const auto result =
                use_oracle ? min_transversals_bruteforce(h, oracle_limit) : min_transversals_berge(h);
            std::string text;
            for (const auto& t : result) text += join(h.labels(t)) + "\n";
            write_result(text, output_path, out);
        } else if (app.got_subcommand(cmd_mine)) {
            auto in = open_input(input_path);
            const auto d = TransactionDataset::parse(in, input_path);
            const auto patterns = frequent_closed_patterns(d, parse_min_frequency(minfr_text));
            write_result(format_patterns(d, patterns), output_path, out);
        } else if (app.got_subcommand(cmd_cluster) || app.got_subcommand(cmd_communities)) {
            const auto d = app.got_subcommand(cmd_communities)
                               ? dataset_from_path(input_path, err)
                               : [&] {
                                     auto in = open_input(input_path);
                                     return TransactionDataset::parse(in, input_path);
                                 }();
            const auto minfr = parse_min_frequency(minfr_text);
            const auto clustering =
                select_clusters(frequent_closed_patterns(d, minfr), d, m_value, minfr);
            write_result(format_clustering(d, clustering), output_path, out);
        } else if (app.got_subcommand(cmd_strategies)) {
            auto in = open_input(input_path);
            CommunitySet cs{parse_communities(in, input_path)};
            std::string text;
            for (const auto& s : build_strategies(cs)) text += join(s.members) + "\n";
            write_result(text, output_path, out);
        } else if (app.got_subcommand(cmd_route_b)) {
            auto in = open_input(input_path);
            const Network net = Network::load(in, input_path);
            const Query q{"Q1", source_peer, split_terms(query_text), ttl};
            BaselineParams params{theta_peer, theta_sp, similarity_by_name(similarity_name)};
            const auto outcome = route_baseline(net, q, params);
            write_result(outcome_to_json(q, outcome).dump() + "\n", output_path, out);
        } else if (app.got_subcommand(cmd_route_t)) {
            auto in = open_input(input_path);
            const Network net = Network::load(in, input_path);
            const Query q{"Q1", source_peer, split_terms(query_text), ttl};

            CommunitySet communities;
            if (!communities_path.empty()) {
                auto cin_ = open_input(communities_path);
                communities.communities = parse_communities(cin_, communities_path);
            } else {
                const auto ed = expertise_dataset(net);
                for (const auto& sp : ed.excluded_super_peers)
                    err << "warning: super-peer '" << sp << "' has no items; excluded\n";
                const auto minfr = parse_min_frequency(minfr_text);
                const auto clustering = select_clusters(
                    frequent_closed_patterns(ed.dataset, minfr), ed.dataset, m_value, minfr);
                communities = to_communities(clustering, ed.dataset);
            }
            std::vector<Strategy> strategies;
            if (!strategies_path.empty()) {
                auto sin = open_input(strategies_path);
                strategies = parse_strategies(sin, strategies_path);
            } else {
                strategies = build_strategies(communities);
            }
            TraverseParams params{theta_peer, similarity_by_name(similarity_name)};
            const auto outcome = one_strategy_route(net, q, strategies, communities, params);
            write_result(outcome_to_json(q, outcome).dump() + "\n", output_path, out);
        } else if (app.got_subcommand(cmd_simulate)) {
            auto doc = parse_json_file(config_path);
            doc.erase("sweep");
            run_sweep(doc, {nlohmann::json::object()}, seed, !sim_seed->empty(), output_path,
                      format, 1, err);
        } else if (app.got_subcommand(cmd_compare)) {
            const auto doc = parse_json_file(config_path);
            if (!doc.contains("sweep") || !doc.at("sweep").is_array() || doc.at("sweep").empty())
                throw InputError("compare needs a non-empty 'sweep' array in the config");
            std::vector<nlohmann::json> entries(doc.at("sweep").begin(), doc.at("sweep").end());
            run_sweep(doc, entries, seed, !cmp_seed->empty(), output_path, format, jobs, err);
        }
        return 0;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace traverse
