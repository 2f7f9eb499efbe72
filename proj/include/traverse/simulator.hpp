#ifndef TRAVERSE_SIMULATOR_HPP
#define TRAVERSE_SIMULATOR_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "traverse/fraction.hpp"
#include "traverse/network.hpp"
#include "traverse/routing_baseline.hpp"
#include "traverse/routing_transversal.hpp"

namespace traverse {

struct IntRange {
    int lo = 1;
    int hi = 1;
    bool operator==(const IntRange&) const = default;
};

/// Deterministic latency proxy: hops and capacity evaluations are the two
/// cost drivers the simulation accounts for.
struct LatencyModel {
    double per_hop = 10.0;
    double per_cap_eval = 1.0;
    bool operator==(const LatencyModel&) const = default;
};

enum class SimilarityKind { Exact, Trigram };

/// Everything one experiment run needs. All randomness flows from `seed`;
/// identical configs produce byte-identical outputs.
struct WorkloadConfig {
    int peers = 300;
    int super_peers = 10;
    int vocabulary = 200;
    IntRange expertise_terms{3, 8};
    int queries = 50;
    IntRange query_subject{2, 3};
    Fraction minfr{1, 8};
    int min_new_transactions = 1;  // the clustering overlap control
    double theta_peer = 0.5;
    double theta_sp = 0.3;
    double epsilon_rel = 0.5;  // ground-truth relevance threshold
    std::uint64_t seed = 1;
    LatencyModel latency;

    // Generator shape: the vocabulary is split into topic regions; a
    // super-peer's peers draw expertise from its region, its advertised theme
    // covers the region only partially and also claims some foreign terms.
    int regions = 0;  // 0 = auto, derived from the mining support threshold
    double mean_degree = 2.5;
    double noise = 0.01;          // chance a peer expertise term is off-region
    double theme_coverage = 0.5;  // region share a theme advertises
    double theme_foreign = 3.5;   // foreign concepts, as a share of own concepts

    SimilarityKind similarity = SimilarityKind::Exact;
    bool empty_retrieval_precision_one = true;
    bool empty_relevant_recall_one = true;
    int query_ttl = 8;

    int effective_regions() const;
    TermSimilarityFn similarity_fn() const;
    void validate() const;  // throws ConfigError

    nlohmann::json to_json() const;
    static WorkloadConfig from_json(const nlohmann::json& doc);
};

struct QueryMetrics {
    std::string query_id;
    long long messages = 0;
    int hops = 0;
    double latency = 0.0;
    double precision = 0.0;
    double recall = 0.0;
};

struct ExperimentResult {
    std::string architecture;  // "baseline" | "traverse"
    std::vector<QueryMetrics> per_query;
    double mean_messages = 0.0;
    double mean_hops = 0.0;
    double mean_latency = 0.0;
    double mean_precision = 0.0;
    double mean_recall = 0.0;
    long long total_messages = 0;

    void aggregate();  // recompute the means/totals from per_query
};

/// |retrieved ∩ relevant| / |retrieved|; empty retrieval defaults to 1.0
/// (vacuously precise), configurable to 0.0. Inputs are sorted unique ids.
double precision(const std::vector<std::string>& retrieved,
                 const std::vector<std::string>& relevant, bool empty_retrieved_is_one = true);

/// |retrieved ∩ relevant| / |relevant|; empty relevant set defaults to 1.0.
double recall(const std::vector<std::string>& retrieved,
              const std::vector<std::string>& relevant, bool empty_relevant_is_one = true);

/// Global oracle for the recall denominator: every peer in the network whose
/// cap reaches epsilon_rel, found by exhaustive evaluation.
std::vector<std::string> ground_truth(const Network& n, const Query& q, double epsilon_rel,
                                      const TermSimilarityFn& sim);

/// Seeded topology generator (see the config's generator knobs). Determinism
/// does not depend on the standard library's distribution implementations.
Network generate_network(const WorkloadConfig& cfg);

/// The seeded query stream both architectures replay.
std::vector<Query> generate_queries(const WorkloadConfig& cfg, const Network& n);

struct ExperimentOutput {
    ExperimentResult baseline;
    ExperimentResult traverse;
    CommunitySet communities;
    std::vector<Strategy> strategies;
};

/// Generates one network and one query stream, runs both architectures over
/// them, and returns per-query and aggregate metrics for each.
ExperimentOutput run_experiment(const WorkloadConfig& cfg);

/// Frozen CSV schemas.
std::string query_csv_header();
std::string summary_csv_header();
void append_query_rows(std::string& csv, const WorkloadConfig& cfg, const ExperimentResult& r);
void append_summary_row(std::string& csv, const WorkloadConfig& cfg, const ExperimentResult& r);
void append_query_jsonl(std::string& out, const WorkloadConfig& cfg, const ExperimentResult& r);

}  // namespace traverse

#endif
