#include "traverse/simulator.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "traverse/errors.hpp"
#include "traverse/sorted_sets.hpp"

namespace traverse {

namespace {

// Bounded draws built directly on the engine output so results do not depend
// on the standard library's distribution implementations.
int rand_int(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

bool rand_chance(std::mt19937_64& rng, double p) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

// First k elements of a seeded partial Fisher-Yates shuffle of [lo, hi).
std::vector<int> sample_without_replacement(std::mt19937_64& rng, int lo, int hi, int k) {
    std::vector<int> pool(static_cast<std::size_t>(hi - lo));
    for (int i = lo; i < hi; ++i) pool[static_cast<std::size_t>(i - lo)] = i;
    k = std::min<int>(k, static_cast<int>(pool.size()));
    for (int i = 0; i < k; ++i) {
        const int j = rand_int(rng, i, static_cast<int>(pool.size()) - 1);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(static_cast<std::size_t>(k));
    return pool;
}

std::string padded_id(const std::string& prefix, int value, int count) {
    int width = 1;
    for (int v = count - 1; v >= 10; v /= 10) ++width;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%0*d", std::min(width, 12), value);
    return prefix + buf;
}

std::string fmt_double(double v, int prec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

struct RegionLayout {
    int count = 0;
    int vocab = 0;
    int begin(int r) const { return r * vocab / count; }
    int end(int r) const { return (r + 1) * vocab / count; }
    int size(int r) const { return end(r) - begin(r); }
};

std::string term_label(int index, int vocabulary) {
    return padded_id("w", index, vocabulary);
}

}  // namespace

int WorkloadConfig::effective_regions() const {
    if (regions > 0) return std::min(regions, super_peers);
    // Regions become mined communities only if every region keeps at least
    // min_support super-peers; one extra gives slack against unlucky draws.
    const long long ms = min_support(minfr, super_peers);
    const long long count = std::min<long long>(super_peers, super_peers / (ms + 1));
    return static_cast<int>(std::max<long long>(std::min(2, super_peers), count));
}

TermSimilarityFn WorkloadConfig::similarity_fn() const {
    return similarity == SimilarityKind::Exact ? TermSimilarityFn(exact_term_similarity)
                                               : TermSimilarityFn(term_similarity);
}

void WorkloadConfig::validate() const {
    if (peers < 1 || super_peers < 1 || vocabulary < 1 || queries < 0)
        throw ConfigError("workload counts must be positive");
    if (super_peers > peers) throw ConfigError("more super-peers than peers");
    if (expertise_terms.lo < 1 || expertise_terms.lo > expertise_terms.hi)
        throw ConfigError("bad expertise term range");
    if (query_subject.lo < 1 || query_subject.lo > query_subject.hi)
        throw ConfigError("bad query subject range");
    if (minfr.num <= 0 || minfr.num > minfr.den) throw ConfigError("minfr must be in (0, 1]");
    if (min_new_transactions < 1) throw ConfigError("m must be >= 1");
    if (theta_peer < 0 || theta_peer > 1 || theta_sp < 0 || theta_sp > 1 ||
        epsilon_rel < 0 || epsilon_rel > 1)
        throw ConfigError("thresholds must lie in [0, 1]");
    if (noise < 0 || noise > 1 || theme_coverage <= 0 || theme_coverage > 1 || theme_foreign < 0)
        throw ConfigError("bad generator shape parameter");
    if (mean_degree < 0) throw ConfigError("mean degree must be non-negative");
    if (query_ttl < 1) throw ConfigError("query ttl must be >= 1");

    const RegionLayout layout{effective_regions(), vocabulary};
    for (int r = 0; r < layout.count; ++r) {
        if (layout.size(r) < 1)
            throw ConfigError("vocabulary too small: region " + std::to_string(r) + " is empty");
        if (layout.size(r) < expertise_terms.hi)
            throw ConfigError("vocabulary too small for the expertise range (region " +
                              std::to_string(r) + " has " + std::to_string(layout.size(r)) +
                              " terms, need " + std::to_string(expertise_terms.hi) + ")");
        if (layout.size(r) < query_subject.hi)
            throw ConfigError("vocabulary too small for the query subject range");
    }
}

double precision(const std::vector<std::string>& retrieved,
                 const std::vector<std::string>& relevant, bool empty_retrieved_is_one) {
    if (retrieved.empty()) return empty_retrieved_is_one ? 1.0 : 0.0;
    const auto hit = sets::intersect(retrieved, relevant);
    return static_cast<double>(hit.size()) / static_cast<double>(retrieved.size());
}

double recall(const std::vector<std::string>& retrieved,
              const std::vector<std::string>& relevant, bool empty_relevant_is_one) {
    if (relevant.empty()) return empty_relevant_is_one ? 1.0 : 0.0;
    const auto hit = sets::intersect(retrieved, relevant);
    return static_cast<double>(hit.size()) / static_cast<double>(relevant.size());
}

std::vector<std::string> ground_truth(const Network& n, const Query& q, double epsilon_rel,
                                      const TermSimilarityFn& sim) {
    std::vector<std::string> out;
    for (const auto& [id, p] : n.peers())
        if (cap(p, q, sim) >= epsilon_rel) out.push_back(id);
    return out;  // map order: already sorted unique
}

Network generate_network(const WorkloadConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    const RegionLayout layout{cfg.effective_regions(), cfg.vocabulary};

    Network net;
    std::vector<std::string> sp_ids;
    for (int i = 0; i < cfg.super_peers; ++i) {
        const int region = i % layout.count;
        SuperPeer sp;
        sp.id = padded_id("SP", i + 1, cfg.super_peers + 1);

        const int own = std::max(1, static_cast<int>(cfg.theme_coverage * layout.size(region)));
        std::vector<std::string> concepts;
        for (int idx : sample_without_replacement(rng, layout.begin(region), layout.end(region), own))
            concepts = sets::with_value(std::move(concepts), term_label(idx, cfg.vocabulary));

        const int foreign = static_cast<int>(cfg.theme_foreign * own);
        int taken = 0;
        int guard = 0;
        while (taken < foreign && guard++ < foreign * 50 + 50) {
            const int idx = rand_int(rng, 0, cfg.vocabulary - 1);
            if (idx >= layout.begin(region) && idx < layout.end(region)) continue;
            const auto label = term_label(idx, cfg.vocabulary);
            if (sets::contains(concepts, label)) continue;
            concepts = sets::with_value(std::move(concepts), label);
            ++taken;
        }
        sp.theme.concepts = std::move(concepts);
        if (sp.theme.concepts.size() >= 2) {
            sp.theme.roles.push_back(
                {sp.theme.concepts[0], "relates_to", sp.theme.concepts[1]});
            sp.theme.isa.push_back({sp.theme.concepts[1], sp.theme.concepts[0]});
        }
        sp_ids.push_back(sp.id);
        net.add_super_peer(std::move(sp));
    }

    // Connected seeded graph: random spanning tree plus extra edges up to the
    // requested mean degree. Degree >= n-1 yields the complete graph.
    std::vector<std::pair<int, int>> linked;
    for (int i = 1; i < cfg.super_peers; ++i) {
        const int j = rand_int(rng, 0, i - 1);
        net.link_super_peers(sp_ids[i], sp_ids[j]);
        linked.emplace_back(j, i);
    }
    std::vector<std::pair<int, int>> spare;
    for (int i = 0; i < cfg.super_peers; ++i)
        for (int j = i + 1; j < cfg.super_peers; ++j)
            if (std::find(linked.begin(), linked.end(), std::make_pair(i, j)) == linked.end())
                spare.emplace_back(i, j);
    for (int i = static_cast<int>(spare.size()) - 1; i > 0; --i)
        std::swap(spare[i], spare[rand_int(rng, 0, i)]);
    const long long target_edges =
        std::min<long long>(static_cast<long long>(cfg.super_peers) * (cfg.super_peers - 1) / 2,
                            std::llround(cfg.super_peers * cfg.mean_degree / 2.0));
    long long have = static_cast<long long>(linked.size());
    for (const auto& [i, j] : spare) {
        if (have >= target_edges) break;
        net.link_super_peers(sp_ids[i], sp_ids[j]);
        ++have;
    }

    for (int p = 0; p < cfg.peers; ++p) {
        const int sp_index = p % cfg.super_peers;
        const int region = sp_index % layout.count;
        const int want = rand_int(rng, cfg.expertise_terms.lo, cfg.expertise_terms.hi);
        std::vector<std::string> expertise;
        int guard = 0;
        while (static_cast<int>(expertise.size()) < want && guard++ < want * 200) {
            int idx;
            if (rand_chance(rng, cfg.noise))
                idx = rand_int(rng, 0, cfg.vocabulary - 1);
            else
                idx = rand_int(rng, layout.begin(region), layout.end(region) - 1);
            expertise = sets::with_value(std::move(expertise), term_label(idx, cfg.vocabulary));
        }
        net.add_peer({padded_id("P", p + 1, cfg.peers + 1), std::move(expertise),
                      sp_ids[static_cast<std::size_t>(sp_index)]});
    }

    net.validate();
    return net;
}

std::vector<Query> generate_queries(const WorkloadConfig& cfg, const Network& n) {
    // Independent stream: query randomness must not shift when the generator
    // internals change their draw counts.
    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    const RegionLayout layout{cfg.effective_regions(), cfg.vocabulary};

    std::vector<std::string> peer_ids;
    peer_ids.reserve(n.peers().size());
    for (const auto& [id, p] : n.peers()) peer_ids.push_back(id);

    std::vector<Query> out;
    for (int i = 0; i < cfg.queries; ++i) {
        Query q;
        q.id = padded_id("Q", i + 1, cfg.queries + 1);
        q.source_peer = peer_ids[static_cast<std::size_t>(
            rand_int(rng, 0, static_cast<int>(peer_ids.size()) - 1))];
        const int region = rand_int(rng, 0, layout.count - 1);
        const int want = std::min(rand_int(rng, cfg.query_subject.lo, cfg.query_subject.hi),
                                  layout.size(region));
        for (int idx : sample_without_replacement(rng, layout.begin(region), layout.end(region), want))
            q.subject.push_back(term_label(idx, cfg.vocabulary));
        q.subject = sets::normalized(std::move(q.subject));
        q.ttl = cfg.query_ttl;
        out.push_back(std::move(q));
    }
    return out;
}

void ExperimentResult::aggregate() {
    mean_messages = mean_hops = mean_latency = mean_precision = mean_recall = 0.0;
    total_messages = 0;
    if (per_query.empty()) return;
    for (const auto& q : per_query) {
        mean_messages += static_cast<double>(q.messages);
        mean_hops += q.hops;
        mean_latency += q.latency;
        mean_precision += q.precision;
        mean_recall += q.recall;
        total_messages += q.messages;
    }
    const double n = static_cast<double>(per_query.size());
    mean_messages /= n;
    mean_hops /= n;
    mean_latency /= n;
    mean_precision /= n;
    mean_recall /= n;
}

ExperimentOutput run_experiment(const WorkloadConfig& cfg) {
    cfg.validate();
    const Network net = generate_network(cfg);
    const std::vector<Query> queries = generate_queries(cfg, net);
    const TermSimilarityFn sim = cfg.similarity_fn();

    // Community discovery over what the super-peers actually hold.
    const ExpertiseDataset ed = expertise_dataset(net);
    const auto candidates = frequent_closed_patterns(ed.dataset, cfg.minfr);
    const Clustering clustering =
        select_clusters(candidates, ed.dataset, cfg.min_new_transactions, cfg.minfr);
    ExperimentOutput out;
    out.communities = to_communities(clustering, ed.dataset);
    out.strategies = build_strategies(out.communities);
    if (out.strategies.empty())
        throw ConfigError("no communities discovered; loosen minfr or reshape the generator");

    out.baseline.architecture = "baseline";
    out.traverse.architecture = "traverse";

    BaselineParams bp{cfg.theta_peer, cfg.theta_sp, sim};
    TraverseParams tp{cfg.theta_peer, sim};

    auto metrics_for = [&](const Query& q, const RoutingOutcome& r,
                           const std::vector<std::string>& relevant) {
        QueryMetrics m;
        m.query_id = q.id;
        m.messages = r.messages;
        m.hops = r.hop_depth;
        m.latency = r.hop_depth * cfg.latency.per_hop +
                    static_cast<double>(r.cap_evaluations) * cfg.latency.per_cap_eval;
        std::vector<std::string> retrieved;
        retrieved.reserve(r.answers.size());
        for (const auto& a : r.answers) retrieved.push_back(a.peer);
        retrieved = sets::normalized(std::move(retrieved));
        m.precision = precision(retrieved, relevant, cfg.empty_retrieval_precision_one);
        m.recall = recall(retrieved, relevant, cfg.empty_relevant_recall_one);
        return m;
    };

    for (const auto& q : queries) {
        const auto relevant = ground_truth(net, q, cfg.epsilon_rel, sim);
        out.baseline.per_query.push_back(metrics_for(q, route_baseline(net, q, bp), relevant));
        out.traverse.per_query.push_back(
            metrics_for(q, one_strategy_route(net, q, out.strategies, out.communities, tp), relevant));
    }
    out.baseline.aggregate();
    out.traverse.aggregate();
    return out;
}

std::string query_csv_header() {
    return "size,superpeers,architecture,query_id,messages,hops,latency,precision,recall\n";
}

std::string summary_csv_header() {
    return "size,superpeers,architecture,queries,mean_messages,mean_hops,mean_latency,"
           "mean_precision,mean_recall,total_messages\n";
}

void append_query_rows(std::string& csv, const WorkloadConfig& cfg, const ExperimentResult& r) {
    for (const auto& q : r.per_query) {
        csv += std::to_string(cfg.peers) + "," + std::to_string(cfg.super_peers) + "," +
               r.architecture + "," + q.query_id + "," + std::to_string(q.messages) + "," +
               std::to_string(q.hops) + "," + fmt_double(q.latency, 4) + "," +
               fmt_double(q.precision, 6) + "," + fmt_double(q.recall, 6) + "\n";
    }
}

void append_summary_row(std::string& csv, const WorkloadConfig& cfg, const ExperimentResult& r) {
    csv += std::to_string(cfg.peers) + "," + std::to_string(cfg.super_peers) + "," +
           r.architecture + "," + std::to_string(r.per_query.size()) + "," +
           fmt_double(r.mean_messages, 4) + "," + fmt_double(r.mean_hops, 4) + "," +
           fmt_double(r.mean_latency, 4) + "," + fmt_double(r.mean_precision, 6) + "," +
           fmt_double(r.mean_recall, 6) + "," + std::to_string(r.total_messages) + "\n";
}

void append_query_jsonl(std::string& out, const WorkloadConfig& cfg, const ExperimentResult& r) {
    for (const auto& q : r.per_query) {
        nlohmann::json j{{"size", cfg.peers},        {"superpeers", cfg.super_peers},
                         {"architecture", r.architecture}, {"query_id", q.query_id},
                         {"messages", q.messages},   {"hops", q.hops},
                         {"latency", q.latency},     {"precision", q.precision},
                         {"recall", q.recall}};
        out += j.dump() + "\n";
    }
}

nlohmann::json WorkloadConfig::to_json() const {
    nlohmann::json j;
    j["peers"] = peers;
    j["superpeers"] = super_peers;
    j["vocabulary"] = vocabulary;
    j["expertise_terms"] = {expertise_terms.lo, expertise_terms.hi};
    j["queries"] = queries;
    j["query_subject"] = {query_subject.lo, query_subject.hi};
    j["minfr"] = to_string(minfr);
    j["m"] = min_new_transactions;
    j["theta_peer"] = theta_peer;
    j["theta_sp"] = theta_sp;
    j["epsilon_rel"] = epsilon_rel;
    j["seed"] = seed;
    j["latency"] = {{"per_hop", latency.per_hop}, {"per_cap_eval", latency.per_cap_eval}};
    j["regions"] = regions;
    j["mean_degree"] = mean_degree;
    j["noise"] = noise;
    j["theme_coverage"] = theme_coverage;
    j["theme_foreign"] = theme_foreign;
    j["similarity"] = similarity == SimilarityKind::Exact ? "exact" : "trigram";
    j["empty_retrieval_precision_one"] = empty_retrieval_precision_one;
    j["empty_relevant_recall_one"] = empty_relevant_recall_one;
    j["query_ttl"] = query_ttl;
    return j;
}

static IntRange range_from(const nlohmann::json& j, const char* key, IntRange fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (v.is_number_integer()) return {v.get<int>(), v.get<int>()};
    if (v.is_array() && v.size() == 2) return {v.at(0).get<int>(), v.at(1).get<int>()};
    throw InputError(std::string("field '") + key + "' must be an int or a [lo, hi] pair");
}

WorkloadConfig WorkloadConfig::from_json(const nlohmann::json& doc) {
    WorkloadConfig cfg;
    if (!doc.is_object()) throw InputError("config must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        static const std::vector<std::string> known{
            "peers",         "superpeers",    "vocabulary",  "expertise_terms",
            "queries",       "query_subject", "minfr",       "m",
            "theta_peer",    "theta_sp",      "epsilon_rel", "seed",
            "latency",       "regions",       "mean_degree", "noise",
            "theme_coverage", "theme_foreign", "similarity",
            "empty_retrieval_precision_one",  "empty_relevant_recall_one",
            "query_ttl",     "sweep"};
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw InputError("unknown config field '" + key + "'");
    }
    if (doc.contains("peers")) cfg.peers = doc.at("peers").get<int>();
    if (doc.contains("superpeers")) cfg.super_peers = doc.at("superpeers").get<int>();
    if (doc.contains("vocabulary")) cfg.vocabulary = doc.at("vocabulary").get<int>();
    cfg.expertise_terms = range_from(doc, "expertise_terms", cfg.expertise_terms);
    if (doc.contains("queries")) cfg.queries = doc.at("queries").get<int>();
    cfg.query_subject = range_from(doc, "query_subject", cfg.query_subject);
    if (doc.contains("minfr")) {
        const auto& v = doc.at("minfr");
        cfg.minfr = v.is_string() ? parse_min_frequency(v.get<std::string>())
                                  : min_frequency_from_double(v.get<double>());
    }
    if (doc.contains("m")) cfg.min_new_transactions = doc.at("m").get<int>();
    if (doc.contains("theta_peer")) cfg.theta_peer = doc.at("theta_peer").get<double>();
    if (doc.contains("theta_sp")) cfg.theta_sp = doc.at("theta_sp").get<double>();
    if (doc.contains("epsilon_rel")) cfg.epsilon_rel = doc.at("epsilon_rel").get<double>();
    if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("latency")) {
        const auto& l = doc.at("latency");
        if (l.contains("per_hop")) cfg.latency.per_hop = l.at("per_hop").get<double>();
        if (l.contains("per_cap_eval")) cfg.latency.per_cap_eval = l.at("per_cap_eval").get<double>();
    }
    if (doc.contains("regions")) cfg.regions = doc.at("regions").get<int>();
    if (doc.contains("mean_degree")) cfg.mean_degree = doc.at("mean_degree").get<double>();
    if (doc.contains("noise")) cfg.noise = doc.at("noise").get<double>();
    if (doc.contains("theme_coverage")) cfg.theme_coverage = doc.at("theme_coverage").get<double>();
    if (doc.contains("theme_foreign")) cfg.theme_foreign = doc.at("theme_foreign").get<double>();
    if (doc.contains("similarity")) {
        const auto s = doc.at("similarity").get<std::string>();
        if (s == "exact")
            cfg.similarity = SimilarityKind::Exact;
        else if (s == "trigram")
            cfg.similarity = SimilarityKind::Trigram;
        else
            throw InputError("similarity must be 'exact' or 'trigram'");
    }
    if (doc.contains("empty_retrieval_precision_one"))
        cfg.empty_retrieval_precision_one = doc.at("empty_retrieval_precision_one").get<bool>();
    if (doc.contains("empty_relevant_recall_one"))
        cfg.empty_relevant_recall_one = doc.at("empty_relevant_recall_one").get<bool>();
    if (doc.contains("query_ttl")) cfg.query_ttl = doc.at("query_ttl").get<int>();
    return cfg;
}

}  // namespace traverse
