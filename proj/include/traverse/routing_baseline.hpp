#ifndef TRAVERSE_ROUTING_BASELINE_HPP
#define TRAVERSE_ROUTING_BASELINE_HPP

#include <compare>
#include <string>
#include <vector>

#include "traverse/network.hpp"
#include "traverse/similarity.hpp"

namespace traverse {

struct Query {
    std::string id;
    std::string source_peer;
    std::vector<std::string> subject;  // non-empty set of terms
    int ttl = 8;
};

struct Answer {
    std::string peer;
    std::string super_peer;
    auto operator<=>(const Answer&) const = default;
};

/// What one routed query produced: the answering (peer, super-peer) pairs
/// plus the accounting the evaluation needs. answers is sorted and unique.
struct RoutingOutcome {
    std::vector<Answer> answers;
    long long messages = 0;
    int hop_depth = 0;
    long long cap_evaluations = 0;
};

/// Capacity of a peer for a query: mean over the query subject of the best
/// similarity any expertise term achieves. Empty subject or expertise is an
/// input error.
double cap(const Peer& p, const Query& q, const TermSimilarityFn& sim);

/// Theme-level relevance of a super-peer for a query: mean over the subject
/// of the best similarity to the theme's concept labels.
double theme_relevance(const ThemeDescription& theme, const Query& q,
                       const TermSimilarityFn& sim);

struct BaselineParams {
    double theta_peer = 0.5;  // per-peer capacity threshold
    double theta_sp = 0.3;    // neighbor theme-relevance threshold
    TermSimilarityFn similarity = term_similarity;
};

/// Two-level semantic routing. The source peer hands the query to its
/// super-peer (one message); that super-peer screens its own peers with cap,
/// forwards to each neighbor whose theme relevance reaches theta_sp (one
/// message each, TTL permitting), and the receiving super-peers screen only
/// their own peers. One response message is counted per answering super-peer.
RoutingOutcome route_baseline(const Network& n, const Query& q, const BaselineParams& params);

}  // namespace traverse

#endif
