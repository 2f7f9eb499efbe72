#ifndef TRAVERSE_ROUTING_TRANSVERSAL_HPP
#define TRAVERSE_ROUTING_TRANSVERSAL_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "traverse/ecclat.hpp"
#include "traverse/mining.hpp"
#include "traverse/network.hpp"
#include "traverse/routing_baseline.hpp"

namespace traverse {

/// A community of super-peers sharing expertise: the shared pattern and the
/// member super-peers (one hyperedge of the community hypergraph).
struct Community {
    std::vector<std::string> pattern;  // sorted item labels
    std::vector<std::string> members;  // sorted super-peer ids, non-empty
    bool operator==(const Community&) const = default;
};

struct CommunitySet {
    std::vector<Community> communities;
};

/// A routing strategy: a minimal transversal of the community hypergraph,
/// i.e. a smallest super-peer set containing at least one member of every
/// community.
struct Strategy {
    std::vector<std::string> members;  // sorted super-peer ids
    auto operator<=>(const Strategy&) const = default;
};

/// One record of a query a super-peer processed successfully.
struct QueryLogEntry {
    std::string super_peer;
    std::vector<std::string> components;
};

struct ExpertiseDataset {
    TransactionDataset dataset;
    std::vector<std::string> excluded_super_peers;  // had no items; not in dataset
};

/// Transactions are super-peers, items are query components. With a log the
/// items come from the queries each super-peer processed; without one they
/// fall back to the union of the attached peers' expertise terms. Super-peers
/// contributing no items are excluded and reported.
ExpertiseDataset expertise_dataset(const Network& n,
                                   const std::vector<QueryLogEntry>* log = nullptr);

/// Selected clusters of the super-peer dataset as communities.
CommunitySet to_communities(const Clustering& clustering, const TransactionDataset& d);

/// All minimal transversals of the community hypergraph, each re-checked for
/// minimality, sorted by (cardinality, lexicographic). Identical member sets
/// from overlapping communities collapse into one hyperedge.
std::vector<Strategy> build_strategies(const CommunitySet& cs);

struct TraverseParams {
    double theta_peer = 0.5;
    TermSimilarityFn similarity = term_similarity;
};

/// Route a query along exactly one strategy.
///
/// The source super-peer picks a strategy containing itself (if none exists
/// it first bridges to the nearest strategy member, one extra message and
/// hop, and uses that member's strategies). Among the possible strategies
/// the one with the highest subject affinity against the members' community
/// patterns wins; ties go to the smallest, then lexicographically first.
/// Members whose own community patterns show zero affinity are filtered out
/// (all kept if that would empty the strategy). The relay messages each kept
/// member; every contacted super-peer screens its own peers with cap.
RoutingOutcome one_strategy_route(const Network& n, const Query& q,
                                  const std::vector<Strategy>& strategies,
                                  const CommunitySet& communities,
                                  const TraverseParams& params);

/// Text format shared by the cluster/communities output and the strategies
/// input: `<item> <item> ... : <sp> <sp> ...`, '#' comments.
std::vector<Community> parse_communities(std::istream& in,
                                         const std::string& filename = "<input>");
/// One strategy per line, super-peer ids whitespace-separated.
std::vector<Strategy> parse_strategies(std::istream& in,
                                       const std::string& filename = "<input>");

}  // namespace traverse

#endif
