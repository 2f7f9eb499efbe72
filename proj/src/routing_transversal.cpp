#include "traverse/routing_transversal.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <sstream>

#include "traverse/errors.hpp"
#include "traverse/hypergraph.hpp"
#include "traverse/sorted_sets.hpp"

namespace traverse {

ExpertiseDataset expertise_dataset(const Network& n, const std::vector<QueryLogEntry>* log) {
    std::map<std::string, std::vector<std::string>> items_by_sp;
    if (log) {
        for (const auto& entry : *log) {
            if (!n.find_super_peer(entry.super_peer))
                throw InputError("query log names unknown super-peer '" + entry.super_peer + "'");
            auto& items = items_by_sp[entry.super_peer];
            items.insert(items.end(), entry.components.begin(), entry.components.end());
        }
    } else {
        for (const auto& [id, sp] : n.super_peers()) {
            auto& items = items_by_sp[id];
            for (const auto& pid : sp.peers) {
                const auto& exp = n.find_peer(pid)->expertise;
                items.insert(items.end(), exp.begin(), exp.end());
            }
        }
    }

    ExpertiseDataset out;
    std::vector<TransactionDataset::Row> rows;
    for (const auto& [id, sp] : n.super_peers()) {
        auto it = items_by_sp.find(id);
        if (it == items_by_sp.end() || it->second.empty()) {
            out.excluded_super_peers.push_back(id);
            continue;
        }
        rows.push_back({id, sets::normalized(it->second)});
    }
    out.dataset = TransactionDataset::from_rows(std::move(rows));
    return out;
}

CommunitySet to_communities(const Clustering& clustering, const TransactionDataset& d) {
    CommunitySet cs;
    for (const auto& cluster : clustering.selected)
        cs.communities.push_back({d.item_labels(cluster.pattern.items),
                                  d.transaction_ids(cluster.pattern.support)});
    return cs;
}

std::vector<Strategy> build_strategies(const CommunitySet& cs) {
    if (cs.communities.empty()) return {};
    std::vector<std::vector<std::string>> edges;
    for (const auto& c : cs.communities) {
        if (c.members.empty()) throw InputError("community with no super-peers");
        auto members = sets::normalized(c.members);
        if (std::find(edges.begin(), edges.end(), members) == edges.end())
            edges.push_back(std::move(members));
    }
    const Hypergraph h = Hypergraph::from_edges(edges);
    std::vector<Strategy> out;
    for (const auto& t : min_transversals_berge(h)) {
        if (!is_minimal_transversal(h, t))
            throw std::logic_error("transversal enumeration produced a non-minimal set");
        out.push_back({h.labels(t)});
    }
    std::sort(out.begin(), out.end(), [](const Strategy& a, const Strategy& b) {
        return a.members.size() != b.members.size() ? a.members.size() < b.members.size()
                                                    : a.members < b.members;
    });
    return out;
}

namespace {

// Union of the community patterns each super-peer participates in.
std::map<std::string, std::vector<std::string>> pattern_unions(const CommunitySet& cs) {
    std::map<std::string, std::vector<std::string>> by_sp;
    for (const auto& c : cs.communities)
        for (const auto& sp : c.members) by_sp[sp] = sets::unite(by_sp[sp], c.pattern);
    return by_sp;
}

bool screen_peers(const Network& n, const SuperPeer& sp, const Query& q, double theta_peer,
                  const TermSimilarityFn& sim, RoutingOutcome& out) {
    bool any = false;
    for (const auto& pid : sp.peers) {
        ++out.cap_evaluations;
        if (cap(*n.find_peer(pid), q, sim) >= theta_peer) {
            out.answers.push_back({pid, sp.id});
            any = true;
        }
    }
    return any;
}

}  // namespace

RoutingOutcome one_strategy_route(const Network& n, const Query& q,
                                  const std::vector<Strategy>& strategies,
                                  const CommunitySet& communities,
                                  const TraverseParams& params) {
    if (strategies.empty()) throw InputError("no routing strategies built");
    for (const auto& s : strategies)
        if (s.members.empty()) throw InputError("strategy with no super-peers");
    if (q.subject.empty()) throw InputError("query '" + q.id + "' has an empty subject");
    if (q.ttl < 1) throw InputError("query '" + q.id + "' has ttl < 1");
    const Peer* source = n.find_peer(q.source_peer);
    if (!source) throw InputError("unknown source peer '" + q.source_peer + "'");
    const std::string sp0 = source->super_peer;

    RoutingOutcome out;
    out.messages = 1;  // source peer -> its super-peer
    out.hop_depth = 1;

    const auto patterns = pattern_unions(communities);
    auto strategies_containing = [&](const std::string& sp) {
        std::vector<const Strategy*> found;
        for (const auto& s : strategies)
            if (sets::contains(s.members, sp)) found.push_back(&s);
        return found;
    };

    // Select the possible strategies for the source super-peer; when it sits
    // on no strategy, bridge to the nearest strategy member and route from
    // there (one extra message and hop).
    std::string relay = sp0;
    int relay_depth = 1;
    auto possible = strategies_containing(sp0);
    if (possible.empty() && q.ttl >= 2) {
        std::vector<std::string> all_members;
        for (const auto& s : strategies)
            all_members = sets::unite(all_members, s.members);
        std::string bridge;
        const SuperPeer* src_sp = n.find_super_peer(sp0);
        for (const auto& nb : src_sp->neighbors) {  // sorted: first hit is lexicographic min
            if (sets::contains(all_members, nb)) {
                bridge = nb;
                break;
            }
        }
        if (bridge.empty()) bridge = all_members.front();
        ++out.messages;
        relay = bridge;
        relay_depth = 2;
        out.hop_depth = 2;
        possible = strategies_containing(bridge);
    }

    int responding = 0;
    std::vector<std::string> contacted{sp0};

    if (!possible.empty()) {
        // Affinity of a strategy: subject terms against the union of the
        // members' community patterns. Ties: smaller, then lexicographic.
        const Strategy* chosen = nullptr;
        double chosen_affinity = -1.0;
        for (const Strategy* s : possible) {
            std::vector<std::string> pool;
            for (const auto& m : s->members) {
                auto it = patterns.find(m);
                if (it != patterns.end()) pool = sets::unite(pool, it->second);
            }
            const double affinity = mean_best_match(q.subject, pool, params.similarity);
            const bool wins =
                !chosen || affinity > chosen_affinity ||
                (affinity == chosen_affinity &&
                 (s->members.size() < chosen->members.size() ||
                  (s->members.size() == chosen->members.size() && s->members < chosen->members)));
            if (wins) {
                chosen = s;
                chosen_affinity = affinity;
            }
        }

        // Filter: keep members whose own community patterns relate to the
        // subject at all; an empty result keeps the whole strategy.
        std::vector<std::string> kept;
        for (const auto& m : chosen->members) {
            auto it = patterns.find(m);
            const double own = it == patterns.end()
                                   ? 0.0
                                   : mean_best_match(q.subject, it->second, params.similarity);
            if (own > 0.0) kept.push_back(m);
        }
        if (kept.empty()) kept = chosen->members;

        for (const auto& m : kept) {
            if (m == relay || m == sp0) {
                contacted = sets::with_value(std::move(contacted), m);
                continue;
            }
            if (q.ttl < relay_depth + 1) continue;  // defensive TTL bound
            ++out.messages;
            out.hop_depth = std::max(out.hop_depth, relay_depth + 1);
            contacted = sets::with_value(std::move(contacted), m);
        }
    }

    for (const auto& sp_id : contacted)
        if (screen_peers(n, *n.find_super_peer(sp_id), q, params.theta_peer, params.similarity, out))
            ++responding;

    out.messages += responding;  // one response message per answering super-peer
    out.answers = sets::normalized(std::move(out.answers));
    return out;
}

std::vector<Community> parse_communities(std::istream& in, const std::string& filename) {
    std::vector<Community> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos)
            throw InputError(filename + ":" + std::to_string(lineno) +
                             ": expected '<items...> : <super-peers...>'");
        Community c;
        std::istringstream items(line.substr(0, colon));
        std::string tok;
        while (items >> tok) c.pattern.push_back(tok);
        std::istringstream members(line.substr(colon + 1));
        while (members >> tok) c.members.push_back(tok);
        if (c.members.empty())
            throw InputError(filename + ":" + std::to_string(lineno) +
                             ": community with no super-peers");
        c.pattern = sets::normalized(std::move(c.pattern));
        c.members = sets::normalized(std::move(c.members));
        out.push_back(std::move(c));
    }
    if (out.empty()) throw InputError(filename + ": no communities found");
    return out;
}

std::vector<Strategy> parse_strategies(std::istream& in, const std::string& filename) {
    std::vector<Strategy> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        Strategy s;
        std::string tok;
        while (row >> tok) s.members.push_back(tok);
        if (s.members.empty()) continue;
        s.members = sets::normalized(std::move(s.members));
        out.push_back(std::move(s));
    }
    if (out.empty()) throw InputError(filename + ": no strategies found");
    return out;
}

}  // namespace traverse
