#include "traverse/routing_baseline.hpp"

#include <algorithm>

#include "traverse/errors.hpp"
#include "traverse/sorted_sets.hpp"

namespace traverse {

double cap(const Peer& p, const Query& q, const TermSimilarityFn& sim) {
    if (q.subject.empty()) throw InputError("query '" + q.id + "' has an empty subject");
    if (p.expertise.empty()) throw InputError("peer '" + p.id + "' has empty expertise");
    return mean_best_match(q.subject, p.expertise, sim);
}

double theme_relevance(const ThemeDescription& theme, const Query& q,
                       const TermSimilarityFn& sim) {
    if (q.subject.empty()) throw InputError("query '" + q.id + "' has an empty subject");
    return mean_best_match(q.subject, theme.concepts, sim);
}

// Screens every peer of `sp`; qualifying peers land in out.answers.
// Returns true when the super-peer found at least one answer.
static bool evaluate_super_peer(const Network& n, const SuperPeer& sp, const Query& q,
                                double theta_peer, const TermSimilarityFn& sim,
                                RoutingOutcome& out) {
    bool any = false;
    for (const auto& pid : sp.peers) {
        const Peer* p = n.find_peer(pid);
        ++out.cap_evaluations;
        if (cap(*p, q, sim) >= theta_peer) {
            out.answers.push_back({pid, sp.id});
            any = true;
        }
    }
    return any;
}

RoutingOutcome route_baseline(const Network& n, const Query& q, const BaselineParams& params) {
    if (q.subject.empty()) throw InputError("query '" + q.id + "' has an empty subject");
    if (q.ttl < 1) throw InputError("query '" + q.id + "' has ttl < 1");
    const Peer* source = n.find_peer(q.source_peer);
    if (!source) throw InputError("unknown source peer '" + q.source_peer + "'");
    const SuperPeer* sp0 = n.find_super_peer(source->super_peer);

    RoutingOutcome out;
    out.messages = 1;  // source peer -> its super-peer
    out.hop_depth = 1;

    int responding = 0;
    if (evaluate_super_peer(n, *sp0, q, params.theta_peer, params.similarity, out)) ++responding;

    // Second level: forward to relevant neighbor super-peers. They screen
    // only their own peers; there is no transitive forwarding.
    if (q.ttl >= 2) {
        for (const auto& nb_id : sp0->neighbors) {
            const SuperPeer* nb = n.find_super_peer(nb_id);
            if (theme_relevance(nb->theme, q, params.similarity) < params.theta_sp) continue;
            ++out.messages;
            out.hop_depth = 2;
            if (evaluate_super_peer(n, *nb, q, params.theta_peer, params.similarity, out))
                ++responding;
        }
    }

    out.messages += responding;  // one response message per answering super-peer
    out.answers = sets::normalized(std::move(out.answers));
    return out;
}

}  // namespace traverse
