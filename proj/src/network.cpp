#include "traverse/network.hpp"

#include <algorithm>
#include <istream>

#include "traverse/errors.hpp"
#include "traverse/sorted_sets.hpp"

namespace traverse {

static void check_theme(const std::string& sp_id, const ThemeDescription& theme) {
    for (const auto& r : theme.roles)
        if (!sets::contains(theme.concepts, r.domain) || !sets::contains(theme.concepts, r.codomain))
            throw InputError("super-peer '" + sp_id + "': role '" + r.label +
                             "' references a concept outside the theme");
    for (const auto& l : theme.isa)
        if (!sets::contains(theme.concepts, l.sub) || !sets::contains(theme.concepts, l.super))
            throw InputError("super-peer '" + sp_id + "': isa link references a concept outside the theme");

    // Kahn's algorithm over the isa edges; leftovers mean a cycle.
    std::map<std::string, int> indegree;
    std::map<std::string, std::vector<std::string>> out_edges;
    for (const auto& l : theme.isa) {
        if (l.sub == l.super)
            throw InputError("super-peer '" + sp_id + "': isa cycle ('" + l.sub + "' isa itself)");
        ++indegree[l.super];
        indegree.try_emplace(l.sub, 0);
        out_edges[l.sub].push_back(l.super);
    }
    std::vector<std::string> ready;
    for (const auto& [node, deg] : indegree)
        if (deg == 0) ready.push_back(node);
    std::size_t visited = 0;
    while (!ready.empty()) {
        const std::string node = ready.back();
        ready.pop_back();
        ++visited;
        for (const auto& next : out_edges[node])
            if (--indegree[next] == 0) ready.push_back(next);
    }
    if (visited != indegree.size())
        throw InputError("super-peer '" + sp_id + "': isa cycle detected");
}

void Network::add_super_peer(SuperPeer sp) {
    if (sp.id.empty()) throw InputError("super-peer id must be non-empty");
    if (super_peers_.count(sp.id) || peers_.count(sp.id))
        throw InputError("duplicate id '" + sp.id + "'");
    sp.theme.concepts = sets::normalized(std::move(sp.theme.concepts));
    sp.theme.roles = sets::normalized(std::move(sp.theme.roles));
    sp.theme.isa = sets::normalized(std::move(sp.theme.isa));
    check_theme(sp.id, sp.theme);
    sp.peers = sets::normalized(std::move(sp.peers));
    sp.neighbors = sets::normalized(std::move(sp.neighbors));
    if (sets::contains(sp.neighbors, sp.id))
        throw InputError("super-peer '" + sp.id + "' links to itself");
    super_peers_[sp.id] = std::move(sp);
}

void Network::add_peer(Peer p) {
    if (p.id.empty()) throw InputError("peer id must be non-empty");
    if (peers_.count(p.id) || super_peers_.count(p.id))
        throw InputError("duplicate id '" + p.id + "'");
    p.expertise = sets::normalized(std::move(p.expertise));
    if (p.expertise.empty()) throw InputError("peer '" + p.id + "' has empty expertise");
    auto sp = super_peers_.find(p.super_peer);
    if (sp == super_peers_.end())
        throw InputError("peer '" + p.id + "': dangling super-peer reference '" + p.super_peer + "'");
    sp->second.peers = sets::with_value(std::move(sp->second.peers), p.id);
    peers_[p.id] = std::move(p);
}

void Network::link_super_peers(const std::string& a, const std::string& b) {
    if (a == b) throw InputError("super-peer '" + a + "' links to itself");
    auto ia = super_peers_.find(a);
    auto ib = super_peers_.find(b);
    if (ia == super_peers_.end()) throw InputError("dangling super-peer reference '" + a + "'");
    if (ib == super_peers_.end()) throw InputError("dangling super-peer reference '" + b + "'");
    ia->second.neighbors = sets::with_value(std::move(ia->second.neighbors), b);
    ib->second.neighbors = sets::with_value(std::move(ib->second.neighbors), a);
}

const Peer* Network::find_peer(const std::string& id) const {
    auto it = peers_.find(id);
    return it == peers_.end() ? nullptr : &it->second;
}

const SuperPeer* Network::find_super_peer(const std::string& id) const {
    auto it = super_peers_.find(id);
    return it == super_peers_.end() ? nullptr : &it->second;
}

void Network::validate() const {
    for (const auto& [id, sp] : super_peers_) {
        check_theme(id, sp.theme);
        for (const auto& nb : sp.neighbors) {
            if (nb == id) throw InputError("super-peer '" + id + "' links to itself");
            auto other = super_peers_.find(nb);
            if (other == super_peers_.end())
                throw InputError("super-peer '" + id + "': dangling super-peer reference '" + nb + "'");
            if (!sets::contains(other->second.neighbors, id))
                throw InputError("asymmetric neighbor link " + id + " -> " + nb);
        }
        for (const auto& pid : sp.peers) {
            auto p = peers_.find(pid);
            if (p == peers_.end())
                throw InputError("super-peer '" + id + "': dangling peer reference '" + pid + "'");
            if (p->second.super_peer != id)
                throw InputError("peer '" + pid + "' back-reference does not match super-peer '" + id + "'");
        }
    }
    for (const auto& [id, p] : peers_) {
        if (p.expertise.empty()) throw InputError("peer '" + id + "' has empty expertise");
        auto sp = super_peers_.find(p.super_peer);
        if (sp == super_peers_.end())
            throw InputError("peer '" + id + "': dangling super-peer reference '" + p.super_peer + "'");
        if (!sets::contains(sp->second.peers, id))
            throw InputError("super-peer '" + p.super_peer + "' is missing peer '" + id + "'");
    }
}

nlohmann::json Network::to_json() const {
    nlohmann::json doc;
    doc["superpeers"] = nlohmann::json::array();
    for (const auto& [id, sp] : super_peers_) {
        nlohmann::json j;
        j["id"] = id;
        j["theme"]["concepts"] = sp.theme.concepts;
        j["theme"]["roles"] = nlohmann::json::array();
        for (const auto& r : sp.theme.roles)
            j["theme"]["roles"].push_back({{"domain", r.domain}, {"label", r.label}, {"codomain", r.codomain}});
        j["theme"]["isa"] = nlohmann::json::array();
        for (const auto& l : sp.theme.isa)
            j["theme"]["isa"].push_back({{"sub", l.sub}, {"super", l.super}});
        j["neighbors"] = sp.neighbors;
        doc["superpeers"].push_back(std::move(j));
    }
    doc["peers"] = nlohmann::json::array();
    for (const auto& [id, p] : peers_) {
        doc["peers"].push_back(
            {{"id", id}, {"superpeer", p.super_peer}, {"expertise", p.expertise}});
    }
    return doc;
}

Network Network::from_json(const nlohmann::json& doc) {
    Network n;
    if (!doc.is_object() || !doc.contains("superpeers") || !doc.contains("peers"))
        throw InputError("topology document needs 'superpeers' and 'peers' arrays");

    for (const auto& j : doc.at("superpeers")) {
        SuperPeer sp;
        sp.id = j.at("id").get<std::string>();
        if (j.contains("theme")) {
            const auto& t = j.at("theme");
            if (t.contains("concepts"))
                sp.theme.concepts = t.at("concepts").get<std::vector<std::string>>();
            if (t.contains("roles"))
                for (const auto& r : t.at("roles"))
                    sp.theme.roles.push_back({r.at("domain").get<std::string>(),
                                              r.at("label").get<std::string>(),
                                              r.at("codomain").get<std::string>()});
            if (t.contains("isa"))
                for (const auto& l : t.at("isa"))
                    sp.theme.isa.push_back(
                        {l.at("sub").get<std::string>(), l.at("super").get<std::string>()});
        }
        n.add_super_peer(std::move(sp));
    }
    // Link after all super-peers exist; input lists may be one-sided, the
    // stored relation is always symmetric.
    for (const auto& j : doc.at("superpeers")) {
        const auto id = j.at("id").get<std::string>();
        if (!j.contains("neighbors")) continue;
        for (const auto& nb : j.at("neighbors"))
            n.link_super_peers(id, nb.get<std::string>());
    }
    for (const auto& j : doc.at("peers")) {
        Peer p;
        p.id = j.at("id").get<std::string>();
        p.super_peer = j.at("superpeer").get<std::string>();
        p.expertise = j.at("expertise").get<std::vector<std::string>>();
        n.add_peer(std::move(p));
    }
    n.validate();
    return n;
}

Network Network::load(std::istream& in, const std::string& filename) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(filename + ": " + e.what());
    }
    try {
        return from_json(doc);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(filename + ": " + e.what());
    } catch (const InputError& e) {
        throw InputError(filename + ": " + e.what());
    }
}

AdvertiseResult advertise(Network& n, const DomainAdvertisement& da,
                          const std::string& target, const TermSimilarityFn& sim) {
    if (da.ttl < 1) throw InputError("advertisement ttl must be >= 1");
    if (da.expertise.empty()) throw InputError("advertisement with empty expertise");
    const SuperPeer* sp = n.find_super_peer(target);
    if (!sp) throw InputError("unknown target super-peer '" + target + "'");
    if (n.find_peer(da.peer_id))
        throw InputError("peer '" + da.peer_id + "' is already attached; reattachment rejected");

    const auto expertise = sets::normalized(da.expertise);
    const double similarity = mean_best_match(expertise, sp->theme.concepts, sim);
    if (similarity < da.min_similarity) return {false, similarity};

    n.add_peer({da.peer_id, expertise, target});
    return {true, similarity};
}

}  // namespace traverse
