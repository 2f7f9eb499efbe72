#ifndef TRAVERSE_NETWORK_HPP
#define TRAVERSE_NETWORK_HPP

#include <compare>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "traverse/similarity.hpp"

namespace traverse {

struct Role {
    std::string domain;
    std::string label;
    std::string codomain;
    auto operator<=>(const Role&) const = default;
};

struct IsaLink {
    std::string sub;
    std::string super;
    auto operator<=>(const IsaLink&) const = default;
};

/// A super-peer's published domain description. Role and IsA endpoints must
/// be declared concepts; the IsA relation must be acyclic.
struct ThemeDescription {
    std::vector<std::string> concepts;  // sorted unique
    std::vector<Role> roles;
    std::vector<IsaLink> isa;
    bool operator==(const ThemeDescription&) const = default;
};

struct Peer {
    std::string id;
    std::vector<std::string> expertise;  // sorted unique, non-empty
    std::string super_peer;
    bool operator==(const Peer&) const = default;
};

struct SuperPeer {
    std::string id;
    ThemeDescription theme;
    std::vector<std::string> peers;      // maintained by Network
    std::vector<std::string> neighbors;  // symmetric, no self-loop
    bool operator==(const SuperPeer&) const = default;
};

/// Advertisement a peer sends to join a super-peer: its expertise, a topic
/// label, the minimum similarity it accepts for the mapping, and a TTL.
struct DomainAdvertisement {
    std::string peer_id;
    std::vector<std::string> expertise;
    std::string topic;
    double min_similarity = 0.0;  // acceptance threshold in [0, 1]
    int ttl = 1;
};

/// Hybrid peer / super-peer overlay. Built once, immutable while routing.
class Network {
public:
    void add_super_peer(SuperPeer sp);
    /// Attaches the peer to its super-peer; both directions are maintained.
    void add_peer(Peer p);
    /// Symmetric link; a == b is rejected.
    void link_super_peers(const std::string& a, const std::string& b);

    const std::map<std::string, Peer>& peers() const { return peers_; }
    const std::map<std::string, SuperPeer>& super_peers() const { return super_peers_; }
    const Peer* find_peer(const std::string& id) const;
    const SuperPeer* find_super_peer(const std::string& id) const;

    /// Full invariant check: referential integrity, neighbor symmetry,
    /// no self-loops, back-references, IsA acyclicity. Throws InputError.
    void validate() const;

    nlohmann::json to_json() const;
    static Network from_json(const nlohmann::json& doc);
    static Network load(std::istream& in, const std::string& filename = "<input>");

    bool operator==(const Network&) const = default;

private:
    std::map<std::string, Peer> peers_;
    std::map<std::string, SuperPeer> super_peers_;
};

struct AdvertiseResult {
    bool accepted = false;
    double similarity = 0.0;
};

/// A new peer advertises to a target super-peer: accepted iff the mean best
/// similarity between its expertise terms and the target theme's concepts
/// reaches the advertisement's threshold. On acceptance the peer joins the
/// network. Re-advertising an attached peer or naming an unknown target is
/// an error.
AdvertiseResult advertise(Network& n, const DomainAdvertisement& da,
                          const std::string& target, const TermSimilarityFn& sim);

}  // namespace traverse

#endif
