#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "support/oracles.hpp"
#include "traverse/errors.hpp"
#include "traverse/hypergraph.hpp"
#include "traverse/routing_transversal.hpp"
#include "traverse/sorted_sets.hpp"

using namespace traverse;

namespace {

Network topology10() {
    std::ifstream f(std::string(TRAVERSE_DATA_DIR) + "/topology10.json");
    REQUIRE(f.good());
    return Network::load(f, "topology10.json");
}

CommunitySet communities_d2() {
    std::ifstream f(std::string(TRAVERSE_DATA_DIR) + "/communities_d2.txt");
    REQUIRE(f.good());
    return CommunitySet{parse_communities(f, "communities_d2.txt")};
}

std::set<std::vector<std::string>> member_sets(const std::vector<Strategy>& ss) {
    std::set<std::vector<std::string>> out;
    for (const auto& s : ss) out.insert(s.members);
    return out;
}

}  // namespace

TEST_CASE("expertise dataset from peer expertise unions") {
    const Network n = topology10();
    const auto ed = expertise_dataset(n);
    CHECK(ed.excluded_super_peers.empty());
    CHECK(ed.dataset.transaction_count() == 10);

    // SP1 hosts P01 {W5 W6 W8} and P02 {W2 W4}
    const int t = ed.dataset.transaction_index("SP1");
    REQUIRE(t >= 0);
    CHECK(ed.dataset.item_labels(ed.dataset.transaction(t)) ==
          std::vector<std::string>{"W2", "W4", "W5", "W6", "W8"});
}

TEST_CASE("identical expertise everywhere gives identical transactions") {
    Network n;
    for (int i = 0; i < 3; ++i) n.add_super_peer({"S" + std::to_string(i), {}, {}, {}});
    n.link_super_peers("S0", "S1");
    n.link_super_peers("S1", "S2");
    for (int i = 0; i < 3; ++i)
        n.add_peer({"P" + std::to_string(i), {"a", "b"}, "S" + std::to_string(i)});
    const auto ed = expertise_dataset(n);
    for (int t = 0; t < ed.dataset.transaction_count(); ++t)
        CHECK(ed.dataset.item_labels(ed.dataset.transaction(t)) ==
              std::vector<std::string>{"a", "b"});
}

TEST_CASE("super-peers without items are excluded and reported") {
    Network n;
    n.add_super_peer({"S0", {}, {}, {}});
    n.add_super_peer({"S1", {}, {}, {}});
    n.link_super_peers("S0", "S1");
    n.add_peer({"P0", {"a"}, "S0"});
    const auto ed = expertise_dataset(n);
    CHECK(ed.excluded_super_peers == std::vector<std::string>{"S1"});
    CHECK(ed.dataset.transaction_count() == 1);
}

TEST_CASE("query log replay matches an independent tally") {
    const Network n = topology10();
    std::vector<std::string> sp_ids;
    for (const auto& [id, sp] : n.super_peers()) sp_ids.push_back(id);

    std::mt19937_64 rng(77);
    std::vector<QueryLogEntry> log;
    std::map<std::string, std::set<std::string>> tally;
    for (int i = 0; i < 100; ++i) {
        QueryLogEntry e;
        e.super_peer = sp_ids[static_cast<std::size_t>(
            oracles::rand_int(rng, 0, static_cast<int>(sp_ids.size()) - 1))];
        const int terms = oracles::rand_int(rng, 1, 3);
        for (int k = 0; k < terms; ++k)
            e.components.push_back("C" + std::to_string(oracles::rand_int(rng, 0, 20)));
        for (const auto& c : e.components) tally[e.super_peer].insert(c);
        log.push_back(std::move(e));
    }

    const auto ed = expertise_dataset(n, &log);
    CHECK(ed.dataset.transaction_count() + static_cast<int>(ed.excluded_super_peers.size()) == 10);
    for (int t = 0; t < ed.dataset.transaction_count(); ++t) {
        const auto& expect = tally.at(ed.dataset.transaction_id(t));
        const auto got = ed.dataset.item_labels(ed.dataset.transaction(t));
        CHECK(std::set<std::string>(got.begin(), got.end()) == expect);
    }
    for (const auto& sp : ed.excluded_super_peers) CHECK(tally.find(sp) == tally.end());

    std::vector<QueryLogEntry> bad{{"SPX", {"c"}}};
    CHECK_THROWS_AS(expertise_dataset(n, &bad), InputError);
}

TEST_CASE("strategies of the five-community hypergraph") {
    const auto cs = communities_d2();
    const auto strategies = build_strategies(cs);
    const auto got = member_sets(strategies);

    CHECK(got.count({"SP1", "SP2", "SP6"}) == 1);
    CHECK(got.count({"SP1", "SP6", "SP8"}) == 1);

    // cross-check the full list against the exhaustive oracle
    std::vector<std::vector<std::string>> edges;
    for (const auto& c : cs.communities) edges.push_back(c.members);
    const Hypergraph h = Hypergraph::from_edges(edges);
    std::set<std::vector<std::string>> expected;
    for (const auto& t : min_transversals_bruteforce(h)) expected.insert(h.labels(t));
    CHECK(got == expected);

    // every strategy covers every community, and the family is an antichain
    for (const auto& s : strategies) {
        for (const auto& c : cs.communities)
            CHECK(sets::intersects(s.members, c.members));
        CHECK(is_minimal_transversal(h, h.vertex_set(s.members)));
    }
    for (const auto& a : strategies)
        for (const auto& b : strategies)
            if (a.members != b.members) CHECK_FALSE(sets::is_subset(a.members, b.members));

    // sorted by cardinality, then lexicographically
    for (std::size_t i = 0; i + 1 < strategies.size(); ++i) {
        const auto& a = strategies[i].members;
        const auto& b = strategies[i + 1].members;
        CHECK((a.size() < b.size() || (a.size() == b.size() && a < b)));
    }
}

TEST_CASE("single community yields one singleton strategy per member") {
    const CommunitySet cs{{{{"x"}, {"SPA", "SPB"}}}};
    const auto strategies = build_strategies(cs);
    CHECK(member_sets(strategies) ==
          std::set<std::vector<std::string>>{{"SPA"}, {"SPB"}});
}

TEST_CASE("duplicate community member sets collapse") {
    const CommunitySet cs{{{{"x"}, {"SPA", "SPB"}}, {{"y"}, {"SPA", "SPB"}}}};
    CHECK(build_strategies(cs).size() == 2);
    CHECK(build_strategies(CommunitySet{}).empty());
}

TEST_CASE("one-strategy route follows the smallest strategy through the source") {
    const Network n = topology10();
    const auto cs = communities_d2();
    const auto strategies = build_strategies(cs);

    // W21 belongs only to the {SP2 SP8 SP9} community's pattern. The chosen
    // strategy is the lexicographically smallest 3-set containing SP1; the
    // filter keeps only SP2 of it. Hand trace: P01->SP1, SP1->SP2, SP2
    // answers with P03. One response message.
    const Query q{"Q", "P01", {"W21"}, 8};
    const auto r = one_strategy_route(n, q, strategies, cs, {0.5, exact_term_similarity});

    CHECK(r.answers == std::vector<Answer>{{"P03", "SP2"}});
    CHECK(r.messages == 3);
    CHECK(r.hop_depth == 2);
    CHECK(r.cap_evaluations == 4);  // SP1's two peers + SP2's two peers
}

TEST_CASE("a second hand trace: query matching a different community") {
    const Network n = topology10();
    const auto cs = communities_d2();
    const auto strategies = build_strategies(cs);

    // W45 and W46 live only in the {SP5 SP6 SP10} community's pattern.
    // Source P06 sits on SP4; smallest strategy through SP4 is {SP2 SP4 SP5};
    // the filter keeps SP5 alone. SP5 has no peer clearing theta, SP4's P06
    // does not match either, so no responses flow back.
    const Query q{"Q", "P06", {"W45", "W46"}, 8};
    const auto r = one_strategy_route(n, q, strategies, cs, {0.75, exact_term_similarity});

    CHECK(r.answers.empty());
    CHECK(r.messages == 2);  // uplink + SP4->SP5
    CHECK(r.hop_depth == 2);
    CHECK(r.cap_evaluations == 3);  // P06 on SP4, P07 and P08 on SP5
}

TEST_CASE("source super-peer outside every strategy bridges to a member") {
    const Network n = topology10();
    const auto cs = communities_d2();
    // only the four-member strategy exists; SP1 is not on it
    const std::vector<Strategy> strategies{{{"SP10", "SP3", "SP7", "SP8"}}};

    const Query q{"Q", "P01", {"W21"}, 8};
    const auto r = one_strategy_route(n, q, strategies, cs, {0.5, exact_term_similarity});

    // bridge goes to SP10 (lexicographically first strategy member adjacent
    // to SP1), the filter keeps SP8, whose peer P12 answers
    CHECK(r.answers == std::vector<Answer>{{"P12", "SP8"}});
    CHECK(r.messages == 4);  // uplink, bridge, SP10->SP8, one response
    CHECK(r.hop_depth == 3);
    CHECK(r.cap_evaluations == 4);  // SP1's two peers + SP8's two peers
}

TEST_CASE("subject with no community affinity keeps the whole strategy") {
    const Network n = topology10();
    const auto cs = communities_d2();
    std::vector<std::string> all_sps;
    for (const auto& [id, sp] : n.super_peers()) all_sps.push_back(id);
    const std::vector<Strategy> everything{{all_sps}};

    const Query q{"Q", "P01", {"zzz"}, 8};
    const auto r = one_strategy_route(n, q, everything, cs, {0.0, exact_term_similarity});

    // theta 0 and full coverage: every peer of the network answers
    std::set<std::string> got;
    for (const auto& a : r.answers) got.insert(a.peer);
    std::set<std::string> expected;
    for (const auto& [id, p] : n.peers()) expected.insert(id);
    CHECK(got == expected);
}

TEST_CASE("no strategies is an error") {
    const Network n = topology10();
    const Query q{"Q", "P01", {"W21"}, 8};
    CHECK_THROWS_WITH_AS(one_strategy_route(n, q, {}, communities_d2(), {}),
                         doctest::Contains("no routing strategies built"), InputError);
}

TEST_CASE("contact bound and no-fallback invariant over seeded queries") {
    // one peer per super-peer makes contacted super-peers countable from
    // cap evaluations
    Network n;
    const auto cs = communities_d2();
    for (int i = 1; i <= 10; ++i) n.add_super_peer({"SP" + std::to_string(i), {}, {}, {}});
    for (int i = 2; i <= 10; ++i) n.link_super_peers("SP1", "SP" + std::to_string(i));
    const std::vector<std::string> vocab{"W2", "W4", "W5", "W6", "W8", "W17", "W19",
                                         "W21", "W36", "W37", "W40", "W45", "zzz"};
    std::mt19937_64 rng(123);
    for (int i = 1; i <= 10; ++i)
        n.add_peer({"P" + std::to_string(i),
                    {vocab[static_cast<std::size_t>(oracles::rand_int(rng, 0, 11))]},
                    "SP" + std::to_string(i)});
    n.validate();

    const auto strategies = build_strategies(cs);
    std::size_t max_size = 0;
    std::vector<std::string> strategy_members;
    for (const auto& s : strategies) {
        max_size = std::max(max_size, s.members.size());
        strategy_members = sets::unite(strategy_members, s.members);
    }
    const bool all_covered = strategy_members.size() == 10;

    for (int round = 0; round < 50; ++round) {
        Query q{"Q", "P" + std::to_string(oracles::rand_int(rng, 1, 10)),
                {vocab[static_cast<std::size_t>(oracles::rand_int(rng, 0, 12))]}, 8};
        const auto r = one_strategy_route(n, q, strategies, cs, {0.5, exact_term_similarity});
        CHECK(r.cap_evaluations <= static_cast<long long>(max_size) + 1);
        if (all_covered) CHECK(r.hop_depth <= 2);  // fallback never taken

        const auto again = one_strategy_route(n, q, strategies, cs, {0.5, exact_term_similarity});
        CHECK(again.answers == r.answers);
        CHECK(again.messages == r.messages);
    }
}

TEST_CASE("communities round-trip through the text format") {
    const auto cs = communities_d2();
    CHECK(cs.communities.size() == 5);
    std::string text;
    for (const auto& c : cs.communities) {
        for (const auto& i : c.pattern) text += i + " ";
        text += ": ";
        for (const auto& m : c.members) text += m + " ";
        text += "\n";
    }
    std::istringstream in(text);
    const auto reparsed = parse_communities(in, "round");
    CHECK(reparsed == cs.communities);

    std::istringstream bad("no colon here\n");
    CHECK_THROWS_AS(parse_communities(bad, "bad"), InputError);
    std::istringstream empty_members("a b :\n");
    CHECK_THROWS_AS(parse_communities(empty_members, "bad"), InputError);
}

TEST_CASE("strategy files parse one strategy per line") {
    std::istringstream in("SP2 SP1\n# comment\nSP3\n");
    const auto ss = parse_strategies(in, "s.txt");
    REQUIRE(ss.size() == 2);
    CHECK(ss[0].members == std::vector<std::string>{"SP1", "SP2"});
    CHECK(ss[1].members == std::vector<std::string>{"SP3"});

    std::istringstream empty("# only comments\n");
    CHECK_THROWS_AS(parse_strategies(empty, "s.txt"), InputError);
}
