#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "support/oracles.hpp"
#include "traverse/errors.hpp"
#include "traverse/mining.hpp"
#include "traverse/sorted_sets.hpp"

using namespace traverse;

namespace {

TransactionDataset d1() {
    std::ifstream f(std::string(TRAVERSE_DATA_DIR) + "/d1.txt");
    REQUIRE(f.good());
    return TransactionDataset::parse(f, "d1.txt");
}

std::set<oracles::RawPattern> as_raw(const TransactionDataset& d,
                                     const std::vector<ClosedPattern>& ps) {
    std::set<oracles::RawPattern> out;
    for (const auto& p : ps) {
        const auto items = d.item_labels(p.items);
        const auto ids = d.transaction_ids(p.support);
        out.insert({{items.begin(), items.end()}, {ids.begin(), ids.end()}});
    }
    return out;
}

TransactionDataset from_raw(const oracles::RawDataset& raw) {
    std::vector<TransactionDataset::Row> rows;
    for (const auto& [id, items] : raw.rows)
        rows.push_back({id, {items.begin(), items.end()}});
    return TransactionDataset::from_rows(std::move(rows));
}

}  // namespace

TEST_CASE("closure on the eight-transaction dataset") {
    const auto d = d1();
    CHECK(d.item_labels(closure(d, d.item_indices({"W4"}))) ==
          std::vector<std::string>{"W4", "W5"});
    CHECK(d.item_labels(closure(d, d.item_indices({"W1", "W2"}))) ==
          std::vector<std::string>{"W1", "W2", "W3"});
    CHECK_THROWS_WITH_AS(closure(d, d.item_indices({"W2", "W9"})),
                         doctest::Contains("unsupported pattern"), InputError);
}

TEST_CASE("closure over identical transactions returns the whole row") {
    const auto d = TransactionDataset::from_rows(
        {{"t1", {"a", "b", "c"}}, {"t2", {"a", "b", "c"}}, {"t3", {"a", "b", "c"}}});
    CHECK(d.item_labels(closure(d, d.item_indices({"b"}))) ==
          std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("frequent closed patterns of d1 at 20%") {
    const auto d = d1();
    const auto patterns = frequent_closed_patterns(d, Fraction(1, 5));
    const auto got = as_raw(d, patterns);

    // the four communities the clustering stage later feeds on
    CHECK(got.count({{"W1", "W2", "W3"}, {"SP1", "SP2", "SP3"}}) == 1);
    CHECK(got.count({{"W4", "W5"}, {"SP4", "SP5", "SP6"}}) == 1);
    CHECK(got.count({{"W1", "W6", "W7"}, {"SP6", "SP7"}}) == 1);
    CHECK(got.count({{"W9"}, {"SP7", "SP8"}}) == 1);

    // full list against exhaustive enumeration (min support ceil(0.2*8) = 2)
    oracles::RawDataset raw;
    for (int t = 0; t < d.transaction_count(); ++t) {
        const auto labels = d.item_labels(d.transaction(t));
        raw.rows.emplace_back(d.transaction_id(t),
                              std::set<std::string>(labels.begin(), labels.end()));
    }
    const auto expected = oracles::closed_patterns_bruteforce(raw, 2);
    CHECK(got == std::set<oracles::RawPattern>(expected.begin(), expected.end()));
    CHECK(got.size() == 7);
}

TEST_CASE("minfr = 1 with no universally shared item yields nothing") {
    const auto d = TransactionDataset::from_rows({{"t1", {"a"}}, {"t2", {"b"}}});
    CHECK(frequent_closed_patterns(d, Fraction(1, 1)).empty());
}

TEST_CASE("support counting is exact under the ceiling rule") {
    // 20% of 8 transactions -> support >= 2; a support-1 pattern must not leak
    const auto d = d1();
    for (const auto& p : frequent_closed_patterns(d, Fraction(1, 5)))
        CHECK(p.support.size() >= 2);
    CHECK(min_support(Fraction(1, 5), 8) == 2);
    CHECK(min_support(Fraction(1, 4), 8) == 2);
    CHECK(min_support(Fraction(1, 1), 8) == 8);
}

TEST_CASE("every emitted pattern is closed with exact support") {
    const auto d = d1();
    for (const auto& p : frequent_closed_patterns(d, Fraction(1, 8))) {
        CHECK(closure(d, p.items) == p.items);
        // recompute support by scanning
        std::vector<int> sup;
        for (int t = 0; t < d.transaction_count(); ++t)
            if (sets::is_subset(p.items, d.transaction(t))) sup.push_back(t);
        CHECK(sup == p.support);
        CHECK(p.frequency == Fraction(static_cast<long long>(sup.size()), 8));
    }
}

TEST_CASE("closure is extensive, monotone and idempotent") {
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 50; ++round) {
        const auto raw = oracles::random_dataset(rng, 8, oracles::rand_int(rng, 2, 8));
        const auto d = from_raw(raw);
        const int n_items = static_cast<int>(d.items().size());

        for (int trial = 0; trial < 10; ++trial) {
            // pick a supported seed set: a random subset of a random row
            const auto& row = d.transaction(oracles::rand_int(rng, 0, d.transaction_count() - 1));
            std::vector<int> x;
            for (int item : row)
                if (oracles::rand_int(rng, 0, 1)) x.push_back(item);
            if (x.empty()) x.push_back(row[0]);

            const auto cx = closure(d, x);
            CHECK(sets::is_subset(x, cx));        // extensive
            CHECK(closure(d, cx) == cx);          // idempotent

            // monotone: supported superset y of x has closure(y) >= closure(x)
            auto y = x;
            for (int item : row) y = sets::with_value(std::move(y), item);
            CHECK(sets::is_subset(cx, closure(d, y)));
            (void)n_items;
        }
    }
}

TEST_CASE("miner equals exhaustive enumeration on random datasets") {
    std::mt19937_64 rng(555);
    for (int round = 0; round < 60; ++round) {
        const auto raw = oracles::random_dataset(rng, oracles::rand_int(rng, 2, 10),
                                                 oracles::rand_int(rng, 2, 10));
        const auto d = from_raw(raw);
        const long long minsup_den = oracles::rand_int(rng, 2, 5);
        const Fraction minfr(1, minsup_den);
        const auto got = as_raw(d, frequent_closed_patterns(d, minfr));
        const auto expected = oracles::closed_patterns_bruteforce(
            raw, static_cast<std::size_t>(min_support(minfr, d.transaction_count())));
        CHECK(got == std::set<oracles::RawPattern>(expected.begin(), expected.end()));
    }
}

TEST_CASE("dataset parser validates its input") {
    std::istringstream dup("t1: a b\nt1: c\n");
    CHECK_THROWS_WITH_AS(TransactionDataset::parse(dup, "x.txt"),
                         doctest::Contains("duplicate transaction id"), InputError);

    std::istringstream noitems("t1:\n");
    CHECK_THROWS_WITH_AS(TransactionDataset::parse(noitems, "x.txt"),
                         doctest::Contains("x.txt:1"), InputError);

    std::istringstream nocolon("t1 a b\n");
    CHECK_THROWS_AS(TransactionDataset::parse(nocolon, "x.txt"), InputError);

    std::istringstream empty("# nothing here\n");
    CHECK_THROWS_WITH_AS(TransactionDataset::parse(empty, "x.txt"),
                         doctest::Contains("no transactions"), InputError);
}

TEST_CASE("bad thresholds are rejected") {
    const auto d = d1();
    CHECK_THROWS_AS(frequent_closed_patterns(d, Fraction(0, 1)), InputError);
    CHECK_THROWS_AS(frequent_closed_patterns(d, Fraction(3, 2)), InputError);
    CHECK_THROWS_AS(closure(d, {}), InputError);
}
