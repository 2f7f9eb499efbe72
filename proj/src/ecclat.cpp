#include "traverse/ecclat.hpp"

#include <algorithm>

#include "traverse/errors.hpp"
#include "traverse/sorted_sets.hpp"

namespace traverse {

double homogeneity(const ClosedPattern& c, const TransactionDataset& d) {
    if (c.support.empty()) throw InputError("cluster with empty support");
    double coverage_sum = 0.0;
    for (int t : c.support)
        coverage_sum += static_cast<double>(c.items.size()) /
                        static_cast<double>(d.transaction(t).size());
    const double mean_coverage = coverage_sum / static_cast<double>(c.support.size());
    return c.frequency.value() * mean_coverage;
}

double concentration(const ClosedPattern& c, const std::vector<ClosedPattern>& candidates) {
    if (c.support.empty()) throw InputError("cluster with empty support");
    double sum = 0.0;
    for (int t : c.support) {
        int n_t = 0;
        for (const auto& cand : candidates)
            if (sets::contains(cand.support, t)) ++n_t;
        if (n_t == 0)
            throw InputError("concentration requires the cluster to be among the candidates");
        sum += 1.0 / static_cast<double>(n_t);
    }
    return sum / static_cast<double>(c.support.size());
}

double interestingness(double homogeneity_value, double concentration_value) {
    return (homogeneity_value + concentration_value) / 2.0;
}

Clustering select_clusters(const std::vector<ClosedPattern>& candidates,
                           const TransactionDataset& d,
                           int min_new_transactions,
                           const Fraction& minfr) {
    if (min_new_transactions < 1) throw InputError("min_new_transactions must be >= 1");

    Clustering result;
    result.minfr = minfr;
    result.min_new_transactions = min_new_transactions;

    std::vector<Cluster> scored;
    scored.reserve(candidates.size());
    for (const auto& c : candidates) {
        Cluster cl;
        cl.pattern = c;
        cl.homogeneity = homogeneity(c, d);
        cl.concentration = concentration(c, candidates);
        cl.interestingness = interestingness(cl.homogeneity, cl.concentration);
        scored.push_back(std::move(cl));
    }

    std::vector<bool> taken(scored.size(), false);
    std::vector<bool> covered(d.transaction_count(), false);
    int uncovered = d.transaction_count();

    auto new_coverage = [&](const Cluster& cl) {
        int fresh = 0;
        for (int t : cl.pattern.support)
            if (!covered[t]) ++fresh;
        return fresh;
    };

    bool first_pick = true;
    while (uncovered > 0) {
        int best = -1;
        int best_fresh = 0;
        for (std::size_t i = 0; i < scored.size(); ++i) {
            if (taken[i]) continue;
            const int fresh = new_coverage(scored[i]);
            if (!first_pick && fresh < min_new_transactions) continue;
            if (best < 0) {
                best = static_cast<int>(i);
                best_fresh = fresh;
                continue;
            }
            const auto& a = scored[i];
            const auto& b = scored[best];
            const bool wins = a.interestingness != b.interestingness
                                  ? a.interestingness > b.interestingness
                              : fresh != best_fresh ? fresh > best_fresh
                                                    : a.pattern.items < b.pattern.items;
            if (wins) {
                best = static_cast<int>(i);
                best_fresh = fresh;
            }
        }
        if (best < 0) break;  // no eligible candidate left
        taken[best] = true;
        first_pick = false;
        for (int t : scored[best].pattern.support) {
            if (!covered[t]) {
                covered[t] = true;
                --uncovered;
            }
        }
        result.selected.push_back(scored[best]);
    }

    for (int t = 0; t < d.transaction_count(); ++t)
        if (!covered[t]) result.unclassified.push_back(t);
    return result;
}

}  // namespace traverse
