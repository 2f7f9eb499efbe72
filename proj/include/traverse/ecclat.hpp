#ifndef TRAVERSE_ECCLAT_HPP
#define TRAVERSE_ECCLAT_HPP

#include <vector>

#include "traverse/mining.hpp"

namespace traverse {

/// A selected cluster: a closed pattern plus its evaluation measures.
/// interestingness is exactly the mean of homogeneity and concentration.
struct Cluster {
    ClosedPattern pattern;
    double homogeneity = 0.0;
    double concentration = 0.0;
    double interestingness = 0.0;
};

/// Result of the greedy overlapping selection.
/// Every cluster after the first covers at least `min_new_transactions`
/// transactions not covered by earlier picks; `unclassified` is whatever no
/// selected cluster covers.
struct Clustering {
    std::vector<Cluster> selected;      // in selection order
    std::vector<int> unclassified;      // sorted transaction indices
    Fraction minfr;
    int min_new_transactions = 1;
};

/// frequency(c) times the mean, over supporting transactions, of the share
/// of the transaction's items the pattern explains. High when many items are
/// shared by many transactions. Range [0, 1].
double homogeneity(const ClosedPattern& c, const TransactionDataset& d);

/// Mean over supporting transactions of 1/n_t, where n_t counts candidates
/// whose support contains the transaction. Penalises heavily shared
/// transactions. Range (0, 1]; c must be one of the candidates.
double concentration(const ClosedPattern& c, const std::vector<ClosedPattern>& candidates);

double interestingness(double homogeneity_value, double concentration_value);

/// Greedy selection: take the most interesting candidate, then repeatedly
/// take the most interesting unselected candidate that still contributes at
/// least `min_new_transactions` uncovered transactions, until everything is
/// covered or no candidate qualifies. Ties break on larger new coverage,
/// then lexicographically smaller pattern.
Clustering select_clusters(const std::vector<ClosedPattern>& candidates,
                           const TransactionDataset& d,
                           int min_new_transactions,
                           const Fraction& minfr = Fraction());

}  // namespace traverse

#endif
