#ifndef TRAVERSE_MINING_HPP
#define TRAVERSE_MINING_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "traverse/fraction.hpp"

namespace traverse {

/// Binary transactional dataset: rows are transactions, columns are items.
/// Items and transactions are addressed by index into sorted label tables.
class TransactionDataset {
public:
    struct Row {
        std::string id;
        std::vector<std::string> items;
    };

    TransactionDataset() = default;

    /// Validates: unique transaction ids, non-empty rows.
    static TransactionDataset from_rows(std::vector<Row> rows);

    /// Text format: `<transaction-id>: <item> <item> ...`, '#' comments.
    static TransactionDataset parse(std::istream& in, const std::string& filename = "<input>");

    const std::vector<std::string>& items() const { return items_; }
    int transaction_count() const { return static_cast<int>(ids_.size()); }
    const std::string& transaction_id(int t) const { return ids_[t]; }
    const std::vector<int>& transaction(int t) const { return rows_[t]; }
    /// Transactions containing the item, sorted (the item's tid-list).
    const std::vector<int>& containing(int item) const { return tidlists_[item]; }

    int item_index(const std::string& label) const;
    std::vector<int> item_indices(const std::vector<std::string>& labels) const;
    std::vector<std::string> item_labels(const std::vector<int>& idx) const;
    std::vector<std::string> transaction_ids(const std::vector<int>& idx) const;
    int transaction_index(const std::string& id) const;

private:
    std::vector<std::string> items_;
    std::map<std::string, int> item_index_;
    std::vector<std::string> ids_;            // sorted
    std::vector<std::vector<int>> rows_;      // sorted item indices per transaction
    std::vector<std::vector<int>> tidlists_;  // per item
};

/// A closed pattern together with its exact support.
/// Invariants: support is exactly the set of transactions containing the
/// pattern, the pattern equals the intersection of those transactions, and
/// frequency == |support| / |transactions|.
struct ClosedPattern {
    std::vector<int> items;    // sorted item indices
    std::vector<int> support;  // sorted transaction indices
    Fraction frequency;

    bool operator==(const ClosedPattern&) const = default;
};

/// Intersection of all transactions containing x (x non-empty, supported).
/// Throws InputError("unsupported pattern ...") when no transaction has x.
std::vector<int> closure(const TransactionDataset& d, const std::vector<int>& item_set);

/// All non-empty closed patterns with frequency >= minfr, sorted by item
/// sequence. Enumerated by closure-based extension from the bottom closure
/// with duplicate pruning; agrees with exhaustive subset enumeration.
std::vector<ClosedPattern> frequent_closed_patterns(const TransactionDataset& d,
                                                    const Fraction& minfr);

}  // namespace traverse

#endif
