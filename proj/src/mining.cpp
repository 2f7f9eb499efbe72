#include "traverse/mining.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>

#include "traverse/errors.hpp"
#include "traverse/sorted_sets.hpp"

namespace traverse {

TransactionDataset TransactionDataset::from_rows(std::vector<Row> rows) {
    TransactionDataset d;

    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.id < b.id; });
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
        if (rows[i].id == rows[i + 1].id)
            throw InputError("duplicate transaction id '" + rows[i].id + "'");

    std::vector<std::string> all_items;
    for (const auto& r : rows) {
        if (r.items.empty())
            throw InputError("transaction '" + r.id + "' has no items");
        all_items.insert(all_items.end(), r.items.begin(), r.items.end());
    }
    d.items_ = sets::normalized(std::move(all_items));
    for (std::size_t i = 0; i < d.items_.size(); ++i)
        d.item_index_[d.items_[i]] = static_cast<int>(i);

    d.tidlists_.assign(d.items_.size(), {});
    for (const auto& r : rows) {
        const int t = static_cast<int>(d.ids_.size());
        d.ids_.push_back(r.id);
        std::vector<int> row;
        row.reserve(r.items.size());
        for (const auto& label : r.items) row.push_back(d.item_index_.at(label));
        d.rows_.push_back(sets::normalized(std::move(row)));
        for (int item : d.rows_.back()) d.tidlists_[item].push_back(t);
    }
    return d;
}

TransactionDataset TransactionDataset::parse(std::istream& in, const std::string& filename) {
    std::vector<Row> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos)
            throw InputError(filename + ":" + std::to_string(lineno) +
                             ": expected '<transaction-id>: <items...>'");
        Row r;
        std::istringstream id_part(line.substr(0, colon));
        id_part >> r.id;
        std::string extra;
        if (r.id.empty() || (id_part >> extra))
            throw InputError(filename + ":" + std::to_string(lineno) + ": bad transaction id");
        std::istringstream item_part(line.substr(colon + 1));
        std::string tok;
        while (item_part >> tok) r.items.push_back(tok);
        if (r.items.empty())
            throw InputError(filename + ":" + std::to_string(lineno) +
                             ": transaction '" + r.id + "' has no items");
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw InputError(filename + ": no transactions found");
    try {
        return from_rows(std::move(rows));
    } catch (const InputError& e) {
        throw InputError(filename + ": " + e.what());
    }
}

int TransactionDataset::item_index(const std::string& label) const {
    auto it = item_index_.find(label);
    return it == item_index_.end() ? -1 : it->second;
}

std::vector<int> TransactionDataset::item_indices(const std::vector<std::string>& labels) const {
    std::vector<int> out;
    out.reserve(labels.size());
    for (const auto& l : labels) {
        const int idx = item_index(l);
        if (idx < 0) throw InputError("item '" + l + "' is not in the dataset");
        out.push_back(idx);
    }
    return sets::normalized(std::move(out));
}

std::vector<std::string> TransactionDataset::item_labels(const std::vector<int>& idx) const {
    std::vector<std::string> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(items_.at(i));
    return out;
}

std::vector<std::string> TransactionDataset::transaction_ids(const std::vector<int>& idx) const {
    std::vector<std::string> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(ids_.at(i));
    return out;
}

int TransactionDataset::transaction_index(const std::string& id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return -1;
    return static_cast<int>(it - ids_.begin());
}

static std::vector<int> support_of(const TransactionDataset& d, const std::vector<int>& items) {
    std::vector<int> sup;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto& tids = d.containing(items[i]);
        sup = (i == 0) ? tids : sets::intersect(sup, tids);
        if (sup.empty()) break;
    }
    return sup;
}

static std::vector<int> intersect_rows(const TransactionDataset& d, const std::vector<int>& tids) {
    std::vector<int> out;
    for (std::size_t i = 0; i < tids.size(); ++i) {
        const auto& row = d.transaction(tids[i]);
        out = (i == 0) ? row : sets::intersect(out, row);
        if (out.empty()) break;
    }
    return out;
}

std::vector<int> closure(const TransactionDataset& d, const std::vector<int>& item_set) {
    if (item_set.empty()) throw InputError("closure of an empty item set is undefined here");
    for (int i : item_set)
        if (i < 0 || i >= static_cast<int>(d.items().size()))
            throw InputError("item index out of range");
    const auto sup = support_of(d, item_set);
    if (sup.empty())
        throw InputError("unsupported pattern {" + [&] {
            std::string s;
            for (int i : item_set) s += (s.empty() ? "" : " ") + d.items()[i];
            return s;
        }() + "}: no transaction contains it");
    return intersect_rows(d, sup);
}

std::vector<ClosedPattern> frequent_closed_patterns(const TransactionDataset& d,
                                                    const Fraction& minfr) {
    if (minfr.num <= 0 || minfr.num > minfr.den)
        throw InputError("minimum frequency must be in (0, 1]");
    const int n = d.transaction_count();
    if (n == 0) return {};
    const long long minsup = min_support(minfr, n);

    // Worklist walk of the closed-set lattice from the bottom closure.
    // For a frequent closed pattern c and closed p < c, any i in c\p gives
    // closure(p+{i}) <= c, still frequent; so pruning by support never cuts
    // off a frequent closed set.
    std::vector<int> all(n);
    for (int t = 0; t < n; ++t) all[t] = t;

    std::set<std::vector<int>> seen;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> work;  // (pattern, support)
    const std::vector<int> bottom = intersect_rows(d, all);
    seen.insert(bottom);
    work.emplace_back(bottom, all);

    std::vector<ClosedPattern> out;
    while (!work.empty()) {
        auto [pattern, sup] = std::move(work.back());
        work.pop_back();
        if (!pattern.empty())
            out.push_back({pattern, sup, Fraction(static_cast<long long>(sup.size()), n)});
        for (int item = 0; item < static_cast<int>(d.items().size()); ++item) {
            if (sets::contains(pattern, item)) continue;
            const auto ext_sup = sets::intersect(sup, d.containing(item));
            if (static_cast<long long>(ext_sup.size()) < minsup) continue;
            auto ext = intersect_rows(d, ext_sup);
            if (seen.insert(ext).second) work.emplace_back(std::move(ext), ext_sup);
        }
    }

    std::sort(out.begin(), out.end(),
              [](const ClosedPattern& a, const ClosedPattern& b) { return a.items < b.items; });
    return out;
}

}  // namespace traverse
