#ifndef TRAVERSE_SIMILARITY_HPP
#define TRAVERSE_SIMILARITY_HPP

#include <functional>
#include <string>
#include <vector>

namespace traverse {

using TermSimilarityFn = std::function<double(const std::string&, const std::string&)>;

/// 1.0 on case-insensitive equality, otherwise the Dice coefficient over
/// character trigrams of the lowercased terms. 0.0 when either term is too
/// short to yield a trigram.
double term_similarity(const std::string& a, const std::string& b);

/// Case-insensitive equality only: 1.0 or 0.0.
double exact_term_similarity(const std::string& a, const std::string& b);

/// max over the pool of sim(term, pool element); 0.0 for an empty pool.
double best_match(const std::string& term, const std::vector<std::string>& pool,
                  const TermSimilarityFn& sim);

/// Mean over `terms` of best_match against `pool`. This is the aggregate
/// used for advertisement acceptance, theme-level relevance and strategy
/// affinity. 0.0 when `terms` is empty.
double mean_best_match(const std::vector<std::string>& terms,
                       const std::vector<std::string>& pool,
                       const TermSimilarityFn& sim);

}  // namespace traverse

#endif
