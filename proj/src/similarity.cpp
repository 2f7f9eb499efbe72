#include "traverse/similarity.hpp"

#include <algorithm>
#include <cctype>

#include "traverse/sorted_sets.hpp"

namespace traverse {

static std::string lowercase(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

static std::vector<std::string> trigrams(const std::string& s) {
    std::vector<std::string> grams;
    if (s.size() < 3) return grams;
    for (std::size_t i = 0; i + 3 <= s.size(); ++i) grams.push_back(s.substr(i, 3));
    return sets::normalized(std::move(grams));
}

double term_similarity(const std::string& a, const std::string& b) {
    const std::string la = lowercase(a);
    const std::string lb = lowercase(b);
    if (la == lb) return 1.0;
    const auto ga = trigrams(la);
    const auto gb = trigrams(lb);
    if (ga.empty() || gb.empty()) return 0.0;
    const auto common = sets::intersect(ga, gb);
    return 2.0 * static_cast<double>(common.size()) /
           static_cast<double>(ga.size() + gb.size());
}

double exact_term_similarity(const std::string& a, const std::string& b) {
    return lowercase(a) == lowercase(b) ? 1.0 : 0.0;
}

double best_match(const std::string& term, const std::vector<std::string>& pool,
                  const TermSimilarityFn& sim) {
    double best = 0.0;
    for (const auto& candidate : pool) best = std::max(best, sim(term, candidate));
    return best;
}

double mean_best_match(const std::vector<std::string>& terms,
                       const std::vector<std::string>& pool,
                       const TermSimilarityFn& sim) {
    if (terms.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& t : terms) sum += best_match(t, pool, sim);
    return sum / static_cast<double>(terms.size());
}

}  // namespace traverse
