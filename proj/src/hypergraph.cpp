#include "traverse/hypergraph.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <sstream>

#include "traverse/errors.hpp"
#include "traverse/sorted_sets.hpp"

namespace traverse {

void Hypergraph::add_edge(VertexSet edge) {
    if (edge.empty()) throw InputError("hypergraph edge must be non-empty");
    for (const auto& existing : edges_)
        if (existing == edge) throw InputError("duplicate hyperedge rejected");
    edges_.push_back(std::move(edge));
}

Hypergraph::Hypergraph(std::vector<std::string> vertices,
                       const std::vector<std::vector<std::string>>& edge_labels) {
    vertices_ = sets::normalized(std::move(vertices));
    for (std::size_t i = 0; i < vertices_.size(); ++i) index_[vertices_[i]] = static_cast<int>(i);
    for (const auto& e : edge_labels) add_edge(vertex_set(e));
}

Hypergraph Hypergraph::from_edges(const std::vector<std::vector<std::string>>& edge_labels) {
    std::vector<std::string> universe;
    for (const auto& e : edge_labels) universe.insert(universe.end(), e.begin(), e.end());
    return Hypergraph(std::move(universe), edge_labels);
}

Hypergraph Hypergraph::parse(std::istream& in, const std::string& filename) {
    std::vector<std::vector<std::string>> edges;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        std::vector<std::string> labels;
        std::string tok;
        while (row >> tok) labels.push_back(tok);
        if (labels.empty()) continue;
        edges.push_back(std::move(labels));
        // report parse-stage duplicates with their line number
        for (std::size_t i = 0; i + 1 < edges.size(); ++i)
            if (sets::normalized(edges[i]) == sets::normalized(edges.back()))
                throw InputError(filename + ":" + std::to_string(lineno) + ": duplicate hyperedge");
    }
    if (edges.empty()) throw InputError(filename + ": no hyperedges found");
    return from_edges(edges);
}

int Hypergraph::vertex_index(const std::string& label) const {
    auto it = index_.find(label);
    return it == index_.end() ? -1 : it->second;
}

VertexSet Hypergraph::vertex_set(const std::vector<std::string>& labels) const {
    VertexSet s;
    s.reserve(labels.size());
    for (const auto& l : labels) {
        const int idx = vertex_index(l);
        if (idx < 0) throw InputError("vertex '" + l + "' is not in the hypergraph universe");
        s.push_back(idx);
    }
    return sets::normalized(std::move(s));
}

std::vector<std::string> Hypergraph::labels(const VertexSet& s) const {
    std::vector<std::string> out;
    out.reserve(s.size());
    for (int v : s) {
        if (v < 0 || v >= static_cast<int>(vertices_.size()))
            throw InputError("vertex index out of range");
        out.push_back(vertices_[v]);
    }
    return out;
}

bool is_transversal(const Hypergraph& h, const VertexSet& s) {
    for (int v : s)
        if (v < 0 || v >= static_cast<int>(h.vertex_count()))
            throw InputError("vertex index out of range");
    for (const auto& e : h.edges())
        if (!sets::intersects(e, s)) return false;
    return true;
}

bool is_minimal_transversal(const Hypergraph& h, const VertexSet& s) {
    if (!is_transversal(h, s)) return false;
    for (int v : s)
        if (is_transversal(h, sets::without_value(s, v))) return false;
    return true;
}

std::vector<VertexSet> min_transversals_bruteforce(const Hypergraph& h, int oracle_limit) {
    const int n = static_cast<int>(h.vertex_count());
    if (n > oracle_limit)
        throw InputError("brute-force transversal oracle refused: " + std::to_string(n) +
                         " vertices exceeds limit " + std::to_string(oracle_limit));

    std::vector<std::uint64_t> edge_masks;
    edge_masks.reserve(h.edge_count());
    for (const auto& e : h.edges()) {
        std::uint64_t m = 0;
        for (int v : e) m |= std::uint64_t{1} << v;
        edge_masks.push_back(m);
    }

    auto hits_all = [&](std::uint64_t mask) {
        for (std::uint64_t em : edge_masks)
            if ((em & mask) == 0) return false;
        return true;
    };

    std::vector<VertexSet> out;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        if (!hits_all(mask)) continue;
        bool minimal = true;
        for (int v = 0; v < n && minimal; ++v)
            if (mask & (std::uint64_t{1} << v))
                if (hits_all(mask & ~(std::uint64_t{1} << v))) minimal = false;
        if (!minimal) continue;
        VertexSet s;
        for (int v = 0; v < n; ++v)
            if (mask & (std::uint64_t{1} << v)) s.push_back(v);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Keep only inclusion-minimal sets. Input may contain duplicates.
static std::vector<VertexSet> prune_to_minimal(std::vector<VertexSet> candidates) {
    std::sort(candidates.begin(), candidates.end(),
              [](const VertexSet& a, const VertexSet& b) {
                  return a.size() != b.size() ? a.size() < b.size() : a < b;
              });
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<VertexSet> kept;
    for (auto& c : candidates) {
        bool dominated = false;
        for (const auto& k : kept) {
            if (k.size() >= c.size()) break;  // kept is size-sorted
            if (sets::is_subset(k, c)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) kept.push_back(std::move(c));
    }
    return kept;
}

std::vector<VertexSet> min_transversals_berge(const Hypergraph& h) {
    // The empty set is the sole minimal transversal of an edgeless hypergraph;
    // folding the first edge grows it into that edge's singletons.
    std::vector<VertexSet> current{VertexSet{}};
    for (const auto& edge : h.edges()) {
        std::vector<VertexSet> grown;
        grown.reserve(current.size());
        for (const auto& t : current) {
            if (sets::intersects(t, edge)) {
                grown.push_back(t);
            } else {
                for (int v : edge) grown.push_back(sets::with_value(t, v));
            }
        }
        current = prune_to_minimal(std::move(grown));
    }
    std::sort(current.begin(), current.end());
    return current;
}

}  // namespace traverse
