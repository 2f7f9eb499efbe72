#ifndef TRAVERSE_HYPERGRAPH_HPP
#define TRAVERSE_HYPERGRAPH_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace traverse {

/// Vertices inside a hypergraph are addressed by index into the sorted label
/// table; a VertexSet is a sorted, duplicate-free vector of those indices.
using VertexSet = std::vector<int>;

/// Immutable hypergraph over string-labelled vertices.
///
/// Invariants enforced at construction:
///  - every edge is non-empty and a subset of the vertex universe,
///  - no two edges are identical,
///  - the vertex table is sorted, so all enumeration output is canonical.
class Hypergraph {
public:
    Hypergraph() = default;

    /// Explicit universe. Edge labels must come from `vertices`.
    Hypergraph(std::vector<std::string> vertices,
               const std::vector<std::vector<std::string>>& edge_labels);

    /// Universe inferred as the union of all edge labels.
    static Hypergraph from_edges(const std::vector<std::vector<std::string>>& edge_labels);

    /// Text format: one edge per line, whitespace-separated vertex labels,
    /// '#' starts a comment. Errors name the offending line.
    static Hypergraph parse(std::istream& in, const std::string& filename = "<input>");

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<VertexSet>& edges() const { return edges_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    /// -1 when the label is unknown.
    int vertex_index(const std::string& label) const;

    /// Validating conversion; unknown labels raise InputError.
    VertexSet vertex_set(const std::vector<std::string>& labels) const;
    std::vector<std::string> labels(const VertexSet& s) const;

private:
    std::vector<std::string> vertices_;
    std::map<std::string, int> index_;
    std::vector<VertexSet> edges_;

    void add_edge(VertexSet edge);
};

/// s hits every edge of h. s must lie inside h's universe.
bool is_transversal(const Hypergraph& h, const VertexSet& s);

/// s is a transversal and removing any single vertex breaks it (single
/// removal suffices: the transversal property is monotone).
bool is_minimal_transversal(const Hypergraph& h, const VertexSet& s);

/// Exhaustive oracle: enumerates all 2^|V| subsets. Refuses universes larger
/// than `oracle_limit`. Output sorted lexicographically.
std::vector<VertexSet> min_transversals_bruteforce(const Hypergraph& h, int oracle_limit = 20);

/// Incremental enumeration: seed with one edge's singletons, then fold the
/// remaining edges in one at a time, recombining and pruning to the minimal
/// antichain after each step. Worst case is exponential in |H|.
/// Agrees with the brute-force oracle on every input the oracle accepts.
std::vector<VertexSet> min_transversals_berge(const Hypergraph& h);

}  // namespace traverse

#endif
