#pragma once

#include <string>
#include <utility>
#include <vector>

#include "jtugms/graph.hpp"

namespace jtugms {

struct TreeEdge {
    int a = 0;  // cluster index, a < b
    int b = 0;
    auto operator<=>(const TreeEdge&) const = default;
};

/// Clusters joined by a forest; each tree edge carries the separator
/// C_a ∩ C_b (kept in `separators`, parallel to `tree_edges`).
struct JunctionTree {
    std::vector<VertexSet> clusters;
    std::vector<TreeEdge> tree_edges;
    std::vector<VertexSet> separators;

    /// Adds a tree edge and records its separator.
    void connect(int a, int b);
    std::size_t max_separator_size() const;
};

struct Triangulation {
    Graph chordal;
    std::vector<Vertex> order;  // elimination order
};

/// Greedy min-fill elimination; ties go to the lowest vertex id.
Triangulation triangulate_min_fill(const Graph& g);

/// True iff eliminating vertices in `order` adds no edge to `g`.
bool is_perfect_elimination_order(const Graph& g, const std::vector<Vertex>& order);

/// Maximal cliques of a chordal graph given one of its perfect elimination
/// orders, sorted lexicographically.
std::vector<VertexSet> maximal_cliques(const Graph& chordal, const std::vector<Vertex>& order);

/// Junction tree over the given clusters: maximum-weight spanning forest of
/// the cluster intersection graph (weights |C_a ∩ C_b| > 0), Kruskal with
/// lexicographic tie-breaking on (a, b).
JunctionTree junction_tree_from_clusters(std::vector<VertexSet> clusters);

/// Triangulates, takes maximal cliques and links them. Throws std::logic_error
/// if the result fails validation.
JunctionTree build_junction_tree(const Graph& g);

/// Vertex coverage, edge coverage, running intersection, forest shape and
/// separator consistency.
bool validate_junction_tree(const JunctionTree& jt, const Graph& g);

/// Merges the endpoint clusters of any separator larger than `cap`, largest
/// separator first (ties: smallest cluster indices), until none remain.
JunctionTree merge_by_separator_cap(JunctionTree jt, std::size_t cap);

std::string to_dot(const JunctionTree& jt, const std::string& name = "JT");

}  // namespace jtugms
