#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace jtugms {

using Vertex = int;

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

/// Undirected edge stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    auto operator<=>(const Edge&) const = default;
};

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

using EdgeSet = std::set<Edge>;

/// Sort and deduplicate into a VertexSet.
VertexSet make_vertex_set(std::vector<Vertex> ids);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
bool is_subset(const VertexSet& a, const VertexSet& b);
bool set_contains(const VertexSet& a, Vertex v);

/// Undirected simple graph over integer vertex ids.
///
/// Neighbour lists are kept sorted so that every traversal visits vertices in
/// ascending order.
class Graph {
public:
    Graph() = default;
    /// Edgeless graph on vertices 0..n-1.
    explicit Graph(int num_vertices);
    /// Edgeless graph on an arbitrary vertex set.
    explicit Graph(const VertexSet& vertices);
    Graph(const VertexSet& vertices, const EdgeSet& edges);

    static Graph from_edges(int num_vertices, std::span<const Edge> edges);

    const VertexSet& vertices() const { return vertices_; }
    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_edges() const { return num_edges_; }
    /// One past the largest vertex id that can be stored without resizing.
    int universe() const { return static_cast<int>(adj_.size()); }

    bool contains(Vertex v) const;
    bool has_edge(Vertex a, Vertex b) const;
    const std::vector<Vertex>& neighbors(Vertex v) const;
    std::size_t degree(Vertex v) const { return neighbors(v).size(); }

    void add_vertex(Vertex v);
    /// Returns false when the edge was already present.
    bool add_edge(Vertex a, Vertex b);
    /// Returns false when the edge was absent.
    bool remove_edge(Vertex a, Vertex b);

    /// All edges in ascending (u, v) order.
    std::vector<Edge> edge_list() const;
    EdgeSet edges() const;

    bool operator==(const Graph& other) const;

private:
    void require_vertex(Vertex v) const;

    VertexSet vertices_;
    std::vector<char> member_;
    std::vector<std::vector<Vertex>> adj_;
    std::size_t num_edges_ = 0;
};

Graph induced_subgraph(const Graph& g, const VertexSet& a);
Graph graph_union(const Graph& g1, const Graph& g2);
/// Keeps the vertex set of g1.
Graph graph_difference(const Graph& g1, const Graph& g2);
Graph complete_graph(const VertexSet& a);

/// True iff every path between i and j meets s. Also true if no path exists.
bool is_separator(const Graph& g, const VertexSet& s, Vertex i, Vertex j);

/// Vertices reachable from `start` without entering `blocked`.
std::vector<char> reachable_avoiding(const Graph& g, Vertex start, const std::vector<char>& blocked);

/// Marginal graph over A: the induced edges plus every pair joined by a path
/// whose interior lies entirely outside A.
Graph marginal_graph(const Graph& g, const VertexSet& a);

/// Connected components, each sorted, ordered by smallest member.
std::vector<VertexSet> connected_components(const Graph& g);

std::string to_dot(const Graph& g, const std::string& name = "G");

}  // namespace jtugms
