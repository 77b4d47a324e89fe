#include "jtugms/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace jtugms {

VertexSet make_vertex_set(std::vector<Vertex> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool is_subset(const VertexSet& a, const VertexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool set_contains(const VertexSet& a, Vertex v) { return std::binary_search(a.begin(), a.end(), v); }

Graph::Graph(int num_vertices) {
    if (num_vertices < 0) throw std::domain_error("negative vertex count");
    vertices_.resize(static_cast<std::size_t>(num_vertices));
    for (int i = 0; i < num_vertices; ++i) vertices_[static_cast<std::size_t>(i)] = i;
    member_.assign(static_cast<std::size_t>(num_vertices), 1);
    adj_.resize(static_cast<std::size_t>(num_vertices));
}

Graph::Graph(const VertexSet& vertices) {
    for (Vertex v : vertices) add_vertex(v);
}

Graph::Graph(const VertexSet& vertices, const EdgeSet& edges) : Graph(vertices) {
    for (const Edge& e : edges) add_edge(e.u, e.v);
}

Graph Graph::from_edges(int num_vertices, std::span<const Edge> edges) {
    Graph g(num_vertices);
    for (const Edge& e : edges) g.add_edge(e.u, e.v);
    return g;
}

bool Graph::contains(Vertex v) const {
    return v >= 0 && v < universe() && member_[static_cast<std::size_t>(v)] != 0;
}

void Graph::require_vertex(Vertex v) const {
    if (!contains(v)) throw std::domain_error("vertex " + std::to_string(v) + " not in graph");
}

bool Graph::has_edge(Vertex a, Vertex b) const {
    if (!contains(a) || !contains(b)) return false;
    const auto& na = adj_[static_cast<std::size_t>(a)];
    return std::binary_search(na.begin(), na.end(), b);
}

const std::vector<Vertex>& Graph::neighbors(Vertex v) const {
    require_vertex(v);
    return adj_[static_cast<std::size_t>(v)];
}

void Graph::add_vertex(Vertex v) {
    if (v < 0) throw std::domain_error("negative vertex id");
    if (v >= universe()) {
        adj_.resize(static_cast<std::size_t>(v) + 1);
        member_.resize(static_cast<std::size_t>(v) + 1, 0);
    }
    if (member_[static_cast<std::size_t>(v)]) return;
    member_[static_cast<std::size_t>(v)] = 1;
    vertices_.insert(std::upper_bound(vertices_.begin(), vertices_.end(), v), v);
}

bool Graph::add_edge(Vertex a, Vertex b) {
    if (a == b) throw std::domain_error("self-loop on vertex " + std::to_string(a));
    require_vertex(a);
    require_vertex(b);
    auto& na = adj_[static_cast<std::size_t>(a)];
    auto it = std::lower_bound(na.begin(), na.end(), b);
    if (it != na.end() && *it == b) return false;
    na.insert(it, b);
    auto& nb = adj_[static_cast<std::size_t>(b)];
    nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
    ++num_edges_;
    return true;
}

bool Graph::remove_edge(Vertex a, Vertex b) {
    if (!has_edge(a, b)) return false;
    auto& na = adj_[static_cast<std::size_t>(a)];
    na.erase(std::lower_bound(na.begin(), na.end(), b));
    auto& nb = adj_[static_cast<std::size_t>(b)];
    nb.erase(std::lower_bound(nb.begin(), nb.end(), a));
    --num_edges_;
    return true;
}

std::vector<Edge> Graph::edge_list() const {
    std::vector<Edge> out;
    out.reserve(num_edges_);
    for (Vertex u : vertices_)
        for (Vertex v : adj_[static_cast<std::size_t>(u)])
            if (u < v) out.push_back({u, v});
    return out;
}

EdgeSet Graph::edges() const {
    auto list = edge_list();
    return EdgeSet(list.begin(), list.end());
}

bool Graph::operator==(const Graph& other) const {
    return vertices_ == other.vertices_ && edge_list() == other.edge_list();
}

Graph induced_subgraph(const Graph& g, const VertexSet& a) {
    for (Vertex v : a)
        if (!g.contains(v)) throw std::domain_error("induced_subgraph: vertex " + std::to_string(v) + " not in graph");
    Graph out(a);
    for (Vertex u : a)
        for (Vertex v : g.neighbors(u))
            if (u < v && set_contains(a, v)) out.add_edge(u, v);
    return out;
}

Graph graph_union(const Graph& g1, const Graph& g2) {
    Graph out(set_union(g1.vertices(), g2.vertices()));
    for (const Edge& e : g1.edge_list()) out.add_edge(e.u, e.v);
    for (const Edge& e : g2.edge_list()) out.add_edge(e.u, e.v);
    return out;
}

Graph graph_difference(const Graph& g1, const Graph& g2) {
    Graph out(g1.vertices());
    for (const Edge& e : g1.edge_list())
        if (!g2.has_edge(e.u, e.v)) out.add_edge(e.u, e.v);
    return out;
}

Graph complete_graph(const VertexSet& a) {
    Graph out(a);
    for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t y = x + 1; y < a.size(); ++y) out.add_edge(a[x], a[y]);
    return out;
}

std::vector<char> reachable_avoiding(const Graph& g, Vertex start, const std::vector<char>& blocked) {
    std::vector<char> seen(static_cast<std::size_t>(g.universe()), 0);
    std::deque<Vertex> queue{start};
    seen[static_cast<std::size_t>(start)] = 1;
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        for (Vertex w : g.neighbors(u)) {
            auto wi = static_cast<std::size_t>(w);
            if (seen[wi] || blocked[wi]) continue;
            seen[wi] = 1;
            queue.push_back(w);
        }
    }
    return seen;
}

bool is_separator(const Graph& g, const VertexSet& s, Vertex i, Vertex j) {
    if (!g.contains(i) || !g.contains(j))
        throw std::domain_error("is_separator: endpoint not in graph");
    std::vector<char> blocked(static_cast<std::size_t>(g.universe()), 0);
    for (Vertex v : s)
        if (g.contains(v)) blocked[static_cast<std::size_t>(v)] = 1;
    blocked[static_cast<std::size_t>(i)] = 0;
    blocked[static_cast<std::size_t>(j)] = 0;
    return !reachable_avoiding(g, i, blocked)[static_cast<std::size_t>(j)];
}

Graph marginal_graph(const Graph& g, const VertexSet& a) {
    Graph out = induced_subgraph(g, a);
    std::vector<char> in_a(static_cast<std::size_t>(g.universe()), 0);
    for (Vertex v : a) in_a[static_cast<std::size_t>(v)] = 1;

    for (Vertex i : a) {
        // Reach through V \ A only; `i` itself is the sole A-vertex visited.
        std::vector<char> blocked = in_a;
        blocked[static_cast<std::size_t>(i)] = 0;
        auto reach = reachable_avoiding(g, i, blocked);
        for (Vertex x : g.vertices()) {
            if (!reach[static_cast<std::size_t>(x)]) continue;
            for (Vertex j : g.neighbors(x))
                if (j != i && in_a[static_cast<std::size_t>(j)]) out.add_edge(i, j);
        }
    }
    return out;
}

std::vector<VertexSet> connected_components(const Graph& g) {
    std::vector<VertexSet> out;
    std::vector<char> none(static_cast<std::size_t>(g.universe()), 0);
    std::vector<char> done(static_cast<std::size_t>(g.universe()), 0);
    for (Vertex v : g.vertices()) {
        if (done[static_cast<std::size_t>(v)]) continue;
        auto reach = reachable_avoiding(g, v, none);
        VertexSet comp;
        for (Vertex u : g.vertices())
            if (reach[static_cast<std::size_t>(u)]) {
                comp.push_back(u);
                done[static_cast<std::size_t>(u)] = 1;
            }
        out.push_back(std::move(comp));
    }
    return out;
}

std::string to_dot(const Graph& g, const std::string& name) {
    std::ostringstream os;
    os << "graph " << name << " {\n";
    for (Vertex v : g.vertices()) os << "  " << v << ";\n";
    for (const Edge& e : g.edge_list()) os << "  " << e.u << " -- " << e.v << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace jtugms
