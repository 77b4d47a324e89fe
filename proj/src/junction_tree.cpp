#include "jtugms/junction_tree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace jtugms {

namespace {

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        return true;
    }
};

std::string join(const VertexSet& s, const char* sep) {
    std::ostringstream os;
    for (std::size_t k = 0; k < s.size(); ++k) os << (k ? sep : "") << s[k];
    return os.str();
}

}  // namespace

void JunctionTree::connect(int a, int b) {
    if (a > b) std::swap(a, b);
    tree_edges.push_back({a, b});
    separators.push_back(set_intersection(clusters[static_cast<std::size_t>(a)], clusters[static_cast<std::size_t>(b)]));
}

std::size_t JunctionTree::max_separator_size() const {
    std::size_t m = 0;
    for (const auto& s : separators) m = std::max(m, s.size());
    return m;
}

Triangulation triangulate_min_fill(const Graph& g) {
    Graph work = g;
    Graph chordal = g;
    std::vector<Vertex> remaining = g.vertices();
    std::vector<Vertex> order;
    order.reserve(remaining.size());

    while (!remaining.empty()) {
        std::size_t best_fill = std::numeric_limits<std::size_t>::max();
        Vertex best = -1;
        for (Vertex v : remaining) {
            const auto& nb = work.neighbors(v);
            std::size_t fill = 0;
            for (std::size_t x = 0; x < nb.size() && fill < best_fill; ++x)
                for (std::size_t y = x + 1; y < nb.size(); ++y)
                    if (!work.has_edge(nb[x], nb[y])) ++fill;
            if (fill < best_fill) {
                best_fill = fill;
                best = v;
            }
        }
        const std::vector<Vertex> nb = work.neighbors(best);
        for (std::size_t x = 0; x < nb.size(); ++x)
            for (std::size_t y = x + 1; y < nb.size(); ++y) {
                work.add_edge(nb[x], nb[y]);
                chordal.add_edge(nb[x], nb[y]);
            }
        for (Vertex u : nb) work.remove_edge(best, u);
        remaining.erase(std::find(remaining.begin(), remaining.end(), best));
        order.push_back(best);
    }
    return {std::move(chordal), std::move(order)};
}

bool is_perfect_elimination_order(const Graph& g, const std::vector<Vertex>& order) {
    std::vector<int> pos(static_cast<std::size_t>(g.universe()), -1);
    for (std::size_t k = 0; k < order.size(); ++k) pos[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
    for (Vertex v : order) {
        VertexSet later;
        for (Vertex u : g.neighbors(v))
            if (pos[static_cast<std::size_t>(u)] > pos[static_cast<std::size_t>(v)]) later.push_back(u);
        for (std::size_t x = 0; x < later.size(); ++x)
            for (std::size_t y = x + 1; y < later.size(); ++y)
                if (!g.has_edge(later[x], later[y])) return false;
    }
    return true;
}

std::vector<VertexSet> maximal_cliques(const Graph& chordal, const std::vector<Vertex>& order) {
    std::vector<int> pos(static_cast<std::size_t>(chordal.universe()), -1);
    for (std::size_t k = 0; k < order.size(); ++k) pos[static_cast<std::size_t>(order[k])] = static_cast<int>(k);

    std::vector<VertexSet> candidates;
    for (Vertex v : order) {
        VertexSet c{v};
        for (Vertex u : chordal.neighbors(v))
            if (pos[static_cast<std::size_t>(u)] > pos[static_cast<std::size_t>(v)]) c.push_back(u);
        candidates.push_back(make_vertex_set(std::move(c)));
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<VertexSet> out;
    for (std::size_t x = 0; x < candidates.size(); ++x) {
        bool dominated = false;
        for (std::size_t y = 0; y < candidates.size() && !dominated; ++y)
            dominated = x != y && candidates[y].size() > candidates[x].size() && is_subset(candidates[x], candidates[y]);
        if (!dominated) out.push_back(candidates[x]);
    }
    return out;
}

JunctionTree junction_tree_from_clusters(std::vector<VertexSet> clusters) {
    std::sort(clusters.begin(), clusters.end());
    JunctionTree jt;
    jt.clusters = std::move(clusters);
    const int m = static_cast<int>(jt.clusters.size());

    struct Candidate {
        std::size_t weight;
        int a, b;
    };
    std::vector<Candidate> cand;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            auto w = set_intersection(jt.clusters[static_cast<std::size_t>(a)], jt.clusters[static_cast<std::size_t>(b)]).size();
            if (w > 0) cand.push_back({w, a, b});
        }
    std::stable_sort(cand.begin(), cand.end(), [](const Candidate& x, const Candidate& y) { return x.weight > y.weight; });

    DisjointSets ds(static_cast<std::size_t>(m));
    for (const auto& c : cand)
        if (ds.unite(c.a, c.b)) jt.connect(c.a, c.b);
    return jt;
}

JunctionTree build_junction_tree(const Graph& g) {
    auto tri = triangulate_min_fill(g);
    auto jt = junction_tree_from_clusters(maximal_cliques(tri.chordal, tri.order));
    if (!validate_junction_tree(jt, g)) throw std::logic_error("build_junction_tree produced an invalid junction tree");
    return jt;
}

bool validate_junction_tree(const JunctionTree& jt, const Graph& g) {
    const int m = static_cast<int>(jt.clusters.size());
    if (jt.separators.size() != jt.tree_edges.size()) return false;

    DisjointSets forest(static_cast<std::size_t>(m));
    std::vector<std::vector<int>> tree_adj(static_cast<std::size_t>(m));
    for (std::size_t k = 0; k < jt.tree_edges.size(); ++k) {
        const auto& e = jt.tree_edges[k];
        if (e.a < 0 || e.b < 0 || e.a >= m || e.b >= m || e.a == e.b) return false;
        if (!forest.unite(e.a, e.b)) return false;  // cycle or duplicate edge
        if (jt.separators[k] != set_intersection(jt.clusters[static_cast<std::size_t>(e.a)], jt.clusters[static_cast<std::size_t>(e.b)]))
            return false;
        tree_adj[static_cast<std::size_t>(e.a)].push_back(e.b);
        tree_adj[static_cast<std::size_t>(e.b)].push_back(e.a);
    }

    for (const auto& c : jt.clusters)
        for (Vertex v : c)
            if (!g.contains(v)) return false;

    // Vertex coverage and running intersection: for every vertex the
    // clusters holding it form one connected piece of the forest.
    for (Vertex v : g.vertices()) {
        std::vector<int> holders;
        for (int c = 0; c < m; ++c)
            if (set_contains(jt.clusters[static_cast<std::size_t>(c)], v)) holders.push_back(c);
        if (holders.empty()) return false;
        std::vector<char> seen(static_cast<std::size_t>(m), 0);
        std::vector<int> stack{holders.front()};
        seen[static_cast<std::size_t>(holders.front())] = 1;
        std::size_t reached = 0;
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            ++reached;
            for (int d : tree_adj[static_cast<std::size_t>(c)]) {
                if (seen[static_cast<std::size_t>(d)] || !set_contains(jt.clusters[static_cast<std::size_t>(d)], v)) continue;
                seen[static_cast<std::size_t>(d)] = 1;
                stack.push_back(d);
            }
        }
        if (reached != holders.size()) return false;
    }

    // Edge coverage.
    for (const Edge& e : g.edge_list()) {
        bool covered = false;
        for (const auto& c : jt.clusters)
            if (set_contains(c, e.u) && set_contains(c, e.v)) {
                covered = true;
                break;
            }
        if (!covered) return false;
    }
    return true;
}

JunctionTree merge_by_separator_cap(JunctionTree jt, std::size_t cap) {
    if (cap < 1) throw std::domain_error("separator cap must be at least 1");
    for (;;) {
        std::size_t pick = jt.tree_edges.size();
        for (std::size_t k = 0; k < jt.tree_edges.size(); ++k) {
            if (jt.separators[k].size() <= cap) continue;
            if (pick == jt.tree_edges.size() || jt.separators[k].size() > jt.separators[pick].size() ||
                (jt.separators[k].size() == jt.separators[pick].size() && jt.tree_edges[k] < jt.tree_edges[pick]))
                pick = k;
        }
        if (pick == jt.tree_edges.size()) return jt;

        const int keep = jt.tree_edges[pick].a;
        const int gone = jt.tree_edges[pick].b;
        jt.clusters[static_cast<std::size_t>(keep)] =
            set_union(jt.clusters[static_cast<std::size_t>(keep)], jt.clusters[static_cast<std::size_t>(gone)]);
        jt.clusters.erase(jt.clusters.begin() + gone);

        auto reindex = [&](int c) {
            if (c == gone) return keep;
            return c > gone ? c - 1 : c;
        };
        std::vector<TreeEdge> old = std::move(jt.tree_edges);
        jt.tree_edges.clear();
        jt.separators.clear();
        for (std::size_t k = 0; k < old.size(); ++k) {
            if (k == pick) continue;
            jt.connect(reindex(old[k].a), reindex(old[k].b));
        }
    }
}

std::string to_dot(const JunctionTree& jt, const std::string& name) {
    std::ostringstream os;
    os << "graph " << name << " {\n  node [shape=ellipse];\n";
    for (std::size_t c = 0; c < jt.clusters.size(); ++c)
        os << "  c" << c << " [label=\"" << join(jt.clusters[c], ",") << "\"];\n";
    for (std::size_t k = 0; k < jt.tree_edges.size(); ++k)
        os << "  c" << jt.tree_edges[k].a << " -- c" << jt.tree_edges[k].b << " [label=\"" << join(jt.separators[k], ",")
           << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace jtugms
