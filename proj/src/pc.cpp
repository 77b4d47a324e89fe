#include "jtugms/pc.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace jtugms {

namespace {

void check_inputs(int kappa, const Graph& h, const Graph& l) {
    if (kappa < 0) throw std::domain_error("pc: kappa must be non-negative");
    for (const Edge& e : l.edge_list())
        if (!h.contains(e.u) || !h.contains(e.v) || !h.has_edge(e.u, e.v))
            throw std::domain_error("pc: L must be a subgraph of H");
}

}  // namespace

VertexSet pc_separator_pool(const Graph& h, Vertex i, Vertex j) {
    const auto& ni = h.neighbors(i);
    const auto& nj = h.neighbors(j);
    const auto& pick = nj.size() < ni.size() ? nj : ni;
    const Vertex other = nj.size() < ni.size() ? i : j;
    VertexSet pool;
    pool.reserve(pick.size());
    for (Vertex v : pick)
        if (v != other) pool.push_back(v);
    return pool;
}

bool pc_find_separator(const CiTest& test, Vertex i, Vertex j, const VertexSet& pool, int k, std::size_t* tests) {
    const auto m = static_cast<int>(pool.size());
    if (k > m) return false;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a) idx[static_cast<std::size_t>(a)] = a;
    VertexSet s(static_cast<std::size_t>(k));
    for (;;) {
        for (int a = 0; a < k; ++a) s[static_cast<std::size_t>(a)] = pool[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])];
        if (tests) ++*tests;
        if (test.independent(i, j, s)) return true;
        // next k-combination in lexicographic order
        int a = k - 1;
        while (a >= 0 && idx[static_cast<std::size_t>(a)] == m - k + a) --a;
        if (a < 0) return false;
        ++idx[static_cast<std::size_t>(a)];
        for (int b = a + 1; b < k; ++b) idx[static_cast<std::size_t>(b)] = idx[static_cast<std::size_t>(b - 1)] + 1;
    }
}

Graph pc_reference(int kappa, const CiTest& test, const Graph& h_in, const Graph& l, PcStats* stats) {
    check_inputs(kappa, h_in, l);
    Graph h = h_in;
    Graph g = l;
    PcStats local;
    for (int k = 0; k <= kappa; ++k) {
        std::vector<Edge> doomed;
        for (const Edge& e : g.edge_list()) {
            const VertexSet pool = pc_separator_pool(h, e.u, e.v);
            if (pc_find_separator(test, e.u, e.v, pool, k, &local.tests)) doomed.push_back(e);
        }
        for (const Edge& e : doomed) {
            g.remove_edge(e.u, e.v);
            h.remove_edge(e.u, e.v);
        }
        local.deletions += doomed.size();
    }
    if (stats) *stats = local;
    return g;
}

Graph pc(int kappa, const CiTest& test, const Graph& h_in, const Graph& l, PcStats* stats) {
    check_inputs(kappa, h_in, l);
    Graph h = h_in;
    Graph g = l;
    PcStats local;
    for (int k = 0; k <= kappa; ++k) {
        const std::vector<Edge> edges = g.edge_list();
        const auto m = static_cast<long>(edges.size());
        std::vector<char> remove(edges.size(), 0);
        std::size_t tests = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : tests) if (m > 8)
#endif
        for (long x = 0; x < m; ++x) {
            const Edge& e = edges[static_cast<std::size_t>(x)];
            const VertexSet pool = pc_separator_pool(h, e.u, e.v);
            std::size_t t = 0;
            remove[static_cast<std::size_t>(x)] = pc_find_separator(test, e.u, e.v, pool, k, &t) ? 1 : 0;
            tests += t;
        }
        local.tests += tests;
        for (std::size_t x = 0; x < edges.size(); ++x)
            if (remove[x]) {
                g.remove_edge(edges[x].u, edges[x].v);
                h.remove_edge(edges[x].u, edges[x].v);
                ++local.deletions;
            }
    }
    if (stats) *stats = local;
    return g;
}

}  // namespace jtugms
