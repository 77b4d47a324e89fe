#pragma once

// Brute-force reference implementations, written independently of the
// library code they check.

#include <Eigen/Dense>
#include <functional>
#include <random>
#include <vector>

#include "jtugms/gaussian.hpp"
#include "jtugms/graph.hpp"

namespace oracles {

using namespace jtugms;

inline std::vector<std::vector<char>> adjacency(const Graph& g) {
    const int u = g.universe();
    std::vector<std::vector<char>> a(static_cast<std::size_t>(u), std::vector<char>(static_cast<std::size_t>(u), 0));
    for (const Edge& e : g.edge_list()) a[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)] = a[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] = 1;
    return a;
}

/// Depth-first enumeration of simple paths from i to j; true if some path
/// has every interior vertex accepted by `interior_ok`.
inline bool simple_path_exists(const Graph& g, Vertex i, Vertex j, const std::function<bool(Vertex)>& interior_ok) {
    const auto a = adjacency(g);
    std::vector<char> on_path(a.size(), 0);
    std::function<bool(Vertex)> dfs = [&](Vertex x) {
        if (x == j) return true;
        on_path[static_cast<std::size_t>(x)] = 1;
        for (Vertex y : g.vertices()) {
            if (!a[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] || on_path[static_cast<std::size_t>(y)]) continue;
            if (y != j && !interior_ok(y)) continue;
            if (dfs(y)) {
                on_path[static_cast<std::size_t>(x)] = 0;
                return true;
            }
        }
        on_path[static_cast<std::size_t>(x)] = 0;
        return false;
    };
    return dfs(i);
}

inline bool separated(const Graph& g, const VertexSet& s, Vertex i, Vertex j) {
    return !simple_path_exists(g, i, j, [&](Vertex v) { return !set_contains(s, v); });
}

/// Marginal graph by path enumeration.
inline EdgeSet marginal_edges(const Graph& g, const VertexSet& a) {
    EdgeSet out;
    for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t y = x + 1; y < a.size(); ++y)
            if (simple_path_exists(g, a[x], a[y], [&](Vertex v) { return !set_contains(a, v); })) out.insert(make_edge(a[x], a[y]));
    return out;
}

/// All subsets of `pool`.
inline std::vector<VertexSet> subsets(const VertexSet& pool, std::size_t max_size = 64) {
    std::vector<VertexSet> out;
    const std::size_t m = pool.size();
    for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
        VertexSet s;
        for (std::size_t k = 0; k < m; ++k)
            if (mask & (1UL << k)) s.push_back(pool[k]);
        if (s.size() <= max_size) out.push_back(s);
    }
    return out;
}

/// Partial correlation from the inverse of the covariance restricted to
/// {i, j} ∪ S.
inline double partial_corr_by_inverse(const Eigen::MatrixXd& sigma, Vertex i, Vertex j, const VertexSet& s) {
    std::vector<Vertex> idx{i, j};
    idx.insert(idx.end(), s.begin(), s.end());
    const auto k = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd sub(k, k);
    for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b) sub(a, b) = sigma(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
    const Eigen::MatrixXd p = sub.inverse();
    return -p(0, 1) / std::sqrt(p(0, 0) * p(1, 1));
}

inline Eigen::MatrixXd covariance_double_loop(const Eigen::MatrixXd& x) {
    const Eigen::Index n = x.rows(), p = x.cols();
    Eigen::MatrixXd s(p, p);
    for (Eigen::Index a = 0; a < p; ++a)
        for (Eigen::Index b = 0; b < p; ++b) {
            double acc = 0.0;
            for (Eigen::Index r = 0; r < n; ++r) acc += x(r, a) * x(r, b);
            s(a, b) = acc / static_cast<double>(n);
        }
    return s;
}

inline Graph random_graph(int p, double density, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(density);
    Graph g(p);
    for (int a = 0; a < p; ++a)
        for (int b = a + 1; b < p; ++b)
            if (coin(rng)) g.add_edge(a, b);
    return g;
}

inline Eigen::MatrixXd random_pd(int p, std::mt19937_64& rng) {
    std::normal_distribution<double> z;
    Eigen::MatrixXd a(p, p);
    for (int r = 0; r < p; ++r)
        for (int c = 0; c < p; ++c) a(r, c) = z(rng);
    return a * a.transpose() / p + 0.5 * Eigen::MatrixXd::Identity(p, p);
}

/// Precision matrix supported on g, strictly diagonally dominant, with
/// random signs and magnitudes.
inline Eigen::MatrixXd random_precision(const Graph& g, std::mt19937_64& rng) {
    const int p = g.universe();
    std::uniform_real_distribution<double> mag(0.2, 0.6);
    std::bernoulli_distribution sign(0.5);
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(p, p);
    for (const Edge& e : g.edge_list()) t(e.u, e.v) = t(e.v, e.u) = (sign(rng) ? 1.0 : -1.0) * mag(rng);
    for (int v = 0; v < p; ++v) t(v, v) = t.row(v).cwiseAbs().sum() + 0.3;
    return t;
}

/// CI relations of the model agree with graph separation for every
/// (i, j, S), checked exhaustively.
inline bool is_faithful(const GaussianModel& m, const Graph& g) {
    const int p = m.p();
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) {
            VertexSet rest;
            for (int v = 0; v < p; ++v)
                if (v != i && v != j) rest.push_back(v);
            for (const auto& s : subsets(rest)) {
                const bool indep = std::abs(partial_corr_by_inverse(m.covariance(), i, j, s)) < 1e-10;
                if (indep != separated(g, s, i, j)) return false;
                // Faithfulness margin: dependent relations must be clearly non-zero.
                if (!indep && std::abs(partial_corr_by_inverse(m.covariance(), i, j, s)) < 1e-6) return false;
            }
        }
    return true;
}

struct FaithfulModel {
    Graph g;
    GaussianModel model;
};

inline FaithfulModel random_faithful_model(int p, double density, std::mt19937_64& rng) {
    for (;;) {
        Graph g = random_graph(p, density, rng);
        GaussianModel m(random_precision(g, rng));
        if (is_faithful(m, g)) return {std::move(g), std::move(m)};
    }
}

}  // namespace oracles
