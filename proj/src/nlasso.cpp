#include "jtugms/nlasso.hpp"

#include <cmath>
#include <stdexcept>

namespace jtugms {

EdgeSet nlasso(const Eigen::MatrixXd& s_hat, const VertexSet& rbar, const Graph& h, const Graph& hprime, double lambda,
               const NlassoOptions& opt) {
    if (lambda < 0.0) throw std::domain_error("nlasso: lambda must be non-negative");
    for (const Edge& e : hprime.edge_list())
        if (!set_contains(rbar, e.u) || !set_contains(rbar, e.v)) throw std::domain_error("nlasso: H' edges must lie in R-bar");

    const Graph hm = marginal_graph(h, rbar);
    VertexSet nodes;
    for (Vertex k : hprime.vertices())
        if (hprime.degree(k) > 0) nodes.push_back(k);

    // selected[x] = penalized neighbours of nodes[x] with a non-zero coefficient
    std::vector<VertexSet> selected(nodes.size());
    const auto m = static_cast<long>(nodes.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (m > 4)
#endif
    for (long x = 0; x < m; ++x) {
        const Vertex k = nodes[static_cast<std::size_t>(x)];
        VertexSet allowed = set_union(hm.neighbors(k), hprime.neighbors(k));
        const auto q = static_cast<Eigen::Index>(allowed.size());
        Eigen::MatrixXd gram(q, q);
        Eigen::VectorXd c(q);
        Eigen::VectorXd w(q);
        for (Eigen::Index a = 0; a < q; ++a) {
            const Vertex va = allowed[static_cast<std::size_t>(a)];
            c[a] = s_hat(va, k);
            w[a] = hprime.has_edge(k, va) ? 1.0 : 0.0;
            for (Eigen::Index b = 0; b < q; ++b) gram(a, b) = s_hat(va, allowed[static_cast<std::size_t>(b)]);
        }
        auto fit = solve_lasso_gram(gram, c, w, lambda, opt.lasso);
        if (opt.adaptive) {
            Eigen::VectorXd w2 = w;
            for (Eigen::Index a = 0; a < q; ++a)
                if (w[a] > 0.0) w2[a] = 1.0 / (std::abs(fit.beta[a]) + 1e-6);
            fit = solve_lasso_gram(gram, c, w2, lambda, opt.lasso, fit.beta);
        }
        VertexSet out;
        for (Eigen::Index a = 0; a < q; ++a)
            if (w[a] > 0.0 && std::abs(fit.beta[a]) > opt.support_tol) out.push_back(allowed[static_cast<std::size_t>(a)]);
        selected[static_cast<std::size_t>(x)] = std::move(out);
    }

    auto picks = [&](Vertex k, Vertex v) {
        const auto it = std::lower_bound(nodes.begin(), nodes.end(), k);
        return set_contains(selected[static_cast<std::size_t>(it - nodes.begin())], v);
    };
    EdgeSet edges;
    for (const Edge& e : hprime.edge_list()) {
        const bool a = picks(e.u, e.v);
        const bool b = picks(e.v, e.u);
        if (opt.rule == NeighborhoodRule::Union ? (a || b) : (a && b)) edges.insert(e);
    }
    return edges;
}

}  // namespace jtugms
