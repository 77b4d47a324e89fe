#include "jtugms/glasso.hpp"

#include <cmath>
#include <stdexcept>

#include "jtugms/lasso.hpp"

namespace jtugms {

GlassoResult glasso(const Eigen::MatrixXd& s_hat, const Graph& constraint, const Graph& penalized, double lambda,
                    const GlassoOptions& opt) {
    const VertexSet& vs = constraint.vertices();
    const auto q = static_cast<Eigen::Index>(vs.size());
    if (s_hat.rows() != q || s_hat.cols() != q) throw std::domain_error("glasso: S_hat size does not match constraint graph");
    if (lambda < 0.0) throw std::domain_error("glasso: lambda must be non-negative");
    if (q > 0) {
        const double scale = std::max(1.0, s_hat.diagonal().cwiseAbs().maxCoeff());
        if ((s_hat - s_hat.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) throw std::domain_error("glasso: S_hat not symmetric");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s_hat, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().minCoeff() < -1e-8 * scale) throw std::domain_error("glasso: S_hat is not positive semidefinite");
    }
    for (const Edge& e : penalized.edge_list())
        if (!constraint.contains(e.u) || !constraint.contains(e.v) || !constraint.has_edge(e.u, e.v))
            throw std::domain_error("glasso: penalized edges must lie inside the constraint graph");

    auto local = [&](Vertex v) { return static_cast<Eigen::Index>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin()); };

    // Per column: allowed coordinates (local ids) and their penalty weights.
    std::vector<std::vector<Eigen::Index>> allowed(static_cast<std::size_t>(q));
    std::vector<Eigen::VectorXd> weights(static_cast<std::size_t>(q));
    std::vector<Eigen::VectorXd> betas(static_cast<std::size_t>(q));
    for (Eigen::Index j = 0; j < q; ++j) {
        const Vertex vj = vs[static_cast<std::size_t>(j)];
        auto& a = allowed[static_cast<std::size_t>(j)];
        for (Vertex u : constraint.neighbors(vj)) a.push_back(local(u));
        Eigen::VectorXd w(static_cast<Eigen::Index>(a.size()));
        for (std::size_t k = 0; k < a.size(); ++k)
            w[static_cast<Eigen::Index>(k)] =
                penalized.contains(vj) && penalized.has_edge(vj, vs[static_cast<std::size_t>(a[k])]) ? 1.0 : 0.0;
        weights[static_cast<std::size_t>(j)] = w;
        betas[static_cast<std::size_t>(j)] = Eigen::VectorXd::Zero(w.size());
    }

    GlassoResult res;
    Eigen::MatrixXd w = s_hat;
    LassoOptions lopt;
    lopt.tol = opt.inner_tol;
    for (res.iterations = 1; res.iterations <= opt.max_iterations; ++res.iterations) {
        double max_change = 0.0;
        for (Eigen::Index j = 0; j < q; ++j) {
            const auto& a = allowed[static_cast<std::size_t>(j)];
            const auto m = static_cast<Eigen::Index>(a.size());
            Eigen::VectorXd w12_new = Eigen::VectorXd::Zero(q);
            if (m > 0) {
                Eigen::MatrixXd w11(m, m);
                Eigen::VectorXd s12(m);
                for (Eigen::Index x = 0; x < m; ++x) {
                    s12[x] = s_hat(a[static_cast<std::size_t>(x)], j);
                    for (Eigen::Index y = 0; y < m; ++y) w11(x, y) = w(a[static_cast<std::size_t>(x)], a[static_cast<std::size_t>(y)]);
                }
                auto fit = solve_lasso_gram(w11, s12, weights[static_cast<std::size_t>(j)], lambda, lopt,
                                            betas[static_cast<std::size_t>(j)]);
                betas[static_cast<std::size_t>(j)] = fit.beta;
                // w12 = W_{-j,A} beta over every row except j.
                for (Eigen::Index x = 0; x < m; ++x) w12_new += w.col(a[static_cast<std::size_t>(x)]) * fit.beta[x];
            }
            for (Eigen::Index r = 0; r < q; ++r) {
                if (r == j) continue;
                max_change = std::max(max_change, std::abs(w12_new[r] - w(r, j)));
                w(r, j) = w12_new[r];
                w(j, r) = w12_new[r];
            }
        }
        if (max_change < opt.tol) {
            res.converged = true;
            break;
        }
    }
    res.iterations = std::min(res.iterations, opt.max_iterations);

    res.theta = Eigen::MatrixXd::Zero(q, q);
    for (Eigen::Index j = 0; j < q; ++j) {
        const auto& a = allowed[static_cast<std::size_t>(j)];
        const auto& beta = betas[static_cast<std::size_t>(j)];
        double w12b = 0.0;
        for (std::size_t x = 0; x < a.size(); ++x) w12b += w(a[x], j) * beta[static_cast<Eigen::Index>(x)];
        const double t22 = 1.0 / (w(j, j) - w12b);
        res.theta(j, j) = t22;
        for (std::size_t x = 0; x < a.size(); ++x) res.theta(a[x], j) = -beta[static_cast<Eigen::Index>(x)] * t22;
    }
    res.theta = 0.5 * (res.theta + res.theta.transpose()).eval();
    res.w = w;
    for (const Edge& e : penalized.edge_list())
        if (std::abs(res.theta(local(e.u), local(e.v))) > opt.edge_tol) res.edges.insert(e);
    return res;
}

}  // namespace jtugms
