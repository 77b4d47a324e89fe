#include "jtugms/lasso.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace jtugms {

double soft_threshold(double z, double t) {
    if (z > t) return z - t;
    if (z < -t) return z + t;
    return 0.0;
}

namespace {

Eigen::VectorXd resolve_weights(const Eigen::VectorXd& w, Eigen::Index q) {
    if (w.size() == 0) return Eigen::VectorXd::Ones(q);
    if (w.size() != q) throw std::domain_error("lasso: penalty weight length mismatch");
    if ((w.array() < 0.0).any()) throw std::domain_error("lasso: negative penalty weight");
    return w;
}

double penalty(const Eigen::VectorXd& beta, const Eigen::VectorXd& w, double lambda) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < beta.size(); ++k)
        if (beta[k] != 0.0) s += w[k] * std::abs(beta[k]);
    return lambda * s;
}

}  // namespace

double lasso_objective(const LassoProblem& prob, const Eigen::VectorXd& beta) {
    const Eigen::VectorXd w = resolve_weights(prob.penalty_weights, prob.design.cols());
    return 0.5 * (prob.response - prob.design * beta).squaredNorm() + penalty(beta, w, prob.lambda);
}

LassoResult solve_lasso(const LassoProblem& prob, const LassoOptions& opt) {
    const Eigen::Index n = prob.design.rows();
    const Eigen::Index q = prob.design.cols();
    if (prob.response.size() != n) throw std::domain_error("lasso: response length mismatch");
    if (prob.lambda < 0.0) throw std::domain_error("lasso: lambda must be non-negative");
    const Eigen::VectorXd w = resolve_weights(prob.penalty_weights, q);
    const Eigen::VectorXd col_sq = prob.design.colwise().squaredNorm();

    LassoResult res;
    res.beta = Eigen::VectorXd::Zero(q);
    Eigen::VectorXd r = prob.response;  // r = y - X beta
    for (res.sweeps = 1; res.sweeps <= opt.max_sweeps; ++res.sweeps) {
        double max_change = 0.0;
        for (Eigen::Index k = 0; k < q; ++k) {
            if (std::isinf(w[k]) || col_sq[k] <= 0.0) continue;
            const double old = res.beta[k];
            const double rho = prob.design.col(k).dot(r) + col_sq[k] * old;
            const double next = soft_threshold(rho, prob.lambda * w[k]) / col_sq[k];
            if (next != old) {
                r.noalias() -= (next - old) * prob.design.col(k);
                res.beta[k] = next;
                max_change = std::max(max_change, std::abs(next - old));
            }
        }
        if (opt.track_objective) res.objective.push_back(0.5 * r.squaredNorm() + penalty(res.beta, w, prob.lambda));
        if (max_change < opt.tol) {
            res.converged = true;
            break;
        }
    }
    res.sweeps = std::min(res.sweeps, opt.max_sweeps);
    return res;
}

LassoResult solve_lasso_gram(const Eigen::MatrixXd& gram, const Eigen::VectorXd& c, const Eigen::VectorXd& weights,
                             double lambda, const LassoOptions& opt, const Eigen::VectorXd& init) {
    const Eigen::Index q = gram.rows();
    if (gram.cols() != q || c.size() != q) throw std::domain_error("lasso: Gram dimensions mismatch");
    if (lambda < 0.0) throw std::domain_error("lasso: lambda must be non-negative");
    const Eigen::VectorXd w = resolve_weights(weights, q);

    LassoResult res;
    res.beta = init.size() == q ? init : Eigen::VectorXd::Zero(q);
    for (Eigen::Index k = 0; k < q; ++k)
        if (std::isinf(w[k])) res.beta[k] = 0.0;
    Eigen::VectorXd g = gram * res.beta;  // G beta
    for (res.sweeps = 1; res.sweeps <= opt.max_sweeps; ++res.sweeps) {
        double max_change = 0.0;
        for (Eigen::Index k = 0; k < q; ++k) {
            if (std::isinf(w[k]) || gram(k, k) <= 0.0) continue;
            const double old = res.beta[k];
            const double rho = c[k] - g[k] + gram(k, k) * old;
            const double next = soft_threshold(rho, lambda * w[k]) / gram(k, k);
            if (next != old) {
                g.noalias() += (next - old) * gram.col(k);
                res.beta[k] = next;
                max_change = std::max(max_change, std::abs(next - old));
            }
        }
        if (opt.track_objective)
            res.objective.push_back(0.5 * res.beta.dot(g) - c.dot(res.beta) + penalty(res.beta, w, lambda));
        if (max_change < opt.tol) {
            res.converged = true;
            break;
        }
    }
    res.sweeps = std::min(res.sweeps, opt.max_sweeps);
    return res;
}

}  // namespace jtugms
