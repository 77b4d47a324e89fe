#include "jtugms/model_selection.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace jtugms {

void EbicConfig::validate() const {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::domain_error("EBIC gamma must lie in [0,1]");
    if (lambda_grid.empty()) throw std::domain_error("lambda grid must be nonempty");
    for (std::size_t k = 0; k < lambda_grid.size(); ++k) {
        if (!(lambda_grid[k] > 0.0)) throw std::domain_error("lambda grid values must be positive");
        if (k > 0 && !(lambda_grid[k] < lambda_grid[k - 1])) throw std::domain_error("lambda grid must be strictly descending");
    }
}

double ebic_score(const Eigen::MatrixXd& s_hat, const Eigen::MatrixXd& theta, std::size_t edge_count, int n, double p_eff,
                  double gamma) {
    if (theta.rows() != s_hat.rows() || theta.cols() != s_hat.cols()) throw std::domain_error("ebic: dimension mismatch");
    Eigen::LLT<Eigen::MatrixXd> llt(theta);
    if (llt.info() != Eigen::Success) throw std::domain_error("ebic: Theta is not positive definite");
    const Eigen::MatrixXd l = llt.matrixL();
    double logdet = 0.0;
    for (Eigen::Index k = 0; k < l.rows(); ++k) {
        if (!(l(k, k) > 0.0)) throw std::domain_error("ebic: Theta is not positive definite");
        logdet += 2.0 * std::log(l(k, k));
    }
    const double trace = (s_hat.cwiseProduct(theta)).sum();
    const auto e = static_cast<double>(edge_count);
    const double logp = p_eff > 1.0 ? std::log(p_eff) : 0.0;
    return -static_cast<double>(n) * (logdet - trace) + e * std::log(static_cast<double>(n)) + 4.0 * gamma * e * logp;
}

MleFit refit_mle(const Eigen::MatrixXd& s_hat, const Graph& structure, double tol, int max_sweeps) {
    const VertexSet& vs = structure.vertices();
    const auto q = static_cast<Eigen::Index>(vs.size());
    if (s_hat.rows() != q || s_hat.cols() != q) throw std::domain_error("refit_mle: S_hat size does not match structure");
    for (Eigen::Index k = 0; k < q; ++k)
        if (!(s_hat(k, k) > 0.0)) throw std::domain_error("refit_mle: non-positive variance");

    auto local = [&](Vertex v) { return static_cast<Eigen::Index>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin()); };
    std::vector<std::pair<Eigen::Index, Eigen::Index>> gens;
    for (const Edge& e : structure.edge_list()) gens.emplace_back(local(e.u), local(e.v));

    MleFit fit;
    fit.sigma = s_hat.diagonal().asDiagonal();
    fit.theta = s_hat.diagonal().cwiseInverse().asDiagonal();
    const double scale = s_hat.diagonal().maxCoeff();

    auto residual = [&] {
        double r = 0.0;
        for (auto [a, b] : gens) {
            r = std::max(r, std::abs(fit.sigma(a, b) - s_hat(a, b)));
            r = std::max(r, std::abs(fit.sigma(a, a) - s_hat(a, a)));
            r = std::max(r, std::abs(fit.sigma(b, b) - s_hat(b, b)));
        }
        for (Eigen::Index k = 0; k < q; ++k) r = std::max(r, std::abs(fit.sigma(k, k) - s_hat(k, k)));
        return r / scale;
    };

    if (gens.empty()) {
        fit.converged = true;
        return fit;
    }
    for (fit.sweeps = 1; fit.sweeps <= max_sweeps; ++fit.sweeps) {
        for (auto [a, b] : gens) {
            Eigen::Matrix2d scc, sig;
            scc << s_hat(a, a), s_hat(a, b), s_hat(b, a), s_hat(b, b);
            sig << fit.sigma(a, a), fit.sigma(a, b), fit.sigma(b, a), fit.sigma(b, b);
            const Eigen::Matrix2d sig_inv = sig.inverse();
            fit.theta(a, a) += (scc.inverse() - sig_inv)(0, 0);
            fit.theta(a, b) += (scc.inverse() - sig_inv)(0, 1);
            fit.theta(b, a) = fit.theta(a, b);
            fit.theta(b, b) += (scc.inverse() - sig_inv)(1, 1);
            // Sigma += Sigma_{:,C} Sigma_CC^{-1} (S_CC - Sigma_CC) Sigma_CC^{-1} Sigma_{C,:}
            Eigen::MatrixXd sc(q, 2);
            sc.col(0) = fit.sigma.col(a);
            sc.col(1) = fit.sigma.col(b);
            const Eigen::Matrix2d mid = sig_inv * (scc - sig) * sig_inv;
            fit.sigma.noalias() += sc * mid * sc.transpose();
        }
        fit.sigma = 0.5 * (fit.sigma + fit.sigma.transpose()).eval();
        if (residual() < tol) {
            fit.converged = true;
            break;
        }
    }
    fit.sweeps = std::min(fit.sweeps, max_sweeps);
    return fit;
}

Selection select_lambda_ebic(const LambdaEstimator& estimator, const Eigen::MatrixXd& s_hat, int n, double p_eff,
                             const EbicConfig& cfg) {
    cfg.validate();
    const auto m = static_cast<long>(cfg.lambda_grid.size());
    std::vector<SelectionPoint> trace(cfg.lambda_grid.size());
    std::vector<EdgeSet> estimates(cfg.lambda_grid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (m > 1)
#endif
    for (long k = 0; k < m; ++k) {
        auto& pt = trace[static_cast<std::size_t>(k)];
        pt.lambda = cfg.lambda_grid[static_cast<std::size_t>(k)];
        try {
            LambdaFit fit = estimator(pt.lambda);
            const Eigen::MatrixXd theta = fit.theta.size() ? fit.theta : refit_mle(s_hat, fit.refit_structure).theta;
            pt.edges = fit.edges.size();
            pt.score = ebic_score(s_hat, theta, fit.scored_edges, n, p_eff, cfg.gamma);
            pt.ok = true;
            estimates[static_cast<std::size_t>(k)] = std::move(fit.edges);
        } catch (const std::exception& ex) {
            pt.error = ex.what();
        }
    }

    Selection sel;
    bool found = false;
    for (std::size_t k = 0; k < trace.size(); ++k) {
        if (!trace[k].ok) continue;
        if (!found || trace[k].score < trace[sel.index].score) {
            sel.index = k;
            found = true;
        }
    }
    if (!found) {
        std::ostringstream os;
        os << "EBIC selection failed at every grid point:";
        for (const auto& pt : trace) os << " [lambda=" << pt.lambda << ": " << pt.error << "]";
        throw std::runtime_error(os.str());
    }
    sel.lambda = trace[sel.index].lambda;
    sel.edges = std::move(estimates[sel.index]);
    sel.trace = std::move(trace);
    return sel;
}

EdgeMatch match_edge_count(const std::function<EdgeSet(double)>& estimator, std::size_t target,
                           const std::vector<double>& grid) {
    if (grid.empty()) throw std::domain_error("match_edge_count: empty grid");
    std::map<std::size_t, EdgeSet> memo;
    auto eval = [&](std::size_t k) -> const EdgeSet& {
        auto it = memo.find(k);
        if (it == memo.end()) it = memo.emplace(k, estimator(grid[k])).first;
        return it->second;
    };

    // Descending grid: edge counts grow (roughly) with the index.
    std::size_t lo = 0, hi = grid.size() - 1;
    if (eval(lo).size() < target && eval(hi).size() > target) {
        while (hi - lo > 1) {
            const std::size_t mid = lo + (hi - lo) / 2;
            const std::size_t c = eval(mid).size();
            if (c == target) break;
            if (c < target) lo = mid;
            else hi = mid;
        }
    }

    auto dist = [&](std::size_t c) { return c > target ? c - target : target - c; };
    std::size_t best = memo.begin()->first;
    for (const auto& [k, es] : memo) {
        const std::size_t d = dist(es.size()), bd = dist(memo.at(best).size());
        if (d < bd || (d == bd && es.size() < memo.at(best).size())) best = k;
    }
    return {grid[best], memo.at(best), memo.size()};
}

std::vector<double> geometric_grid(double hi, double lo, int count) {
    if (count < 1 || !(hi > 0.0) || !(lo > 0.0) || lo > hi) throw std::domain_error("geometric_grid: bad arguments");
    std::vector<double> g(static_cast<std::size_t>(count));
    if (count == 1) {
        g[0] = hi;
        return g;
    }
    const double ratio = std::pow(lo / hi, 1.0 / (count - 1));
    for (int k = 0; k < count; ++k) g[static_cast<std::size_t>(k)] = hi * std::pow(ratio, k);
    return g;
}

std::string selection_trace_csv(const Selection& sel) {
    std::ostringstream os;
    os.precision(10);
    os << "lambda,edges,score,ok\n";
    for (const auto& pt : sel.trace) os << pt.lambda << ',' << pt.edges << ',' << pt.score << ',' << (pt.ok ? 1 : 0) << '\n';
    return os.str();
}

}  // namespace jtugms
