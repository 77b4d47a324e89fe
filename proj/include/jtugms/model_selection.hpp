#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "jtugms/graph.hpp"

namespace jtugms {

struct EbicConfig {
    double gamma = 0.5;
    std::vector<double> lambda_grid;  // strictly descending, positive
    void validate() const;
};

/// -n [log det Theta - tr(S Theta)] + |E| log n + 4 gamma |E| log p_eff.
/// Smaller is better. Throws std::domain_error if theta is not PD.
double ebic_score(const Eigen::MatrixXd& s_hat, const Eigen::MatrixXd& theta, std::size_t edge_count, int n, double p_eff,
                  double gamma);

struct MleFit {
    Eigen::MatrixXd theta;
    Eigen::MatrixXd sigma;
    bool converged = false;
    int sweeps = 0;
};

/// Maximum-likelihood precision matrix with zeros outside `structure`, by
/// iterative proportional scaling over the edges: each step matches
/// Sigma_CC to S_CC for C = {u, v} with a rank-2 update of Sigma. Row k of
/// s_hat corresponds to structure.vertices()[k]. Stops when every edge and
/// diagonal entry of Sigma is within tol of S (relative to the diagonal).
MleFit refit_mle(const Eigen::MatrixXd& s_hat, const Graph& structure, double tol = 1e-6, int max_sweeps = 5000);

/// One point of a regularisation path.
struct LambdaFit {
    EdgeSet edges;               // the estimate returned to the caller
    std::size_t scored_edges = 0;  // |E| entering the penalty
    Graph refit_structure;       // used when theta is empty
    Eigen::MatrixXd theta;       // estimator's own precision matrix, optional
};
using LambdaEstimator = std::function<LambdaFit(double lambda)>;

struct SelectionPoint {
    double lambda = 0.0;
    std::size_t edges = 0;
    double score = 0.0;
    bool ok = false;
    std::string error;
};

struct Selection {
    double lambda = 0.0;
    std::size_t index = 0;
    EdgeSet edges;
    std::vector<SelectionPoint> trace;  // one entry per grid point, grid order
};

/// Scores every grid point (in parallel) and returns the minimiser; ties go
/// to the larger lambda. `s_hat` is indexed like the refit structures (or
/// the estimator's theta). Throws std::runtime_error listing the failures if
/// no grid point could be scored.
Selection select_lambda_ebic(const LambdaEstimator& estimator, const Eigen::MatrixXd& s_hat, int n, double p_eff,
                             const EbicConfig& cfg);

struct EdgeMatch {
    double lambda = 0.0;
    EdgeSet edges;
    std::size_t evaluations = 0;
};

/// Bisection over a descending grid for the estimate whose edge count is
/// closest to `target`; among equally close evaluated points the one with
/// fewer edges wins, then the larger lambda.
EdgeMatch match_edge_count(const std::function<EdgeSet(double)>& estimator, std::size_t target,
                           const std::vector<double>& grid);

/// Geometric grid from hi down to lo with `count` points.
std::vector<double> geometric_grid(double hi, double lo, int count);

std::string selection_trace_csv(const Selection& sel);

}  // namespace jtugms
