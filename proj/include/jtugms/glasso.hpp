#pragma once

#include <Eigen/Dense>

#include "jtugms/graph.hpp"

namespace jtugms {

struct GlassoOptions {
    double tol = 1e-10;       // largest change of W over one full sweep
    int max_iterations = 500;  // full column sweeps
    double inner_tol = 1e-12;
    double edge_tol = 1e-6;  // |Theta_ij| above this counts as an edge
};

struct GlassoResult {
    Eigen::MatrixXd theta;
    Eigen::MatrixXd w;  // estimated covariance, theta^{-1}
    EdgeSet edges;      // penalized edges with |theta_ij| > edge_tol
    bool converged = false;
    int iterations = 0;
};

/// Maximises log det(Theta) - tr(S Theta) - lambda * sum |Theta_ij| over the
/// off-diagonal entries of `penalized`, with Theta_ij = 0 for every pair that
/// is not an edge of `constraint`. The diagonal is unpenalized.
///
/// Row k of `s_hat` corresponds to constraint.vertices()[k]; edges are given
/// and returned in those vertex ids. Throws std::domain_error if s_hat is not
/// PSD or penalized is not inside constraint.
///
/// Block coordinate descent on W = Theta^{-1}: each column solves a Lasso
/// over its allowed coordinates only.
GlassoResult glasso(const Eigen::MatrixXd& s_hat, const Graph& constraint, const Graph& penalized, double lambda,
                    const GlassoOptions& opt = {});

}  // namespace jtugms
