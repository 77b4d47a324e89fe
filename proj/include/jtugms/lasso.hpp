#pragma once

#include <Eigen/Dense>
#include <vector>

namespace jtugms {

/// min_b 1/2 ||y - X b||^2 + lambda * sum_k w_k |b_k|.
/// A weight of 0 leaves a coordinate unpenalized; an infinite weight pins it
/// to zero.
struct LassoProblem {
    Eigen::MatrixXd design;
    Eigen::VectorXd response;
    Eigen::VectorXd penalty_weights;  // empty means all ones
    double lambda = 0.0;
};

struct LassoOptions {
    double tol = 1e-8;  // stop when the largest coordinate change is below tol
    int max_sweeps = 10000;
    bool track_objective = false;
};

struct LassoResult {
    Eigen::VectorXd beta;
    bool converged = false;
    int sweeps = 0;
    std::vector<double> objective;  // after each sweep, when tracked
};

double soft_threshold(double z, double t);

/// Cyclic coordinate descent on the design/response form.
LassoResult solve_lasso(const LassoProblem& prob, const LassoOptions& opt = {});

/// Same objective written through the Gram matrix:
/// min_b 1/2 b' G b - c' b + lambda * sum_k w_k |b_k|, warm-started at `init`
/// when it has the right size.
LassoResult solve_lasso_gram(const Eigen::MatrixXd& gram, const Eigen::VectorXd& c, const Eigen::VectorXd& weights,
                             double lambda, const LassoOptions& opt = {}, const Eigen::VectorXd& init = {});

double lasso_objective(const LassoProblem& prob, const Eigen::VectorXd& beta);

}  // namespace jtugms
