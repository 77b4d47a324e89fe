#pragma once

#include <Eigen/Dense>

#include "jtugms/graph.hpp"
#include "jtugms/lasso.hpp"

namespace jtugms {

enum class NeighborhoodRule { Union, Intersection };

struct NlassoOptions {
    NeighborhoodRule rule = NeighborhoodRule::Intersection;
    bool adaptive = false;  // second stage with weights 1 / (|beta_init| + 1e-6)
    double support_tol = 1e-10;
    LassoOptions lasso{};
};

/// Neighbourhood selection over the vertices `rbar`.
///
/// `s_hat` is the (1/n-scaled) empirical covariance over all p variables; the
/// per-node objective is 1/2 b' S_AA b - S_Ak' b + lambda * sum w|b|, the
/// sample-averaged form of the regression Lasso. For node k the allowed
/// coordinates are its neighbours in the marginal graph of `h` over rbar;
/// only neighbours in `hprime` are penalized, every other allowed coordinate
/// is free and every remaining vertex is pinned to zero. Returns the edges of
/// `hprime` selected under `rule`.
EdgeSet nlasso(const Eigen::MatrixXd& s_hat, const VertexSet& rbar, const Graph& h, const Graph& hprime, double lambda,
               const NlassoOptions& opt = {});

}  // namespace jtugms
