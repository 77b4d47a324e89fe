#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "jtugms/gaussian.hpp"
#include "jtugms/graph.hpp"
#include "jtugms/junction_tree.hpp"
#include "jtugms/model_selection.hpp"
#include "jtugms/nlasso.hpp"
#include "jtugms/region_graph.hpp"

namespace jtugms {

enum class Algorithm { PC, NLasso, GLasso };

std::string to_string(Algorithm a);
/// Accepts "pc", "nlasso", "glasso"; throws std::invalid_argument otherwise.
Algorithm parse_algorithm(const std::string& name);

/// What the estimators see: the empirical covariance with its sample size,
/// or the exact covariance of a model (oracle mode, every CI decision exact).
struct Evidence {
    Eigen::MatrixXd sigma;
    int n = 0;
    bool oracle = false;

    static Evidence from_data(const Dataset& data, bool center = false);
    static Evidence from_model(const GaussianModel& model);
    int p() const { return static_cast<int>(sigma.rows()); }
    /// Rows/columns of sigma restricted to `a`.
    Eigen::MatrixXd block(const VertexSet& a) const;
};

/// CI test over `ev`: the exact test in oracle mode, otherwise `cfg`.
std::unique_ptr<CiTest> make_ci_test(const Evidence& ev, const TestConfig& cfg);

struct FrameworkConfig {
    Algorithm algo = Algorithm::PC;
    int kappa = 1;          // separator search depth of PC inside subproblems
    int kappa_screen = 0;   // depth of the screening pass
    double screen_alpha = 0.25;
    std::size_t separator_cap = 2;
    int small_subproblem_size = 8;  // |R-bar| below this: per-edge Fisher tests
    double small_alpha = 0.05;
    double gamma = 0.5;
    std::vector<double> lambda_grid;  // empty: default_lambda_grid
    bool prune = false;
    double prune_alpha = 0.05;
    NlassoOptions nlasso{};
    bool record_dot = false;  // keep DOT renderings of every iteration

    void validate() const;
};

/// Descending grid used when cfg.lambda_grid is empty: thresholds on |rho|
/// for PC, multiples of the largest off-diagonal |S_ij| for the Lasso types.
std::vector<double> default_lambda_grid(Algorithm algo, const Evidence& ev);

/// PC(kappa, K_V, K_V) with a Fisher test at level alpha (exact test in
/// oracle mode).
Graph screen_graph_H(const Evidence& ev, int kappa, const TestConfig& test);
Graph screen_graph_H(const Dataset& data, int kappa, const TestConfig& test);

struct RegionEstimate {
    RegionId region = -1;
    VertexSet vertices;
    VertexSet closure;
    EdgeSet tested;    // E(H'_R)
    EdgeSet accepted;  // subset of tested
    std::string method;  // "oracle", "fisher", or the algorithm name
    double lambda = 0.0;
};

/// Estimates the edges of H'_R, where H'_R is taken w.r.t. `hrem` (edges not
/// yet estimated) and `u` = Ĝ ∪ hrem is the graph the region graph was built
/// from.
RegionEstimate estimate_region(const RegionGraph& rg, RegionId id, const Graph& hrem, const Graph& u, const Evidence& ev,
                               const FrameworkConfig& cfg);

struct IterationRecord {
    int iteration = 0;
    std::size_t row = 0;  // 0-based row that was estimated
    std::size_t num_rows = 0;
    std::size_t num_regions = 0;
    std::size_t num_clusters = 0;
    std::size_t max_separator = 0;
    std::vector<RegionEstimate> regions;  // ascending region id
    EdgeSet added;    // accepted edges moved into Ĝ
    EdgeSet removed;  // every tested edge, removed from H
    std::string junction_tree_dot;
    std::string region_graph_dot;
};

struct FrameworkTrace {
    std::vector<IterationRecord> iterations;
    EdgeSet pruned;
    bool fell_back = false;
    std::string note;
};

struct FrameworkResult {
    Graph graph;
    FrameworkTrace trace;
};

/// Iterative junction-tree estimation: rebuild the junction tree (cap-merged)
/// and region graph of Ĝ ∪ H, estimate the shallowest row with a nonempty
/// H'_R, move tested edges out of H, repeat until H is empty.
FrameworkResult jt_framework(const Evidence& ev, const Graph& h, const FrameworkConfig& cfg);
FrameworkResult jt_framework(const Dataset& data, const Graph& h, const FrameworkConfig& cfg);

/// Configured algorithm run once over all of V with candidate graph h, at a
/// fixed lambda.
EdgeSet estimate_flat(const Evidence& ev, const Graph& h, const FrameworkConfig& cfg, double lambda);
/// Same, with lambda picked by EBIC over the grid.
Selection estimate_flat_ebic(const Evidence& ev, const Graph& h, const FrameworkConfig& cfg);

/// Deletes (i, j) when X_i ⊥ X_j given ne(i)\{j} or given ne(j)\{i}, both
/// in the input graph; conditioning sets larger than min(n - 4, 20) are not
/// tested. All decisions use the input graph.
Graph prune_edges(const Evidence& ev, const Graph& g_hat, const TestConfig& test);

struct TwoClusterSplit {
    VertexSet v1, v2, t;
};

/// Splits the vertex set at the smallest separator of a junction tree
/// (ties: lowest tree-edge index). Components of a forest are split with
/// T = ∅. Returns false for a single cluster.
bool split_two_cluster(const JunctionTree& jt, const VertexSet& all, TwoClusterSplit& out);

struct TwoClusterResult {
    Graph graph;
    TwoClusterSplit split;
    Graph screened;
    double lambda1 = 0.0, lambda2 = 0.0, lambda_t = 0.0;
    FrameworkTrace trace;  // filled when falling back to jt_framework
};

/// Screen, split into V1 | T | V2, run PC on V1 ∪ T and V2 ∪ T with their
/// own lambdas, then on the edges inside T conditioning within T and its
/// estimated neighbours, and take the union.
TwoClusterResult estimate_two_cluster(const Evidence& ev, const FrameworkConfig& cfg);
TwoClusterResult estimate_two_cluster(const Dataset& data, const FrameworkConfig& cfg);

}  // namespace jtugms
