#pragma once

#include <Eigen/Dense>
#include <atomic>
#include <cstdint>
#include <stdexcept>

#include "jtugms/graph.hpp"

namespace jtugms {

/// Zero-mean Gaussian parameterised by its precision matrix.
class GaussianModel {
public:
    /// Throws std::domain_error unless `precision` is square, symmetric and
    /// positive definite.
    explicit GaussianModel(Eigen::MatrixXd precision);

    int p() const { return static_cast<int>(precision_.rows()); }
    const Eigen::MatrixXd& precision() const { return precision_; }
    const Eigen::MatrixXd& covariance() const { return covariance_; }
    /// Graph of non-zero off-diagonal precision entries (|x| > tol).
    Graph graph(double tol = 0.0) const;

private:
    Eigen::MatrixXd precision_;
    Eigen::MatrixXd covariance_;
};

/// n x p observation matrix, one sample per row.
struct Dataset {
    Eigen::MatrixXd x;
    int n() const { return static_cast<int>(x.rows()); }
    int p() const { return static_cast<int>(x.cols()); }
};

class NotPositiveDefinite : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Thrown by partial_correlation when Sigma_{S,S} cannot be factorised.
class SingularSeparator : public std::runtime_error {
public:
    SingularSeparator(VertexSet s);
    const VertexSet& separator() const { return separator_; }

private:
    VertexSet separator_;
};

/// n i.i.d. draws from N(0, precision^{-1}): x = L^{-T} z with precision = L L^T.
Dataset sample(const GaussianModel& model, int n, std::uint64_t seed);

/// (1/n) sum_k x_A x_A^T; with `center` the column means are removed first.
Eigen::MatrixXd empirical_covariance(const Dataset& data, const VertexSet& a, bool center = false);
Eigen::MatrixXd empirical_covariance(const Dataset& data, bool center = false);

/// Correlation of i and j given S, from the conditional covariance
/// Sigma_{ij|S} = Sigma_{ij} - Sigma_{i,S} Sigma_{S,S}^{-1} Sigma_{S,j}
/// (Cholesky solve of Sigma_{S,S}).
double partial_correlation(const Eigen::MatrixXd& sigma, Vertex i, Vertex j, const VertexSet& s);

struct TestConfig {
    enum class Variant { RawThreshold, FisherZ };
    Variant variant = Variant::RawThreshold;
    double lambda = 0.0;  // RawThreshold: independent iff |rho| < lambda
    double alpha = 0.05;  // FisherZ: two-sided level

    static TestConfig raw(double lambda) { return {Variant::RawThreshold, lambda, 0.0}; }
    static TestConfig fisher(double alpha) { return {Variant::FisherZ, 0.0, alpha}; }
    void validate() const;
};

/// Phi^{-1}(1 - alpha/2).
double fisher_z_cutoff(double alpha);
/// |rho| threshold equivalent to the Fisher test at level alpha.
double fisher_equivalent_lambda(double alpha, int n, std::size_t sep_size);

/// Conditional-independence decision procedure. Implementations must be safe
/// to call concurrently.
class CiTest {
public:
    virtual ~CiTest() = default;
    virtual bool independent(Vertex i, Vertex j, const VertexSet& s) const = 0;
    virtual int p() const = 0;
};

/// Tests on the empirical covariance of a dataset.
class DataCiTest final : public CiTest {
public:
    DataCiTest(const Dataset& data, TestConfig cfg, bool center = false);
    DataCiTest(Eigen::MatrixXd s_hat, int n, TestConfig cfg);

    bool independent(Vertex i, Vertex j, const VertexSet& s) const override;
    int p() const override { return static_cast<int>(s_hat_.rows()); }

    double statistic(Vertex i, Vertex j, const VertexSet& s) const { return partial_correlation(s_hat_, i, j, s); }
    const Eigen::MatrixXd& covariance() const { return s_hat_; }
    int n() const { return n_; }
    const TestConfig& config() const { return cfg_; }
    /// Number of tests whose conditional covariance was singular (reported as
    /// dependent).
    std::size_t singular_count() const { return singular_.load(); }

private:
    Eigen::MatrixXd s_hat_;
    int n_;
    TestConfig cfg_;
    double fisher_cut_ = 0.0;
    mutable std::atomic<std::size_t> singular_{0};
};

/// Exact test on the model covariance: independent iff |rho| < 1e-10.
class OracleCiTest final : public CiTest {
public:
    explicit OracleCiTest(const GaussianModel& model) : sigma_(model.covariance()) {}
    explicit OracleCiTest(Eigen::MatrixXd sigma) : sigma_(std::move(sigma)) {}
    bool independent(Vertex i, Vertex j, const VertexSet& s) const override;
    int p() const override { return static_cast<int>(sigma_.rows()); }

private:
    Eigen::MatrixXd sigma_;
};

bool ci_test(const Dataset& data, Vertex i, Vertex j, const VertexSet& s, const TestConfig& cfg);
bool oracle_ci(const GaussianModel& model, Vertex i, Vertex j, const VertexSet& s);

}  // namespace jtugms
