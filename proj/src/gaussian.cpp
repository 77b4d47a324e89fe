#include "jtugms/gaussian.hpp"

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <random>
#include <string>

namespace jtugms {

namespace {

std::string format_set(const VertexSet& s) {
    std::string out = "{";
    for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k]);
    return out + "}";
}

}  // namespace

GaussianModel::GaussianModel(Eigen::MatrixXd precision) : precision_(std::move(precision)) {
    if (precision_.rows() != precision_.cols()) throw std::domain_error("precision matrix must be square");
    const double scale = std::max(1.0, precision_.cwiseAbs().maxCoeff());
    if ((precision_ - precision_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::domain_error("precision matrix must be symmetric");
    Eigen::LLT<Eigen::MatrixXd> llt(precision_);
    if (llt.info() != Eigen::Success) throw NotPositiveDefinite("precision matrix is not positive definite");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(precision_, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() <= 0.0) throw NotPositiveDefinite("precision matrix is not positive definite");
    covariance_ = llt.solve(Eigen::MatrixXd::Identity(precision_.rows(), precision_.cols()));
    covariance_ = 0.5 * (covariance_ + covariance_.transpose()).eval();
}

Graph GaussianModel::graph(double tol) const {
    Graph g(p());
    for (int i = 0; i < p(); ++i)
        for (int j = i + 1; j < p(); ++j)
            if (std::abs(precision_(i, j)) > tol) g.add_edge(i, j);
    return g;
}

SingularSeparator::SingularSeparator(VertexSet s)
    : std::runtime_error("singular conditional covariance for separator " + format_set(s)), separator_(std::move(s)) {}

Dataset sample(const GaussianModel& model, int n, std::uint64_t seed) {
    if (n < 1) throw std::domain_error("sample: n must be positive");
    Eigen::LLT<Eigen::MatrixXd> llt(model.precision());
    if (llt.info() != Eigen::Success) throw NotPositiveDefinite("sample: Cholesky of precision failed");
    const int p = model.p();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd z(p, n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < p; ++i) z(i, k) = normal(rng);
    // Solve L^T x = z column-wise.
    Eigen::MatrixXd x = llt.matrixU().solve(z);
    return Dataset{x.transpose()};
}

Eigen::MatrixXd empirical_covariance(const Dataset& data, const VertexSet& a, bool center) {
    Eigen::MatrixXd xa(data.n(), static_cast<Eigen::Index>(a.size()));
    for (std::size_t k = 0; k < a.size(); ++k) xa.col(static_cast<Eigen::Index>(k)) = data.x.col(a[k]);
    if (center) xa.rowwise() -= xa.colwise().mean();
    Eigen::MatrixXd s = (xa.transpose() * xa) / static_cast<double>(data.n());
    return 0.5 * (s + s.transpose());
}

Eigen::MatrixXd empirical_covariance(const Dataset& data, bool center) {
    Eigen::MatrixXd xa = data.x;
    if (center) xa.rowwise() -= xa.colwise().mean();
    Eigen::MatrixXd s = (xa.transpose() * xa) / static_cast<double>(data.n());
    return 0.5 * (s + s.transpose());
}

double partial_correlation(const Eigen::MatrixXd& sigma, Vertex i, Vertex j, const VertexSet& s) {
    if (i == j) throw std::domain_error("partial_correlation: i == j");
    Eigen::Matrix2d m;
    m << sigma(i, i), sigma(i, j), sigma(j, i), sigma(j, j);
    if (!s.empty()) {
        const auto k = static_cast<Eigen::Index>(s.size());
        Eigen::MatrixXd sss(k, k);
        Eigen::MatrixXd ssb(k, 2);
        for (Eigen::Index a = 0; a < k; ++a) {
            for (Eigen::Index b = 0; b < k; ++b) sss(a, b) = sigma(s[static_cast<std::size_t>(a)], s[static_cast<std::size_t>(b)]);
            ssb(a, 0) = sigma(s[static_cast<std::size_t>(a)], i);
            ssb(a, 1) = sigma(s[static_cast<std::size_t>(a)], j);
        }
        Eigen::LLT<Eigen::MatrixXd> llt(sss);
        if (llt.info() != Eigen::Success) throw SingularSeparator(s);
        const Eigen::VectorXd diag = llt.matrixL().toDenseMatrix().diagonal();
        if (diag.minCoeff() <= 1e-7 * std::sqrt(sss.diagonal().maxCoeff())) throw SingularSeparator(s);
        Eigen::MatrixXd y = llt.matrixL().solve(ssb);
        m -= y.transpose() * y;
    }
    const double scale = std::max(std::abs(sigma(i, i)), std::abs(sigma(j, j)));
    if (m(0, 0) <= 1e-14 * scale || m(1, 1) <= 1e-14 * scale) throw SingularSeparator(s);
    const double rho = m(0, 1) / std::sqrt(m(0, 0) * m(1, 1));
    return std::clamp(rho, -1.0, 1.0);
}

void TestConfig::validate() const {
    if (variant == Variant::RawThreshold && !(lambda >= 0.0)) throw std::domain_error("lambda_n must be non-negative");
    if (variant == Variant::FisherZ && !(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0,1)");
}

double fisher_z_cutoff(double alpha) {
    boost::math::normal_distribution<double> standard;
    return boost::math::quantile(standard, 1.0 - alpha / 2.0);
}

double fisher_equivalent_lambda(double alpha, int n, std::size_t sep_size) {
    const double dof = static_cast<double>(n) - static_cast<double>(sep_size) - 3.0;
    if (dof <= 0.0) throw std::domain_error("Fisher test needs |S| <= n - 4");
    return std::tanh(fisher_z_cutoff(alpha) / std::sqrt(dof));
}

DataCiTest::DataCiTest(const Dataset& data, TestConfig cfg, bool center)
    : DataCiTest(empirical_covariance(data, center), data.n(), cfg) {}

DataCiTest::DataCiTest(Eigen::MatrixXd s_hat, int n, TestConfig cfg) : s_hat_(std::move(s_hat)), n_(n), cfg_(cfg) {
    cfg_.validate();
    if (n_ < 2) throw std::domain_error("dataset needs at least two samples");
    if (cfg_.variant == TestConfig::Variant::FisherZ) fisher_cut_ = fisher_z_cutoff(cfg_.alpha);
}

bool DataCiTest::independent(Vertex i, Vertex j, const VertexSet& s) const {
    double rho = 0.0;
    try {
        rho = partial_correlation(s_hat_, i, j, s);
    } catch (const SingularSeparator&) {
        singular_.fetch_add(1, std::memory_order_relaxed);
        return false;
    }
    if (cfg_.variant == TestConfig::Variant::RawThreshold) return std::abs(rho) < cfg_.lambda;

    const double dof = static_cast<double>(n_) - static_cast<double>(s.size()) - 3.0;
    if (dof <= 0.0) throw std::domain_error("Fisher test needs |S| <= n - 4");
    const double r = std::clamp(rho, -1.0 + 1e-15, 1.0 - 1e-15);
    const double z = 0.5 * std::log((1.0 + r) / (1.0 - r));
    return std::sqrt(dof) * std::abs(z) <= fisher_cut_;
}

bool OracleCiTest::independent(Vertex i, Vertex j, const VertexSet& s) const {
    return std::abs(partial_correlation(sigma_, i, j, s)) < 1e-10;
}

bool ci_test(const Dataset& data, Vertex i, Vertex j, const VertexSet& s, const TestConfig& cfg) {
    return DataCiTest(data, cfg).independent(i, j, s);
}

bool oracle_ci(const GaussianModel& model, Vertex i, Vertex j, const VertexSet& s) {
    return OracleCiTest(model).independent(i, j, s);
}

}  // namespace jtugms
