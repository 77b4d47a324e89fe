#include <doctest.h>

#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "jtugms/experiment.hpp"
#include "jtugms/metrics.hpp"
#include "jtugms/synthetic.hpp"

using namespace jtugms;

namespace {

void check_model(const SyntheticModel& s) {
    const Eigen::MatrixXd& t = s.model.precision();
    CHECK((t - t.transpose()).cwiseAbs().maxCoeff() == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t);
    CHECK(eig.eigenvalues().minCoeff() > 1e-3);
    CHECK(s.model.graph() == s.g_star);
    for (const Edge& e : s.weak) CHECK(s.g_star.has_edge(e.u, e.v));
    for (int i = 0; i < t.rows(); ++i) CHECK(t(i, i) == 1.0);
}

}  // namespace

TEST_CASE("chain family") {
    const SyntheticModel s = generate(preset("CH1", 100, 20, 1));
    check_model(s);
    CHECK(s.g_star.num_edges() == 99);
    CHECK(s.weak.size() == 19);
    const auto& t = s.model.precision();
    CHECK(t(0, 1) == 0.15);
    CHECK(t(50, 51) == 0.245);
    CHECK(s.shrink_steps == 0);
}

TEST_CASE("cycle family") {
    const SyntheticModel s = generate(preset("CY1", 30, 10, 1));
    check_model(s);
    // 29 chain edges, 7 weak +3 edges (1-based i = 1..7) and 18 strong ones
    // (1-based i = 10..27); i = 8, 9 get no +3 edge.
    CHECK(s.g_star.num_edges() == 29 + 7 + 18);
    CHECK_FALSE(s.g_star.has_edge(7, 10));
    CHECK_FALSE(s.g_star.has_edge(8, 11));
    for (const Edge& e : s.weak) CHECK(e.v < 10);
    CHECK(s.weak.size() == 9 + 7);
}

TEST_CASE("hub family") {
    const SyntheticModel s = generate(preset("HB1", 40, 16, 1));
    check_model(s);
    const auto& t = s.model.precision();
    for (const Edge& e : s.weak) CHECK(std::abs(t(e.u, e.v)) == doctest::Approx(1.0 / 8.0));
    CHECK_FALSE(s.weak.empty());
    SyntheticSpec bad = preset("HB2", 40, 8, 1);
    CHECK_THROWS_AS(generate(bad), std::domain_error);
}

TEST_CASE("neighbourhood family") {
    const SyntheticModel a = generate(preset("NB1", 40, 10, 3));
    const SyntheticModel b = generate(preset("NB1", 40, 10, 3));
    check_model(a);
    CHECK(a.model.precision() == b.model.precision());
    CHECK(generate(preset("NB1", 40, 10, 4)).g_star != a.g_star);
    for (Vertex v = 0; v < 40; ++v) {
        std::size_t cross = 0;
        for (const Edge& e : a.weak)
            if ((e.u == v || e.v == v) && (e.u >= 10 || e.v >= 10)) ++cross;
        CHECK(a.g_star.degree(v) <= static_cast<std::size_t>(v < 10 ? 6 : 4) + cross);
    }
}

TEST_CASE("all-weak models make WEDR equal TPR") {
    SyntheticSpec spec = preset("CH1", 12, 12, 1);
    const SyntheticModel s = generate(spec);
    CHECK(s.weak == s.g_star.edges());
    EdgeSet partial;
    for (const Edge& e : s.g_star.edge_list())
        if (e.u % 2 == 0) partial.insert(e);
    const TrialMetrics m = compute_metrics(partial, s.g_star.edges(), s.weak);
    CHECK(m.wedr == m.tpr);
}

TEST_CASE("metrics arithmetic") {
    EdgeSet gstar;
    for (int k = 0; k < 10; ++k) gstar.insert({k, k + 1});
    const EdgeSet weak{{0, 1}, {1, 2}, {2, 3}, {3, 4}};
    EdgeSet ghat = gstar;
    ghat.erase({0, 1});
    ghat.insert({0, 5});
    ghat.insert({2, 7});
    const TrialMetrics m = compute_metrics(ghat, gstar, weak);
    CHECK(m.fdr == doctest::Approx(2.0 / 11.0));
    CHECK(m.tpr == doctest::Approx(9.0 / 10.0));
    CHECK(m.wedr == doctest::Approx(3.0 / 4.0));
    CHECK(m.ed == 3);
    CHECK(m.ed == static_cast<std::size_t>(std::lround(m.fdr * 11 + (1 - m.tpr) * 10)));

    const TrialMetrics same = compute_metrics(gstar, gstar, weak);
    CHECK(same.wedr == 1.0);
    CHECK(same.fdr == 0.0);
    CHECK(same.tpr == 1.0);
    CHECK(same.ed == 0);
    const TrialMetrics empty = compute_metrics(EdgeSet{}, gstar, weak);
    CHECK(empty.tpr == 0.0);
    CHECK(empty.fdr == 0.0);
    CHECK(empty.ed == 10);
    CHECK(compute_metrics(gstar, gstar, {}).wedr == 1.0);

    const Summary s = summarize({1.0, 2.0, 3.0, 4.0});
    CHECK(s.mean == 2.5);
    CHECK(s.se == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
    CHECK(summarize({7.0}).se == 0.0);
    const MetricsReport r = aggregate({same, empty});
    CHECK(r.tpr.mean == 0.5);
    CHECK(r.ed.mean == 5.0);
}

TEST_CASE("seed derivation") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t a = 0; a < 4; ++a)
        for (std::uint64_t b = 0; b < 20; ++b)
            for (std::uint64_t c = 0; c < 4; ++c) seen.insert(derive_seed(1, a, b, c));
    CHECK(seen.size() == 4 * 20 * 4);
    CHECK(derive_seed(1, 2, 3, 4) == derive_seed(1, 2, 3, 4));
    CHECK(derive_seed(1, 2, 3, 4) != derive_seed(2, 2, 3, 4));
}

TEST_CASE("experiment configuration") {
    const auto j = nlohmann::json::parse(R"({"families":["CH1","HB1"],"p":30,"p1":8,"n":[100,200],
        "algorithms":["pc","glasso"],"trials":3,"seed":9})");
    const ExperimentConfig c = ExperimentConfig::from_json(j);
    CHECK(c.families.size() == 2);
    CHECK(c.ns == std::vector<int>{100, 200});
    CHECK(c.algorithms == std::vector<Algorithm>{Algorithm::PC, Algorithm::GLasso});
    const ExperimentConfig back = ExperimentConfig::from_json(c.to_json());
    CHECK(back.to_json() == c.to_json());

    auto error_of = [](const char* text) {
        try {
            ExperimentConfig::from_json(nlohmann::json::parse(text));
        } catch (const std::invalid_argument& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(error_of(R"({"colour":1})").rfind("colour:", 0) == 0);
    CHECK(error_of(R"({"p":"ten"})").rfind("p:", 0) == 0);
    CHECK(error_of(R"({"algorithms":["sgs"]})").rfind("algorithms:", 0) == 0);
    CHECK_FALSE(error_of(R"({"trials":0})").empty());
    CHECK(variant_label(Algorithm::GLasso, true) == "JgL");
    CHECK(variant_label(Algorithm::NLasso, false) == "nL");
}

TEST_CASE("oracle experiment recovers every family exactly") {
    ExperimentConfig c;
    c.families = {"CH1", "CY1", "HB1", "NB1"};
    c.p = 20;
    c.p1 = 8;
    c.ns = {100};
    c.trials = 1;
    c.oracle = true;
    const ExperimentReport r = run_experiment(c);
    CHECK(r.rows.size() == 4 * 1 * 1 * 2);
    for (const auto& row : r.rows) {
        CHECK(row.failures.empty());
        CHECK(row.metrics.ed.mean == 0.0);
    }
    CHECK(r.find("CY1", 100, "JPC") != nullptr);
    CHECK(r.find("CY1", 100, "gL") == nullptr);
}

TEST_CASE("experiment reports are reproducible") {
    ExperimentConfig c;
    c.families = {"CH1"};
    c.p = 20;
    c.p1 = 6;
    c.ns = {80};
    c.trials = 3;
    c.algorithms = {Algorithm::PC, Algorithm::NLasso};
    const ExperimentReport a = run_experiment(c);
    const ExperimentReport b = run_experiment(c);
    CHECK(a.csv() == b.csv());
    CHECK(a.json().dump() == b.json().dump());
    CHECK(a.rows.size() == 4);
    CHECK(a.csv().rfind("# config_hash=" + a.config_hash, 0) == 0);
}
