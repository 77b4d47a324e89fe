#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "jtugms/framework.hpp"
#include "jtugms/pc.hpp"

using namespace jtugms;
using fixtures::edge1;
using fixtures::set1;

namespace {

/// Faithful model on the seven-vertex example graph.
GaussianModel fig1_model() {
    std::mt19937_64 rng(71);
    const Graph g = fixtures::fig1_gstar();
    for (;;) {
        GaussianModel m(oracles::random_precision(g, rng));
        if (oracles::is_faithful(m, g)) return m;
    }
}

VertexSet range(int p) {
    VertexSet v;
    for (int k = 0; k < p; ++k) v.push_back(k);
    return v;
}

}  // namespace

TEST_CASE("algorithm names and configuration") {
    CHECK(parse_algorithm("glasso") == Algorithm::GLasso);
    CHECK(to_string(Algorithm::NLasso) == "nlasso");
    CHECK_THROWS_AS(parse_algorithm("sgs"), std::invalid_argument);
    FrameworkConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.kappa_screen = 4;
    CHECK_THROWS_AS(cfg.validate(), std::domain_error);
    cfg = {};
    cfg.lambda_grid = {0.1, 0.2};
    CHECK_THROWS_AS(cfg.validate(), std::domain_error);
}

TEST_CASE("evidence blocks") {
    Eigen::MatrixXd s(3, 3);
    s << 1, 2, 3, 2, 5, 6, 3, 6, 9;
    const Evidence ev{s, 10, false};
    Eigen::MatrixXd b(2, 2);
    b << 1, 3, 3, 9;
    CHECK(ev.block({0, 2}) == b);
    CHECK(ev.p() == 3);
}

TEST_CASE("region estimate on the seven-vertex example") {
    const GaussianModel m = fig1_model();
    const Evidence ev = Evidence::from_model(m);
    const Graph h = fixtures::fig1_h();
    const RegionGraph rg = RegionGraph::build(build_junction_tree(h));
    const RegionId r = rg.find(0, set1({1, 2, 3, 5}));
    const RegionEstimate est = estimate_region(rg, r, h, h, ev, FrameworkConfig{});
    CHECK(est.tested == EdgeSet{edge1(1, 2), edge1(2, 3), edge1(2, 5)});
    CHECK(est.accepted == EdgeSet{edge1(1, 2)});
    CHECK(est.method == "oracle");

    // Every region: the oracle returns exactly the true edges it may test.
    const Graph gstar = fixtures::fig1_gstar();
    for (const Region& reg : rg.regions()) {
        const RegionEstimate e = estimate_region(rg, reg.id, h, h, ev, FrameworkConfig{});
        EdgeSet expect;
        for (const Edge& x : e.tested)
            if (gstar.has_edge(x.u, x.v)) expect.insert(x);
        CHECK(e.accepted == expect);
    }
}

TEST_CASE("framework recovers the seven-vertex example") {
    const GaussianModel m = fig1_model();
    FrameworkConfig cfg;
    cfg.separator_cap = 3;
    cfg.record_dot = true;
    const FrameworkResult res = jt_framework(Evidence::from_model(m), fixtures::fig1_h(), cfg);
    CHECK(res.graph == fixtures::fig1_gstar());
    REQUIRE_FALSE(res.trace.iterations.empty());
    CHECK(res.trace.iterations[0].row == 0);
    CHECK(res.trace.iterations[0].junction_tree_dot.find("graph") != std::string::npos);
    EdgeSet removed;
    for (const auto& it : res.trace.iterations) {
        for (const Edge& e : it.added) CHECK(it.removed.count(e) == 1);
        for (const Edge& e : it.removed) CHECK(removed.insert(e).second);
    }
    CHECK(removed == fixtures::fig1_h().edges());
}

TEST_CASE("oracle framework equals flat PC on random faithful models") {
    std::mt19937_64 rng(72);
    for (int rep = 0; rep < 20; ++rep) {
        const int p = 4 + rep % 5;
        const auto fm = oracles::random_faithful_model(p, 0.35, rng);
        const Evidence ev = Evidence::from_model(fm.model);
        const Graph kp = complete_graph(range(p));
        for (std::size_t cap : {1u, 2u, 3u}) {
            FrameworkConfig cfg;
            cfg.separator_cap = cap;
            const FrameworkResult res = jt_framework(ev, kp, cfg);
            CHECK(res.graph == fm.g);
            CHECK(res.trace.iterations.size() <= kp.num_edges());
        }
        // A screened candidate graph gives the same answer.
        const Graph h = graph_union(fm.g, oracles::random_graph(p, 0.3, rng));
        CHECK(jt_framework(ev, h, FrameworkConfig{}).graph == fm.g);
        CHECK(Graph(range(p), estimate_flat(ev, kp, FrameworkConfig{}, 0.0)) == fm.g);
        CHECK(screen_graph_H(ev, 0, TestConfig::fisher(0.25)).num_edges() >= fm.g.num_edges());
    }
}

TEST_CASE("pruning a supergraph with the oracle leaves the true graph") {
    std::mt19937_64 rng(73);
    for (int rep = 0; rep < 15; ++rep) {
        const int p = 5 + rep % 4;
        const auto fm = oracles::random_faithful_model(p, 0.3, rng);
        const Graph sup = graph_union(fm.g, oracles::random_graph(p, 0.4, rng));
        CHECK(prune_edges(Evidence::from_model(fm.model), sup, TestConfig::fisher(0.05)) == fm.g);
    }
}

TEST_CASE("two-cluster split") {
    // Two 4-cliques sharing vertex 3 (0-based).
    Graph g(7);
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) g.add_edge(a, b);
    for (int a = 3; a < 7; ++a)
        for (int b = a + 1; b < 7; ++b) g.add_edge(a, b);
    TwoClusterSplit s;
    REQUIRE(split_two_cluster(build_junction_tree(g), g.vertices(), s));
    CHECK(s.t == VertexSet{3});
    CHECK(set_union(set_union(s.v1, s.v2), s.t) == g.vertices());
    CHECK(set_intersection(s.v1, s.v2).empty());
    for (Vertex a : s.v1)
        for (Vertex b : s.v2) CHECK(is_separator(g, s.t, a, b));

    Graph forest(4);
    forest.add_edge(0, 1);
    forest.add_edge(2, 3);
    REQUIRE(split_two_cluster(build_junction_tree(forest), forest.vertices(), s));
    CHECK(s.t.empty());
    CHECK(s.v1 == VertexSet{0, 1});
    CHECK(s.v2 == VertexSet{2, 3});
    CHECK_FALSE(split_two_cluster(build_junction_tree(complete_graph({0, 1, 2})), {0, 1, 2}, s));
}

TEST_CASE("two-cluster pipeline with the oracle") {
    std::mt19937_64 rng(74);
    for (int rep = 0; rep < 10; ++rep) {
        // Two random faithful blocks glued at one vertex.
        const auto a = oracles::random_faithful_model(4, 0.6, rng);
        const auto b = oracles::random_faithful_model(4, 0.6, rng);
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(7, 7);
        t.topLeftCorner(4, 4) += a.model.precision();
        t.bottomRightCorner(4, 4) += b.model.precision();
        Graph g(7);
        for (const Edge& e : a.g.edge_list()) g.add_edge(e.u, e.v);
        for (const Edge& e : b.g.edge_list()) g.add_edge(e.u + 3, e.v + 3);
        const GaussianModel m(t);
        if (!oracles::is_faithful(m, g)) continue;
        const TwoClusterResult r = estimate_two_cluster(Evidence::from_model(m), FrameworkConfig{});
        CHECK(r.graph == g);
    }
}

TEST_CASE("data-driven framework runs for every algorithm") {
    std::mt19937_64 rng(75);
    const Graph g = oracles::random_graph(16, 0.15, rng);
    const GaussianModel m(oracles::random_precision(g, rng));
    const Dataset d = sample(m, 200, 5);
    const Graph h = screen_graph_H(d, 1, TestConfig::fisher(0.25));
    for (Algorithm algo : {Algorithm::PC, Algorithm::NLasso, Algorithm::GLasso}) {
        FrameworkConfig cfg;
        cfg.algo = algo;
        cfg.small_subproblem_size = 4;
        const FrameworkResult res = jt_framework(d, h, cfg);
        for (const Edge& e : res.graph.edge_list()) CHECK(h.has_edge(e.u, e.v));
        bool ran_algo = false;
        for (const auto& it : res.trace.iterations)
            for (const auto& r : it.regions)
                if (r.method == to_string(algo)) ran_algo = true;
        CHECK(ran_algo);
        const Selection flat = estimate_flat_ebic(Evidence::from_data(d), h, cfg);
        for (const Edge& e : flat.edges) CHECK(h.has_edge(e.u, e.v));
    }
    FrameworkConfig pr;
    pr.prune = true;
    const FrameworkResult pruned = jt_framework(d, h, pr);
    for (const Edge& e : pruned.trace.pruned) CHECK_FALSE(pruned.graph.has_edge(e.u, e.v));
    const TwoClusterResult two = estimate_two_cluster(d, FrameworkConfig{});
    for (const Edge& e : two.graph.edge_list()) CHECK(two.screened.has_edge(e.u, e.v));
}
