#include "jtugms/framework.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>

#include "jtugms/glasso.hpp"
#include "jtugms/pc.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace jtugms {

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::PC: return "pc";
        case Algorithm::NLasso: return "nlasso";
        case Algorithm::GLasso: return "glasso";
    }
    return "?";
}

Algorithm parse_algorithm(const std::string& name) {
    if (name == "pc") return Algorithm::PC;
    if (name == "nlasso") return Algorithm::NLasso;
    if (name == "glasso") return Algorithm::GLasso;
    throw std::invalid_argument("unknown algorithm '" + name + "' (expected pc, nlasso or glasso)");
}

Evidence Evidence::from_data(const Dataset& data, bool center) {
    if (data.n() < 2) throw std::domain_error("dataset needs at least two samples");
    return {empirical_covariance(data, center), data.n(), false};
}

Evidence Evidence::from_model(const GaussianModel& model) { return {model.covariance(), 0, true}; }

Eigen::MatrixXd Evidence::block(const VertexSet& a) const {
    const auto k = static_cast<Eigen::Index>(a.size());
    Eigen::MatrixXd out(k, k);
    for (Eigen::Index x = 0; x < k; ++x)
        for (Eigen::Index y = 0; y < k; ++y) out(x, y) = sigma(a[static_cast<std::size_t>(x)], a[static_cast<std::size_t>(y)]);
    return out;
}

std::unique_ptr<CiTest> make_ci_test(const Evidence& ev, const TestConfig& cfg) {
    if (ev.oracle) return std::make_unique<OracleCiTest>(ev.sigma);
    return std::make_unique<DataCiTest>(ev.sigma, ev.n, cfg);
}

void FrameworkConfig::validate() const {
    if (kappa < 0) throw std::domain_error("kappa must be non-negative");
    if (kappa_screen < 0 || kappa_screen > 3) throw std::domain_error("screening kappa must lie in 0..3");
    if (separator_cap < 1) throw std::domain_error("separator cap must be at least 1");
    if (small_subproblem_size < 2) throw std::domain_error("small subproblem size must be at least 2");
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::domain_error("gamma must lie in [0,1]");
    TestConfig::fisher(screen_alpha).validate();
    TestConfig::fisher(small_alpha).validate();
    TestConfig::fisher(prune_alpha).validate();
    if (!lambda_grid.empty()) EbicConfig{gamma, lambda_grid}.validate();
}

std::vector<double> default_lambda_grid(Algorithm algo, const Evidence& ev) {
    if (algo == Algorithm::PC) return geometric_grid(0.6, 0.03, 24);
    double top = 0.0;
    for (Eigen::Index i = 0; i < ev.sigma.rows(); ++i)
        for (Eigen::Index j = i + 1; j < ev.sigma.cols(); ++j) top = std::max(top, std::abs(ev.sigma(i, j)));
    if (!(top > 0.0)) top = 1.0;
    return geometric_grid(top, 0.02 * top, 20);
}

namespace {

std::vector<double> grid_for(const FrameworkConfig& cfg, const Evidence& ev) {
    return cfg.lambda_grid.empty() ? default_lambda_grid(cfg.algo, ev) : cfg.lambda_grid;
}

Graph edges_to_graph(const VertexSet& vs, const EdgeSet& es) { return Graph(vs, es); }

/// Structure used for the likelihood refit of a subproblem: the marginal
/// graph of u over rbar without the edges of `tested` that were rejected.
Graph refit_structure(const Graph& marginal, const EdgeSet& tested, const EdgeSet& accepted) {
    Graph g = marginal;
    for (const Edge& e : tested)
        if (!accepted.count(e)) g.remove_edge(e.u, e.v);
    return g;
}

}  // namespace

Graph screen_graph_H(const Evidence& ev, int kappa, const TestConfig& test) {
    VertexSet all(static_cast<std::size_t>(ev.p()));
    for (int v = 0; v < ev.p(); ++v) all[static_cast<std::size_t>(v)] = v;
    const Graph k = complete_graph(all);
    auto t = make_ci_test(ev, test);
    return pc(kappa, *t, k, k);
}

Graph screen_graph_H(const Dataset& data, int kappa, const TestConfig& test) {
    return screen_graph_H(Evidence::from_data(data), kappa, test);
}

RegionEstimate estimate_region(const RegionGraph& rg, RegionId id, const Graph& hrem, const Graph& u, const Evidence& ev,
                               const FrameworkConfig& cfg) {
    RegionEstimate out;
    out.region = id;
    out.vertices = rg.region(id).vertices;
    const Graph hp = rg.estimable_subgraph(hrem, id);
    out.tested = hp.edges();
    if (out.tested.empty()) {
        out.method = "none";
        return out;
    }
    out.closure = rg.closure(id);
    const VertexSet& rbar = out.closure;
    const Graph hp_full(rbar, out.tested);

    if (ev.oracle || static_cast<int>(rbar.size()) < cfg.small_subproblem_size) {
        out.method = ev.oracle ? "oracle" : "fisher";
        auto test = make_ci_test(ev, TestConfig::fisher(cfg.small_alpha));
        const int eta = std::max(0, static_cast<int>(rbar.size()) - 2);
        out.accepted = pc(eta, *test, complete_graph(rbar), hp_full).edges();
        return out;
    }

    out.method = to_string(cfg.algo);
    const Graph marginal = marginal_graph(u, rbar);
    const Eigen::MatrixXd s_r = ev.block(rbar);
    LambdaEstimator est;
    switch (cfg.algo) {
        case Algorithm::PC:
            est = [&](double lambda) {
                DataCiTest test(ev.sigma, ev.n, TestConfig::raw(lambda));
                LambdaFit fit;
                fit.edges = pc(cfg.kappa, test, u, hp_full).edges();
                fit.scored_edges = fit.edges.size();
                fit.refit_structure = refit_structure(marginal, out.tested, fit.edges);
                return fit;
            };
            break;
        case Algorithm::NLasso:
            est = [&](double lambda) {
                LambdaFit fit;
                fit.edges = nlasso(ev.sigma, rbar, u, hp_full, lambda, cfg.nlasso);
                fit.scored_edges = fit.edges.size();
                fit.refit_structure = refit_structure(marginal, out.tested, fit.edges);
                return fit;
            };
            break;
        case Algorithm::GLasso:
            est = [&](double lambda) {
                auto gl = glasso(s_r, marginal, hp_full, lambda);
                LambdaFit fit;
                fit.edges = gl.edges;
                fit.scored_edges = fit.edges.size();
                fit.theta = gl.theta;
                return fit;
            };
            break;
    }
    const auto sel = select_lambda_ebic(est, s_r, ev.n, static_cast<double>(rbar.size()), {cfg.gamma, grid_for(cfg, ev)});
    out.accepted = sel.edges;
    out.lambda = sel.lambda;
    return out;
}

FrameworkResult jt_framework(const Evidence& ev, const Graph& h, const FrameworkConfig& cfg) {
    cfg.validate();
    FrameworkResult res;
    Graph ghat(h.vertices());
    Graph hrem = h;
    int iteration = 0;
    while (hrem.num_edges() > 0) {
        const Graph u = graph_union(ghat, hrem);
        const JunctionTree jt = merge_by_separator_cap(build_junction_tree(u), cfg.separator_cap);
        const RegionGraph rg = RegionGraph::build(jt);

        IterationRecord rec;
        rec.iteration = ++iteration;
        rec.num_rows = rg.num_rows();
        rec.num_regions = rg.num_regions();
        rec.num_clusters = jt.clusters.size();
        rec.max_separator = jt.max_separator_size();
        if (cfg.record_dot) {
            rec.junction_tree_dot = to_dot(jt);
            rec.region_graph_dot = to_dot(rg);
        }

        std::vector<RegionId> todo;
        for (std::size_t r = 0; r < rg.num_rows() && todo.empty(); ++r) {
            for (RegionId id : rg.row(r))
                if (rg.estimable_subgraph(hrem, id).num_edges() > 0) todo.push_back(id);
            rec.row = r;
        }
        if (todo.empty()) throw std::logic_error("jt_framework: no estimable region while edges remain");

        rec.regions.resize(todo.size());
        std::exception_ptr failure;
        const auto m = static_cast<long>(todo.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (m > 1)
#endif
        for (long x = 0; x < m; ++x) {
            try {
                rec.regions[static_cast<std::size_t>(x)] =
                    estimate_region(rg, todo[static_cast<std::size_t>(x)], hrem, u, ev, cfg);
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical(jt_framework_failure)
#endif
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);

        for (const auto& est : rec.regions) {
            rec.removed.insert(est.tested.begin(), est.tested.end());
            rec.added.insert(est.accepted.begin(), est.accepted.end());
        }
        for (const Edge& e : rec.removed) hrem.remove_edge(e.u, e.v);
        for (const Edge& e : rec.added) ghat.add_edge(e.u, e.v);
        res.trace.iterations.push_back(std::move(rec));
    }

    if (cfg.prune) {
        Graph pruned = prune_edges(ev, ghat, TestConfig::fisher(cfg.prune_alpha));
        for (const Edge& e : ghat.edge_list())
            if (!pruned.has_edge(e.u, e.v)) res.trace.pruned.insert(e);
        ghat = std::move(pruned);
    }
    res.graph = std::move(ghat);
    return res;
}

FrameworkResult jt_framework(const Dataset& data, const Graph& h, const FrameworkConfig& cfg) {
    return jt_framework(Evidence::from_data(data), h, cfg);
}

EdgeSet estimate_flat(const Evidence& ev, const Graph& h, const FrameworkConfig& cfg, double lambda) {
    if (ev.oracle) {
        auto test = make_ci_test(ev, TestConfig::raw(lambda));
        return pc(std::max(0, static_cast<int>(h.num_vertices()) - 2), *test, h, h).edges();
    }
    switch (cfg.algo) {
        case Algorithm::PC: {
            DataCiTest test(ev.sigma, ev.n, TestConfig::raw(lambda));
            return pc(cfg.kappa, test, h, h).edges();
        }
        case Algorithm::NLasso:
            return nlasso(ev.sigma, h.vertices(), h, h, lambda, cfg.nlasso);
        case Algorithm::GLasso:
            return glasso(ev.block(h.vertices()), h, h, lambda).edges;
    }
    return {};
}

Selection estimate_flat_ebic(const Evidence& ev, const Graph& h, const FrameworkConfig& cfg) {
    const VertexSet& vs = h.vertices();
    const Eigen::MatrixXd s = ev.block(vs);
    LambdaEstimator est = [&](double lambda) {
        LambdaFit fit;
        if (cfg.algo == Algorithm::GLasso && !ev.oracle) {
            auto gl = glasso(s, h, h, lambda);
            fit.edges = gl.edges;
            fit.theta = gl.theta;
        } else {
            fit.edges = estimate_flat(ev, h, cfg, lambda);
            fit.refit_structure = edges_to_graph(vs, fit.edges);
        }
        fit.scored_edges = fit.edges.size();
        return fit;
    };
    return select_lambda_ebic(est, s, std::max(ev.n, 1), static_cast<double>(vs.size()), {cfg.gamma, grid_for(cfg, ev)});
}

Graph prune_edges(const Evidence& ev, const Graph& g_hat, const TestConfig& test) {
    auto t = make_ci_test(ev, test);
    const std::size_t cap = ev.oracle ? 20 : static_cast<std::size_t>(std::clamp(ev.n - 4, 0, 20));
    const std::vector<Edge> edges = g_hat.edge_list();
    std::vector<char> drop(edges.size(), 0);
    const auto m = static_cast<long>(edges.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (m > 8)
#endif
    for (long x = 0; x < m; ++x) {
        const Edge& e = edges[static_cast<std::size_t>(x)];
        for (int side = 0; side < 2 && !drop[static_cast<std::size_t>(x)]; ++side) {
            const Vertex a = side ? e.v : e.u;
            const Vertex b = side ? e.u : e.v;
            VertexSet s;
            for (Vertex w : g_hat.neighbors(a))
                if (w != b) s.push_back(w);
            if (s.size() > cap) continue;
            if (t->independent(e.u, e.v, s)) drop[static_cast<std::size_t>(x)] = 1;
        }
    }
    Graph out = g_hat;
    for (std::size_t x = 0; x < edges.size(); ++x)
        if (drop[x]) out.remove_edge(edges[x].u, edges[x].v);
    return out;
}

bool split_two_cluster(const JunctionTree& jt, const VertexSet& all, TwoClusterSplit& out) {
    const int m = static_cast<int>(jt.clusters.size());
    if (m < 2) return false;

    // Forest components of the cluster tree.
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(m));
    for (const auto& e : jt.tree_edges) {
        adj[static_cast<std::size_t>(e.a)].push_back(e.b);
        adj[static_cast<std::size_t>(e.b)].push_back(e.a);
    }
    auto side_of = [&](int start, int blocked_a, int blocked_b) {
        std::vector<char> seen(static_cast<std::size_t>(m), 0);
        std::vector<int> stack{start};
        seen[static_cast<std::size_t>(start)] = 1;
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            for (int d : adj[static_cast<std::size_t>(c)]) {
                if ((c == blocked_a && d == blocked_b) || (c == blocked_b && d == blocked_a)) continue;
                if (!seen[static_cast<std::size_t>(d)]) {
                    seen[static_cast<std::size_t>(d)] = 1;
                    stack.push_back(d);
                }
            }
        }
        return seen;
    };

    std::vector<char> first;
    if (jt.tree_edges.size() + 1 < static_cast<std::size_t>(m)) {
        first = side_of(0, -1, -1);  // disconnected: T is empty
        out.t.clear();
    } else {
        std::size_t pick = 0;
        for (std::size_t k = 1; k < jt.tree_edges.size(); ++k)
            if (jt.separators[k].size() < jt.separators[pick].size()) pick = k;
        first = side_of(jt.tree_edges[pick].a, jt.tree_edges[pick].a, jt.tree_edges[pick].b);
        out.t = jt.separators[pick];
    }
    VertexSet a;
    for (int c = 0; c < m; ++c)
        if (first[static_cast<std::size_t>(c)]) a = set_union(a, jt.clusters[static_cast<std::size_t>(c)]);
    out.v1 = set_difference(a, out.t);
    out.v2 = set_difference(all, a);
    return true;
}

TwoClusterResult estimate_two_cluster(const Evidence& ev, const FrameworkConfig& cfg) {
    cfg.validate();
    TwoClusterResult res;
    res.screened = screen_graph_H(ev, cfg.kappa_screen, TestConfig::fisher(cfg.screen_alpha));
    const Graph& h = res.screened;
    const JunctionTree jt = merge_by_separator_cap(build_junction_tree(h), cfg.separator_cap);
    if (!split_two_cluster(jt, h.vertices(), res.split)) {
        auto fw = jt_framework(ev, h, cfg);
        res.graph = std::move(fw.graph);
        res.trace = std::move(fw.trace);
        res.trace.fell_back = true;
        res.trace.note = "screened graph has a single cluster; ran jt_framework instead";
        return res;
    }
    const VertexSet& t = res.split.t;
    const Graph kt = complete_graph(t);
    const int eta_oracle = std::max(0, ev.p() - 2);
    const auto grid = grid_for(cfg, ev);

    // Runs PC(eta, hh, ll) with lambda chosen by EBIC over `vs`.
    auto run_block = [&](const Graph& hh, const Graph& ll, const VertexSet& vs, double& lambda_out) {
        if (ev.oracle) {
            OracleCiTest test(ev.sigma);
            return pc(eta_oracle, test, hh, ll).edges();
        }
        const Eigen::MatrixXd s = ev.block(vs);
        const EdgeSet fixed_edges = graph_difference(induced_subgraph(hh, vs), ll).edges();
        LambdaEstimator est = [&](double lambda) {
            DataCiTest test(ev.sigma, ev.n, TestConfig::raw(lambda));
            LambdaFit fit;
            fit.edges = pc(cfg.kappa, test, hh, ll).edges();
            fit.scored_edges = fit.edges.size();
            EdgeSet all_edges = fit.edges;
            all_edges.insert(fixed_edges.begin(), fixed_edges.end());
            fit.refit_structure = Graph(vs, all_edges);
            return fit;
        };
        auto sel = select_lambda_ebic(est, s, ev.n, static_cast<double>(vs.size()), {cfg.gamma, grid});
        lambda_out = sel.lambda;
        return sel.edges;
    };

    EdgeSet all_edges;
    for (int k = 0; k < 2; ++k) {
        const VertexSet vk = set_union(k == 0 ? res.split.v1 : res.split.v2, t);
        const Graph hk_ind = induced_subgraph(h, vk);
        const Graph hk = graph_union(hk_ind, kt);
        const Graph lk = graph_difference(hk_ind, kt);
        const EdgeSet est = run_block(hk, lk, vk, k == 0 ? res.lambda1 : res.lambda2);
        all_edges.insert(est.begin(), est.end());
    }

    const Graph blocks(h.vertices(), all_edges);
    VertexSet tn = t;
    for (Vertex v : t) tn = set_union(tn, blocks.neighbors(v));
    const Graph ht = induced_subgraph(h, tn);
    const Graph lt = induced_subgraph(h, t);
    if (lt.num_edges() > 0) {
        const EdgeSet est = run_block(ht, Graph(tn, lt.edges()), tn, res.lambda_t);
        all_edges.insert(est.begin(), est.end());
    }
    res.graph = Graph(h.vertices(), all_edges);
    return res;
}

TwoClusterResult estimate_two_cluster(const Dataset& data, const FrameworkConfig& cfg) {
    return estimate_two_cluster(Evidence::from_data(data), cfg);
}

}  // namespace jtugms
