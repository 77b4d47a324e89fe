#include "jtugms/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <optional>

#include "jtugms/experiment.hpp"
#include "jtugms/framework.hpp"
#include "jtugms/io.hpp"
#include "jtugms/synthetic.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace jtugms::cli {

namespace fs = std::filesystem;

namespace {

/// Configuration problems that map to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void set_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

struct GenerateOpts {
    std::string family = "CH1";
    int p = 50, p1 = 10, n = 300;
    std::uint64_t seed = 1;
    std::string out = "generated";
};

int cmd_generate(const GenerateOpts& o) {
    SyntheticSpec spec;
    try {
        spec = preset(o.family, o.p, o.p1, o.seed);
        spec.validate();
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    if (o.n < 1) throw UsageError("--n must be positive");
    nlohmann::json cfg{{"command", "generate"}, {"family", o.family}, {"p", o.p}, {"p1", o.p1}, {"n", o.n}, {"seed", o.seed}};
    const Stamp stamp{config_hash(cfg), o.seed};

    const SyntheticModel sm = generate(spec);
    const Dataset data = sample(sm.model, o.n, derive_seed(o.seed, 0, 0, 2));
    const fs::path dir(o.out);
    atomic_write(dir / "precision.csv", matrix_csv(sm.model.precision(), &stamp));
    atomic_write(dir / "graph.tsv", edge_list_text(sm.g_star, &stamp));
    atomic_write(dir / "weak.tsv", edge_list_text(o.p, sm.weak, &stamp));
    atomic_write(dir / "data.csv", matrix_csv(data.x, &stamp));
    nlohmann::json meta{{"config", cfg},
                        {"config_hash", stamp.config_hash},
                        {"seed", o.seed},
                        {"edges", sm.g_star.num_edges()},
                        {"weak_edges", sm.weak.size()},
                        {"shrink_steps", sm.shrink_steps}};
    atomic_write(dir / "generate.json", meta.dump(2) + "\n");
    std::cout << "wrote " << (dir / "precision.csv").string() << ", graph.tsv, weak.tsv, data.csv\n";
    return 0;
}

struct EstimateOpts {
    std::string data, oracle, h_path, out = "estimate";
    std::string algo = "pc";
    int kappa = 1, kappa_screen = 0;
    std::size_t separator_cap = 0;  // 0: kappa + 1
    double gamma = 0.5, screen_alpha = 0.25;
    std::uint64_t seed = 1;
    bool no_decompose = false, prune = false, center = false;
};

int cmd_estimate(const EstimateOpts& o) {
    if (o.data.empty() == o.oracle.empty()) throw UsageError("exactly one of --data or --oracle is required");
    FrameworkConfig fc;
    try {
        fc.algo = parse_algorithm(o.algo);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    fc.kappa = o.kappa;
    fc.kappa_screen = o.kappa_screen;
    fc.separator_cap = o.separator_cap ? o.separator_cap : static_cast<std::size_t>(std::max(1, o.kappa + 1));
    fc.gamma = o.gamma;
    fc.screen_alpha = o.screen_alpha;
    fc.prune = o.prune;
    fc.record_dot = true;
    try {
        fc.validate();
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }

    Evidence ev;
    try {
        ev = o.oracle.empty() ? Evidence::from_data(read_dataset_csv(o.data), o.center)
                              : Evidence::from_model(read_precision_csv(o.oracle));
    } catch (const IoError& e) {
        throw UsageError(e.what());
    }

    Graph h;
    if (!o.h_path.empty()) {
        try {
            h = read_edge_list(o.h_path);
        } catch (const IoError& e) {
            throw UsageError(e.what());
        }
        if (static_cast<int>(h.num_vertices()) != ev.p())
            throw UsageError(o.h_path + ": graph has " + std::to_string(h.num_vertices()) + " vertices, data has " +
                             std::to_string(ev.p()));
    } else {
        h = screen_graph_H(ev, fc.kappa_screen, TestConfig::fisher(fc.screen_alpha));
    }

    nlohmann::json cfg{{"command", "estimate"},   {"data", o.data},       {"oracle", o.oracle},
                       {"H", o.h_path},           {"algo", o.algo},       {"kappa", fc.kappa},
                       {"kappa_screen", fc.kappa_screen}, {"separator_cap", fc.separator_cap}, {"gamma", fc.gamma},
                       {"screen_alpha", fc.screen_alpha}, {"seed", o.seed}, {"no_decompose", o.no_decompose},
                       {"prune", o.prune},        {"center", o.center}};
    const Stamp stamp{config_hash(cfg), o.seed};
    const fs::path dir(o.out);

    nlohmann::json trace{{"config", cfg}, {"config_hash", stamp.config_hash}, {"seed", o.seed}};
    trace["screening"] = o.h_path.empty() ? "fisher alpha=" + std::to_string(fc.screen_alpha) + " (replaces cross-validation)"
                                          : "from file";
    Graph ghat;
    if (o.no_decompose) {
        const auto sel = estimate_flat_ebic(ev, h, fc);
        ghat = Graph(h.vertices(), sel.edges);
        trace["lambda"] = sel.lambda;
        nlohmann::json path = nlohmann::json::array();
        for (const auto& pt : sel.trace) path.push_back({{"lambda", pt.lambda}, {"edges", pt.edges}, {"score", pt.score}});
        trace["selection"] = path;
        trace["iterations"] = nlohmann::json::array();
    } else {
        const auto res = jt_framework(ev, h, fc);
        ghat = res.graph;
        nlohmann::json its = nlohmann::json::array();
        for (const auto& it : res.trace.iterations) {
            nlohmann::json regions = nlohmann::json::array();
            for (const auto& r : it.regions) {
                auto edges_json = [](const EdgeSet& es) {
                    nlohmann::json a = nlohmann::json::array();
                    for (const Edge& e : es) a.push_back({e.u, e.v});
                    return a;
                };
                regions.push_back({{"region", r.region},
                                   {"vertices", r.vertices},
                                   {"closure", r.closure},
                                   {"method", r.method},
                                   {"lambda", r.lambda},
                                   {"tested", edges_json(r.tested)},
                                   {"accepted", edges_json(r.accepted)}});
            }
            its.push_back({{"iteration", it.iteration},
                           {"row", it.row},
                           {"rows", it.num_rows},
                           {"regions_total", it.num_regions},
                           {"clusters", it.num_clusters},
                           {"max_separator", it.max_separator},
                           {"added", it.added.size()},
                           {"removed", it.removed.size()},
                           {"regions", regions}});
            atomic_write(dir / ("jt_" + std::to_string(it.iteration) + ".dot"), stamped_dot(it.junction_tree_dot, stamp));
            atomic_write(dir / ("rg_" + std::to_string(it.iteration) + ".dot"), stamped_dot(it.region_graph_dot, stamp));
        }
        trace["iterations"] = its;
        trace["pruned"] = res.trace.pruned.size();
    }
    trace["edges"] = ghat.num_edges();
    atomic_write(dir / "estimate.tsv", edge_list_text(ghat, &stamp));
    atomic_write(dir / "H.dot", stamped_dot(to_dot(h, "H"), stamp));
    atomic_write(dir / "estimate.dot", stamped_dot(to_dot(ghat, "G_hat"), stamp));
    atomic_write(dir / "H.tsv", edge_list_text(h, &stamp));
    atomic_write(dir / "trace.json", trace.dump(2) + "\n");
    std::cout << "estimated " << ghat.num_edges() << " edges; wrote " << (dir / "estimate.tsv").string() << "\n";
    return 0;
}

int cmd_benchmark(const std::string& config_path, const std::string& out) {
    ExperimentConfig cfg;
    try {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(read_file(config_path));
        } catch (const nlohmann::json::parse_error& e) {
            throw UsageError(config_path + ": invalid JSON: " + e.what());
        }
        cfg = ExperimentConfig::from_json(j);
    } catch (const IoError& e) {
        throw UsageError(e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(config_path + ": " + e.what());
    }
    const ExperimentReport rep = run_experiment(cfg);
    const fs::path dir(out);
    atomic_write(dir / "report.csv", rep.csv());
    atomic_write(dir / "report.json", rep.json().dump(2) + "\n");
    std::size_t ok = 0, failed = 0;
    for (const auto& r : rep.rows) {
        ok += r.metrics.trials.size();
        failed += r.failures.size();
        for (const auto& f : r.failures) std::cerr << r.family << "/" << r.n << "/" << r.algorithm << ": " << f << "\n";
    }
    std::cout << "wrote " << (dir / "report.csv").string() << " (" << rep.rows.size() << " rows)\n";
    return ok == 0 && failed > 0 ? 1 : 0;
}

int cmd_export_dot(const std::string& graph_path, const std::string& out, const std::string& what, std::size_t cap) {
    Graph g;
    try {
        g = read_edge_list(graph_path);
    } catch (const IoError& e) {
        throw UsageError(e.what());
    }
    const Stamp stamp{config_hash({{"command", "export-dot"}, {"graph", graph_path}, {"what", what}, {"cap", cap}}), 0};
    std::string dot;
    if (what == "graph") {
        dot = to_dot(g, "G");
    } else {
        JunctionTree jt = build_junction_tree(g);
        if (cap > 0) jt = merge_by_separator_cap(jt, cap);
        dot = what == "junction-tree" ? to_dot(jt) : to_dot(RegionGraph::build(jt));
    }
    atomic_write(out, stamped_dot(dot, stamp));
    return 0;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Junction-tree framework for undirected Gaussian graphical model selection"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "OpenMP threads (0: runtime default)")->check(CLI::NonNegativeNumber);

    GenerateOpts gen;
    auto* g = app.add_subcommand("generate", "Generate a synthetic model and a dataset");
    g->add_option("--family", gen.family, "Preset: CH1 CH2 CY1 CY2 HB1 HB2 NB1 NB2");
    g->add_option("--p", gen.p, "Number of variables");
    g->add_option("--p1", gen.p1, "Number of weak-edge vertices");
    g->add_option("--n", gen.n, "Number of samples");
    g->add_option("--seed", gen.seed, "Random seed");
    g->add_option("--out", gen.out, "Output directory");
    g->add_option("--threads", threads, "OpenMP threads")->check(CLI::NonNegativeNumber);

    EstimateOpts est;
    auto* e = app.add_subcommand("estimate", "Estimate a graph from data or an oracle precision matrix");
    e->add_option("--data", est.data, "Dataset CSV (n rows, p columns)");
    e->add_option("--oracle", est.oracle, "Precision matrix CSV; use exact CI tests");
    e->add_option("--H", est.h_path, "Candidate graph (edge list); screened from data when absent");
    e->add_option("--algo", est.algo, "pc, nlasso or glasso")->check(CLI::IsMember({"pc", "nlasso", "glasso"}));
    e->add_option("--kappa", est.kappa, "PC separator depth")->check(CLI::NonNegativeNumber);
    e->add_option("--kappa-screen", est.kappa_screen, "Screening depth (0..3)");
    e->add_option("--separator-cap", est.separator_cap, "Merge clusters across larger separators (default kappa+1)");
    e->add_option("--gamma", est.gamma, "EBIC gamma");
    e->add_option("--screen-alpha", est.screen_alpha, "Screening Fisher-test level");
    e->add_option("--seed", est.seed, "Seed recorded in outputs");
    e->add_flag("--no-decompose", est.no_decompose, "Run the algorithm once over all variables");
    e->add_flag("--prune", est.prune, "Final Fisher-test pruning pass");
    e->add_flag("--center", est.center, "Remove column means before computing the covariance");
    e->add_option("--out", est.out, "Output directory");
    e->add_option("--threads", threads, "OpenMP threads")->check(CLI::NonNegativeNumber);

    std::string bench_config, bench_out = "benchmark";
    auto* b = app.add_subcommand("benchmark", "Run a synthetic benchmark from a JSON config");
    b->add_option("--config", bench_config, "JSON config")->required();
    b->add_option("--out", bench_out, "Output directory");
    b->add_option("--threads", threads, "OpenMP threads")->check(CLI::NonNegativeNumber);

    std::string dot_graph, dot_out = "graph.dot", dot_what = "graph";
    std::size_t dot_cap = 0;
    auto* d = app.add_subcommand("export-dot", "Render an edge list, its junction tree or its region graph");
    d->add_option("--graph", dot_graph, "Edge list")->required();
    d->add_option("--out", dot_out, "Output DOT file");
    d->add_option("--what", dot_what, "graph, junction-tree or region-graph")
        ->check(CLI::IsMember({"graph", "junction-tree", "region-graph"}));
    d->add_option("--separator-cap", dot_cap, "Merge clusters across larger separators (0: no merging)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int rc = app.exit(err);
        return rc == 0 ? 0 : 2;
    }
    set_threads(threads);

    try {
        if (*g) return cmd_generate(gen);
        if (*e) return cmd_estimate(est);
        if (*b) return cmd_benchmark(bench_config, bench_out);
        if (*d) return cmd_export_dot(dot_graph, dot_out, dot_what, dot_cap);
    } catch (const UsageError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const IoError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "estimation error: " << err.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace jtugms::cli
