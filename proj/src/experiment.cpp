#include "jtugms/experiment.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "jtugms/io.hpp"

namespace jtugms {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t h = mix(master);
    h = mix(h ^ a);
    h = mix(h ^ b);
    return mix(h ^ c);
}

std::string variant_label(Algorithm a, bool junction_tree) {
    const char* base = a == Algorithm::PC ? "PC" : a == Algorithm::GLasso ? "gL" : "nL";
    return (junction_tree ? std::string("J") : std::string()) + base;
}

void ExperimentConfig::validate() const {
    if (families.empty()) throw std::invalid_argument("families: at least one family is required");
    for (const auto& f : families) preset(f, p, p1, 1).validate();
    if (ns.empty()) throw std::invalid_argument("n: at least one sample size is required");
    for (int n : ns)
        if (n < 5) throw std::invalid_argument("n: sample sizes must be at least 5");
    if (algorithms.empty()) throw std::invalid_argument("algorithms: at least one algorithm is required");
    if (trials < 1) throw std::invalid_argument("trials: must be at least 1");
    base.validate();
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
    static const std::vector<std::string> known{"families", "p", "p1", "n", "algorithms", "trials", "seed", "oracle",
                                                "gamma", "screen_alpha", "small_alpha", "small_subproblem_size",
                                                "prune", "prune_alpha", "lambda_grid", "nlasso_rule", "adaptive"};
    for (const auto& [key, _] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end()) throw std::invalid_argument(key + ": unknown field");

    ExperimentConfig c;
    auto field = [&](const char* key, auto& target) {
        if (!j.contains(key)) return;
        try {
            j.at(key).get_to(target);
        } catch (const nlohmann::json::exception&) {
            throw std::invalid_argument(std::string(key) + ": wrong type");
        }
    };
    field("families", c.families);
    field("p", c.p);
    field("p1", c.p1);
    field("n", c.ns);
    field("trials", c.trials);
    field("seed", c.seed);
    field("oracle", c.oracle);
    field("gamma", c.base.gamma);
    field("screen_alpha", c.base.screen_alpha);
    field("small_alpha", c.base.small_alpha);
    field("small_subproblem_size", c.base.small_subproblem_size);
    field("prune", c.base.prune);
    field("prune_alpha", c.base.prune_alpha);
    field("lambda_grid", c.base.lambda_grid);
    field("adaptive", c.base.nlasso.adaptive);
    if (j.contains("nlasso_rule")) {
        std::string rule;
        field("nlasso_rule", rule);
        if (rule == "union") c.base.nlasso.rule = NeighborhoodRule::Union;
        else if (rule == "intersection") c.base.nlasso.rule = NeighborhoodRule::Intersection;
        else throw std::invalid_argument("nlasso_rule: expected union or intersection");
    }
    if (j.contains("algorithms")) {
        std::vector<std::string> names;
        field("algorithms", names);
        c.algorithms.clear();
        for (const auto& nm : names) {
            try {
                c.algorithms.push_back(parse_algorithm(nm));
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument(std::string("algorithms: ") + e.what());
            }
        }
    }
    try {
        c.validate();
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    return c;
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["families"] = families;
    j["p"] = p;
    j["p1"] = p1;
    j["n"] = ns;
    std::vector<std::string> names;
    for (auto a : algorithms) names.push_back(to_string(a));
    j["algorithms"] = names;
    j["trials"] = trials;
    j["seed"] = seed;
    j["oracle"] = oracle;
    j["gamma"] = base.gamma;
    j["screen_alpha"] = base.screen_alpha;
    j["small_alpha"] = base.small_alpha;
    j["small_subproblem_size"] = base.small_subproblem_size;
    j["prune"] = base.prune;
    j["prune_alpha"] = base.prune_alpha;
    j["lambda_grid"] = base.lambda_grid;
    j["nlasso_rule"] = base.nlasso.rule == NeighborhoodRule::Union ? "union" : "intersection";
    j["adaptive"] = base.nlasso.adaptive;
    return j;
}

namespace {

struct TrialOutcome {
    bool ok = false;
    std::string error;
    TrialMetrics junction, flat;
};

TrialOutcome run_trial(const ExperimentConfig& cfg, std::size_t fam_idx, int n, Algorithm algo, int trial) {
    TrialOutcome out;
    try {
        const auto t = static_cast<std::uint64_t>(trial);
        SyntheticSpec spec = preset(cfg.families[fam_idx], cfg.p, cfg.p1, derive_seed(cfg.seed, fam_idx, t, 1));
        const SyntheticModel sm = generate(spec);
        const Evidence ev = cfg.oracle ? Evidence::from_model(sm.model)
                                       : Evidence::from_data(sample(sm.model, n, derive_seed(cfg.seed, fam_idx, t,
                                                                                            2 + static_cast<std::uint64_t>(n))));
        FrameworkConfig fc = cfg.base;
        fc.algo = algo;
        fc.kappa = family_kappa(spec.family);
        fc.kappa_screen = family_screen_kappa(spec.family);
        fc.separator_cap = static_cast<std::size_t>(fc.kappa + 1);

        const Graph h = screen_graph_H(ev, fc.kappa_screen, TestConfig::fisher(fc.screen_alpha));
        const Graph jt = jt_framework(ev, h, fc).graph;
        const EdgeSet jt_edges = jt.edges();

        EdgeSet flat;
        if (cfg.oracle) {
            flat = estimate_flat(ev, h, fc, 0.0);
        } else {
            const auto grid = fc.lambda_grid.empty() ? default_lambda_grid(algo, ev) : fc.lambda_grid;
            flat = match_edge_count([&](double lambda) { return estimate_flat(ev, h, fc, lambda); }, jt_edges.size(), grid)
                       .edges;
        }
        const EdgeSet star = sm.g_star.edges();
        out.junction = compute_metrics(jt_edges, star, sm.weak);
        out.flat = compute_metrics(flat, star, sm.weak);
        out.ok = true;
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentReport rep;
    rep.config = cfg.to_json();
    rep.config_hash = config_hash(rep.config);
    rep.seed = cfg.seed;

    for (std::size_t f = 0; f < cfg.families.size(); ++f)
        for (int n : cfg.ns)
            for (Algorithm algo : cfg.algorithms) {
                std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(cfg.trials));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
                for (int t = 0; t < cfg.trials; ++t) outcomes[static_cast<std::size_t>(t)] = run_trial(cfg, f, n, algo, t);

                ReportRow jrow{cfg.families[f], n, variant_label(algo, true), {}, {}};
                ReportRow frow{cfg.families[f], n, variant_label(algo, false), {}, {}};
                std::vector<TrialMetrics> jm, fm;
                for (int t = 0; t < cfg.trials; ++t) {
                    const auto& o = outcomes[static_cast<std::size_t>(t)];
                    if (o.ok) {
                        jm.push_back(o.junction);
                        fm.push_back(o.flat);
                    } else {
                        const std::string msg = "trial " + std::to_string(t) + ": " + o.error;
                        jrow.failures.push_back(msg);
                        frow.failures.push_back(msg);
                    }
                }
                jrow.metrics = aggregate(std::move(jm));
                frow.metrics = aggregate(std::move(fm));
                rep.rows.push_back(std::move(jrow));
                rep.rows.push_back(std::move(frow));
            }
    return rep;
}

std::string ExperimentReport::csv() const {
    std::ostringstream os;
    os << "# config_hash=" << config_hash << " seed=" << seed << '\n';
    os << "family,n,algorithm,wedr_mean,wedr_se,fdr_mean,fdr_se,tpr_mean,tpr_se,ed_mean,ed_se,edges_mean\n";
    for (const auto& r : rows) {
        const auto& m = r.metrics;
        os << r.family << ',' << r.n << ',' << r.algorithm << ',' << fmt(m.wedr.mean) << ',' << fmt(m.wedr.se) << ','
           << fmt(m.fdr.mean) << ',' << fmt(m.fdr.se) << ',' << fmt(m.tpr.mean) << ',' << fmt(m.tpr.se) << ','
           << fmt(m.ed.mean) << ',' << fmt(m.ed.se) << ',' << fmt(m.edges.mean) << '\n';
    }
    return os.str();
}

nlohmann::json ExperimentReport::json() const {
    nlohmann::json j;
    j["config"] = config;
    j["config_hash"] = config_hash;
    j["seed"] = seed;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json row;
        row["family"] = r.family;
        row["n"] = r.n;
        row["algorithm"] = r.algorithm;
        auto summ = [](const Summary& s) { return nlohmann::json{{"mean", s.mean}, {"se", s.se}}; };
        row["wedr"] = summ(r.metrics.wedr);
        row["fdr"] = summ(r.metrics.fdr);
        row["tpr"] = summ(r.metrics.tpr);
        row["ed"] = summ(r.metrics.ed);
        row["edges"] = summ(r.metrics.edges);
        nlohmann::json trials = nlohmann::json::array();
        for (const auto& t : r.metrics.trials)
            trials.push_back({{"wedr", t.wedr}, {"fdr", t.fdr}, {"tpr", t.tpr}, {"ed", t.ed}, {"edges", t.edges}});
        row["trials"] = trials;
        row["failures"] = r.failures;
        j["rows"].push_back(row);
    }
    return j;
}

const ReportRow* ExperimentReport::find(const std::string& family, int n, const std::string& algorithm) const {
    for (const auto& r : rows)
        if (r.family == family && r.n == n && r.algorithm == algorithm) return &r;
    return nullptr;
}

}  // namespace jtugms
