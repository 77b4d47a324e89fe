#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "jtugms/framework.hpp"
#include "jtugms/metrics.hpp"
#include "jtugms/synthetic.hpp"

namespace jtugms {

struct ExperimentConfig {
    std::vector<std::string> families{"CH1"};  // preset names
    int p = 50;
    int p1 = 10;
    std::vector<int> ns{300};
    std::vector<Algorithm> algorithms{Algorithm::PC};
    int trials = 20;
    std::uint64_t seed = 1;
    bool oracle = false;
    // kappa, kappa_screen and separator_cap are set per family. Screening is
    // stricter than the framework default: at p = 50 a level of 0.25 keeps
    // about a quarter of all null pairs and the candidate graph no longer
    // splits into clusters.
    FrameworkConfig base = [] {
        FrameworkConfig f;
        f.screen_alpha = 0.01;
        return f;
    }();

    void validate() const;
    /// Throws std::invalid_argument naming the offending field.
    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

/// Independent stream for (master, a, b, c).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

/// "JPC" / "PC", "JgL" / "gL", "JnL" / "nL".
std::string variant_label(Algorithm a, bool junction_tree);

struct ReportRow {
    std::string family;
    int n = 0;
    std::string algorithm;
    MetricsReport metrics;
    std::vector<std::string> failures;  // "trial k: message"
};

struct ExperimentReport {
    nlohmann::json config;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::vector<ReportRow> rows;

    std::string csv() const;
    nlohmann::json json() const;
    const ReportRow* find(const std::string& family, int n, const std::string& algorithm) const;
};

/// For every (family, n, algorithm) runs `trials` seeded trials: generate,
/// sample, screen, run the junction-tree variant with EBIC and the flat
/// variant matched to its edge count, and score both. Trials run in
/// parallel; a failed trial is recorded and skipped.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace jtugms
