#pragma once

#include <vector>

#include "jtugms/graph.hpp"

namespace jtugms {

struct TrialMetrics {
    double wedr = 0.0;
    double fdr = 0.0;
    double tpr = 0.0;
    std::size_t ed = 0;
    std::size_t edges = 0;
    std::size_t false_positives = 0;
    std::size_t false_negatives = 0;
};

/// Weak-edge discovery rate, false discovery rate (0 for an empty estimate),
/// true positive rate and edit distance. A model without weak edges has
/// WEDR 1.
TrialMetrics compute_metrics(const EdgeSet& g_hat, const EdgeSet& g_star, const EdgeSet& weak);
TrialMetrics compute_metrics(const Graph& g_hat, const Graph& g_star, const EdgeSet& weak);

struct Summary {
    double mean = 0.0;
    double se = 0.0;  // sample standard deviation / sqrt(count)
};
Summary summarize(const std::vector<double>& xs);

struct MetricsReport {
    std::vector<TrialMetrics> trials;
    Summary wedr, fdr, tpr, ed, edges;
};
MetricsReport aggregate(std::vector<TrialMetrics> trials);

}  // namespace jtugms
