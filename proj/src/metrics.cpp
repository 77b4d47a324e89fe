#include "jtugms/metrics.hpp"

#include <cmath>

namespace jtugms {

TrialMetrics compute_metrics(const EdgeSet& g_hat, const EdgeSet& g_star, const EdgeSet& weak) {
    TrialMetrics m;
    std::size_t hits = 0, weak_hits = 0;
    for (const Edge& e : g_hat) {
        if (g_star.count(e)) ++hits;
        if (weak.count(e)) ++weak_hits;
    }
    m.edges = g_hat.size();
    m.false_positives = g_hat.size() - hits;
    m.false_negatives = g_star.size() - hits;
    m.ed = m.false_positives + m.false_negatives;
    m.fdr = g_hat.empty() ? 0.0 : static_cast<double>(m.false_positives) / static_cast<double>(g_hat.size());
    m.tpr = g_star.empty() ? 1.0 : static_cast<double>(hits) / static_cast<double>(g_star.size());
    m.wedr = weak.empty() ? 1.0 : static_cast<double>(weak_hits) / static_cast<double>(weak.size());
    return m;
}

TrialMetrics compute_metrics(const Graph& g_hat, const Graph& g_star, const EdgeSet& weak) {
    return compute_metrics(g_hat.edges(), g_star.edges(), weak);
}

Summary summarize(const std::vector<double>& xs) {
    Summary s;
    if (xs.empty()) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - s.mean) * (x - s.mean);
        s.se = std::sqrt(ss / static_cast<double>(xs.size() - 1)) / std::sqrt(static_cast<double>(xs.size()));
    }
    return s;
}

MetricsReport aggregate(std::vector<TrialMetrics> trials) {
    MetricsReport r;
    std::vector<double> w, f, t, e, c;
    for (const auto& m : trials) {
        w.push_back(m.wedr);
        f.push_back(m.fdr);
        t.push_back(m.tpr);
        e.push_back(static_cast<double>(m.ed));
        c.push_back(static_cast<double>(m.edges));
    }
    r.wedr = summarize(w);
    r.fdr = summarize(f);
    r.tpr = summarize(t);
    r.ed = summarize(e);
    r.edges = summarize(c);
    r.trials = std::move(trials);
    return r;
}

}  // namespace jtugms
