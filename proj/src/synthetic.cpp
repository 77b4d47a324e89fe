#include "jtugms/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace jtugms {

std::string to_string(Family f) {
    switch (f) {
        case Family::Chain: return "chain";
        case Family::Cycle: return "cycle";
        case Family::Hub: return "hub";
        case Family::Neighborhood: return "neighborhood";
    }
    return "?";
}

Family parse_family(const std::string& name) {
    if (name == "chain") return Family::Chain;
    if (name == "cycle") return Family::Cycle;
    if (name == "hub") return Family::Hub;
    if (name == "neighborhood") return Family::Neighborhood;
    throw std::invalid_argument("unknown family '" + name + "' (expected chain, cycle, hub or neighborhood)");
}

void SyntheticSpec::validate() const {
    if (p < 2) throw std::domain_error("synthetic: p must be at least 2");
    if (p1 < 0 || p1 > p) throw std::domain_error("synthetic: p1 must lie in 0..p");
    if (family == Family::Hub) {
        if (d1 < 2 || d2 < 2) throw std::domain_error("synthetic: star sizes must be at least 2");
        if (d1 > p1) throw std::domain_error("synthetic: hub star size d1 exceeds p1");
    }
    if (family == Family::Neighborhood && (d1 < 1 || d2 < 1)) throw std::domain_error("synthetic: degree caps must be positive");
    if (family != Family::Hub && (!std::isfinite(rho1) || !std::isfinite(rho2)))
        throw std::domain_error("synthetic: rho values must be finite");
}

SyntheticSpec preset(const std::string& name, int p, int p1, std::uint64_t seed) {
    SyntheticSpec s;
    s.p = p;
    s.p1 = p1;
    s.seed = seed;
    s.rho2 = 0.245;
    if (name == "CH1" || name == "CH2") s.family = Family::Chain;
    else if (name == "CY1" || name == "CY2") s.family = Family::Cycle;
    else if (name == "HB1" || name == "HB2") s.family = Family::Hub;
    else if (name == "NB1" || name == "NB2") s.family = Family::Neighborhood;
    else throw std::invalid_argument("unknown preset '" + name + "'");
    const bool second = name.back() == '2';
    s.rho1 = second ? 0.075 : 0.15;
    if (s.family == Family::Hub) {
        s.d1 = second ? 12 : 8;
        s.d2 = 5;
    } else if (s.family == Family::Neighborhood) {
        s.d1 = 6;
        s.d2 = 4;
    }
    return s;
}

namespace {

struct Builder {
    int p;
    Eigen::MatrixXd theta;
    Graph g;
    EdgeSet weak;

    explicit Builder(int p_) : p(p_), theta(Eigen::MatrixXd::Identity(p_, p_)), g(p_) {}
    void set(Vertex i, Vertex j, double value, bool is_weak) {
        theta(i, j) = theta(j, i) = value;
        g.add_edge(i, j);
        if (is_weak) weak.insert(make_edge(i, j));
        else weak.erase(make_edge(i, j));
    }
    void unset(Vertex i, Vertex j) {
        theta(i, j) = theta(j, i) = 0.0;
        g.remove_edge(i, j);
        weak.erase(make_edge(i, j));
    }
    SyntheticModel finish() {
        int steps = 0;
        for (;;) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(theta, Eigen::EigenvaluesOnly);
            if (eig.eigenvalues().minCoeff() > 1e-3) break;
            Eigen::MatrixXd off = theta;
            off.diagonal().setZero();
            theta = Eigen::MatrixXd::Identity(p, p) + 0.95 * off;
            if (++steps > 2000) throw std::logic_error("synthetic: could not make precision matrix positive definite");
        }
        return {GaussianModel(theta), std::move(g), std::move(weak), steps};
    }
};

void degree_cap(Builder& b, const VertexSet& block, int cap) {
    // Highest (u, v) first.
    std::vector<Edge> edges;
    for (const Edge& e : b.g.edge_list())
        if (set_contains(block, e.u) && set_contains(block, e.v)) edges.push_back(e);
    for (auto it = edges.rbegin(); it != edges.rend(); ++it)
        if (static_cast<int>(b.g.degree(it->u)) > cap || static_cast<int>(b.g.degree(it->v)) > cap) b.unset(it->u, it->v);
}

}  // namespace

SyntheticModel gen_chain(const SyntheticSpec& spec) {
    spec.validate();
    Builder b(spec.p);
    for (int i = 0; i + 1 < spec.p; ++i) {
        const bool weak = i + 1 < spec.p1;  // 1-based i = 1..p1-1
        b.set(i, i + 1, weak ? spec.rho1 : spec.rho2, weak);
    }
    return b.finish();
}

SyntheticModel gen_cycle(const SyntheticSpec& spec) {
    spec.validate();
    Builder b(spec.p);
    for (int i = 0; i + 1 < spec.p; ++i) {
        const bool weak = i + 1 < spec.p1;
        b.set(i, i + 1, weak ? spec.rho1 : spec.rho2, weak);
    }
    for (int i = 0; i + 3 < spec.p; ++i) {
        if (i + 3 < spec.p1) b.set(i, i + 3, spec.rho1, true);  // 1-based i = 1..p1-3
        else if (i + 1 >= spec.p1) b.set(i, i + 3, spec.rho2, false);  // 1-based i = p1..p-3
    }
    return b.finish();
}

SyntheticModel gen_hub(const SyntheticSpec& spec) {
    spec.validate();
    Builder b(spec.p);
    int next = 0;
    while (next + spec.d1 <= spec.p1) {
        for (int k = 1; k < spec.d1; ++k) b.set(next, next + k, 1.0 / spec.d1, true);
        next += spec.d1;
    }
    while (next < spec.p) {
        const int size = std::min(spec.d2, spec.p - next);
        for (int k = 1; k < size; ++k) {
            const bool weak = next + k < spec.p1;  // both endpoints among the first p1
            b.set(next, next + k, weak ? 1.0 / spec.d1 : 1.0 / spec.d2, weak);
        }
        next += size;
    }
    return b.finish();
}

SyntheticModel gen_neighborhood(const SyntheticSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::pair<double, double>> y(static_cast<std::size_t>(spec.p));
    for (auto& pt : y) {
        pt.first = unif(rng);
        pt.second = unif(rng);
    }
    Builder b(spec.p);
    const double c = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    for (int i = 0; i < spec.p; ++i)
        for (int j = i + 1; j < spec.p; ++j) {
            const double dx = y[static_cast<std::size_t>(i)].first - y[static_cast<std::size_t>(j)].first;
            const double dy = y[static_cast<std::size_t>(i)].second - y[static_cast<std::size_t>(j)].second;
            const double prob = c * std::exp(-4.0 * (dx * dx + dy * dy));
            const bool draw = unif(rng) < prob;
            const bool first_block = j < spec.p1;
            const bool second_block = i >= spec.p1;
            if (draw && first_block) b.set(i, j, spec.rho1, true);
            if (draw && second_block) b.set(i, j, spec.rho2, false);
        }
    VertexSet first, second;
    for (int v = 0; v < spec.p; ++v) (v < spec.p1 ? first : second).push_back(v);
    degree_cap(b, first, spec.d1);
    degree_cap(b, second, spec.d2);

    if (!first.empty() && !second.empty()) {
        std::uniform_int_distribution<int> pick_a(0, spec.p1 - 1);
        std::uniform_int_distribution<int> pick_b(spec.p1, spec.p - 1);
        const int possible = spec.p1 * (spec.p - spec.p1);
        int added = 0;
        while (added < std::min(4, possible)) {
            const int a = pick_a(rng), v = pick_b(rng);
            if (b.g.has_edge(a, v)) continue;
            b.set(a, v, spec.rho1, true);
            ++added;
        }
    }
    return b.finish();
}

SyntheticModel generate(const SyntheticSpec& spec) {
    switch (spec.family) {
        case Family::Chain: return gen_chain(spec);
        case Family::Cycle: return gen_cycle(spec);
        case Family::Hub: return gen_hub(spec);
        case Family::Neighborhood: return gen_neighborhood(spec);
    }
    throw std::invalid_argument("unknown family");
}

int family_kappa(Family f) {
    switch (f) {
        case Family::Chain: return 1;
        case Family::Cycle: return 2;
        case Family::Hub: return 1;
        case Family::Neighborhood: return 3;
    }
    return 1;
}

int family_screen_kappa(Family f) {
    switch (f) {
        case Family::Chain: return 0;
        case Family::Cycle: return 1;
        case Family::Hub: return 0;
        case Family::Neighborhood: return 2;
    }
    return 0;
}

}  // namespace jtugms
