// Serial reference PC against the OpenMP kernel, and the framework at
// different thread counts. Inputs are fixed per size so runs are comparable.

#include <benchmark/benchmark.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "jtugms/framework.hpp"
#include "jtugms/pc.hpp"
#include "jtugms/synthetic.hpp"

using namespace jtugms;

namespace {

struct Problem {
    Dataset data;
    Eigen::MatrixXd s;
    Graph k;
};

Problem make_problem(int p) {
    const SyntheticModel sm = generate(preset("CH1", p, p / 5, 17));
    Problem pr{sample(sm.model, 300, 23), {}, {}};
    pr.s = empirical_covariance(pr.data);
    VertexSet all;
    for (int v = 0; v < p; ++v) all.push_back(v);
    pr.k = complete_graph(all);
    return pr;
}

void BM_pc_reference(benchmark::State& state) {
    const Problem pr = make_problem(static_cast<int>(state.range(0)));
    const DataCiTest test(pr.s, pr.data.n(), TestConfig::fisher(0.05));
    for (auto _ : state) benchmark::DoNotOptimize(pc_reference(2, test, pr.k, pr.k));
}

void BM_pc_parallel(benchmark::State& state) {
    const Problem pr = make_problem(static_cast<int>(state.range(0)));
    const DataCiTest test(pr.s, pr.data.n(), TestConfig::fisher(0.05));
    for (auto _ : state) benchmark::DoNotOptimize(pc(2, test, pr.k, pr.k));
}

void BM_framework_threads(benchmark::State& state) {
    const Problem pr = make_problem(50);
    const Evidence ev = Evidence::from_data(pr.data);
    FrameworkConfig cfg;
    cfg.screen_alpha = 0.01;
    cfg.kappa = 1;
    const Graph h = screen_graph_H(ev, 0, TestConfig::fisher(cfg.screen_alpha));
#ifdef _OPENMP
    const int saved = omp_get_max_threads();
    omp_set_num_threads(static_cast<int>(state.range(0)));
#endif
    for (auto _ : state) benchmark::DoNotOptimize(jt_framework(ev, h, cfg).graph);
#ifdef _OPENMP
    omp_set_num_threads(saved);
#endif
}

}  // namespace

BENCHMARK(BM_pc_reference)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pc_parallel)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_framework_threads)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
