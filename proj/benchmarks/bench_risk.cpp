#include <benchmark/benchmark.h>

#include "hbrisk/bounds.hpp"
#include "hbrisk/mc.hpp"
#include "hbrisk/risk.hpp"

namespace {

void BM_RiskPhbCs(benchmark::State& state) {
    const auto cs = hbrisk::make_compound_symmetry(static_cast<int>(state.range(0)),
                                                   static_cast<int>(state.range(1)), 0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hbrisk::risk_phb_cs(cs).value);
    }
}
BENCHMARK(BM_RiskPhbCs)->Args({10, 2})->Args({100, 20})->Args({500, 100});

void BM_RiskDiffH(benchmark::State& state) {
    const auto cs = hbrisk::make_compound_symmetry(static_cast<int>(state.range(0)),
                                                   static_cast<int>(state.range(1)), 0.05);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hbrisk::risk_diff_H(cs));
    }
}
BENCHMARK(BM_RiskDiffH)->Args({100, 20})->Args({500, 100});

void BM_FindCrossover(benchmark::State& state) {
    const hbrisk::ModelConfig cfg{static_cast<int>(state.range(0)),
                                  static_cast<int>(state.range(1))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(hbrisk::find_crossover(cfg).rho_star);
    }
}
BENCHMARK(BM_FindCrossover)->Args({10, 2})->Args({100, 20});

void BM_Ncx2InvMoment(benchmark::State& state) {
    const int df = static_cast<int>(state.range(0));
    const double lambda = static_cast<double>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hbrisk::ncx2_inv_moment(df, lambda));
    }
}
BENCHMARK(BM_Ncx2InvMoment)->Args({9, 2})->Args({99, 400});

void BM_McIntegratedRisk(benchmark::State& state) {
    const auto cs = hbrisk::make_compound_symmetry(10, 2, 0.3);
    hbrisk::SimPlan plan;
    plan.replicates = 20000;
    plan.seed = 7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hbrisk::mc_integrated_risk(cs, plan, 4).hb.mean);
    }
}
BENCHMARK(BM_McIntegratedRisk);

}  // namespace

BENCHMARK_MAIN();
