#include <benchmark/benchmark.h>

#include "support/instances.hpp"
#include "tjcct/bargaining.hpp"
#include "tjcct/matching.hpp"
#include "tjcct/simulator.hpp"
#include "tjcct/trajectory.hpp"

using namespace tjcct;
using tjcct::fixture::random_epoch;
using tjcct::fixture::random_instance;
using tjcct::fixture::random_trade;
using tjcct::fixture::test_rng;

static void BM_Negotiate(benchmark::State& state) {
    auto rng = test_rng(7);
    std::vector<fixture::Trade> trades;
    for (int i = 0; i < 256; ++i) trades.push_back(random_trade(rng));
    std::size_t k = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(negotiate(trades[k++ % trades.size()].ctx));
    }
}
BENCHMARK(BM_Negotiate);

static void BM_Matching(benchmark::State& state) {
    auto rng = test_rng(8);
    const auto inst = random_instance(rng, static_cast<std::size_t>(state.range(0)), 3, false);
    for (auto _ : state) {
        const auto prefs = build_preferences(inst);
        benchmark::DoNotOptimize(run_matching(prefs, inst));
    }
    state.SetComplexityN(static_cast<long>(inst.num_tasks()));
}
BENCHMARK(BM_Matching)->RangeMultiplier(4)->Range(8, 512)->Complexity();

static void BM_Subproblem(benchmark::State& state) {
    auto rng = test_rng(9);
    const UavEpochProblem u = random_epoch(rng, static_cast<int>(state.range(0)));
    const Vec2 base = project_feasible(u.current, u.step_disk(), u.reach_disk());
    for (auto _ : state) benchmark::DoNotOptimize(solve_epoch_subproblem(u, base));
}
BENCHMARK(BM_Subproblem)->Arg(1)->Arg(4)->Arg(16);

static void BM_Sca(benchmark::State& state) {
    auto rng = test_rng(10);
    EpochProblem p;
    p.uavs.push_back(random_epoch(rng, 4));
    for (auto _ : state) benchmark::DoNotOptimize(optimize_trajectory(p));
}
BENCHMARK(BM_Sca);

// First slot with every MD requesting offload.
static void BM_Slot(benchmark::State& state) {
    ScenarioConfig cfg;
    cfg.md_count = static_cast<int>(state.range(0));
    cfg.arrival_probability = 1.0;
    cfg.md_cpu = {1e6, 2e6};
    for (auto _ : state) {
        state.PauseTiming();
        World w = make_world(cfg, 3);
        w.audit = false;
        w.clock.slot = 1;
        state.ResumeTiming();
        benchmark::DoNotOptimize(run_slot(w, StrategyKind::tjcct));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Slot)->RangeMultiplier(4)->Range(8, 512)->Complexity();

static void BM_FullRun(benchmark::State& state) {
    const ScenarioConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(run(cfg, StrategyKind::tjcct, 1, false));
}
BENCHMARK(BM_FullRun)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
