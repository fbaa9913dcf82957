#include <benchmark/benchmark.h>

#include "v2vsim/das.hpp"
#include "v2vsim/sim.hpp"
#include "v2vsim/stats.hpp"

#include <random>

namespace {

void BM_PlatoonRun(benchmark::State& state) {
    auto s = v2vsim::scenario_fixture("platoon4");
    s.duration = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(v2vsim::run(s));
    }
}
BENCHMARK(BM_PlatoonRun)->Arg(5)->Arg(33);

void BM_EvaluateAll(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> pos(-100.0, 100.0);
    std::vector<v2vsim::VehicleState> vs(state.range(0));
    for (std::size_t i = 0; i < vs.size(); ++i) {
        vs[i].id = static_cast<int>(i);
        vs[i].x = pos(rng) / 20.0;
        vs[i].y = pos(rng);
        vs[i].v = 20.0;
    }
    v2vsim::DasParams p;
    for (auto _ : state) {
        benchmark::DoNotOptimize(v2vsim::evaluate_all(vs, p, 0.0));
    }
}
BENCHMARK(BM_EvaluateAll)->Arg(4)->Arg(16)->Arg(64);

void BM_BootstrapCI(benchmark::State& state) {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> d(0.0, 1.0);
    std::vector<double> xs(state.range(0));
    for (auto& x : xs) x = d(rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(v2vsim::bootstrap_ci(xs, 0.95, 10000, 3));
    }
}
BENCHMARK(BM_BootstrapCI)->Arg(30)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
