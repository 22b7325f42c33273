#include <benchmark/benchmark.h>

#include "swsh/kernels.hpp"

namespace {

using swsh::kernels::Mode;

std::vector<double> sweep_betas() {
    std::vector<double> out;
    for (int i = 0; i < 16; ++i) out.push_back(0.025 * i);
    return out;
}

void oracle_sweep(benchmark::State& state, Mode mode) {
    const auto betas = sweep_betas();
    for (auto _ : state) {
        auto r = swsh::kernels::oracle_sweep(swsh::Rational(1, 2), betas, 2, 1e-12, 32, mode);
        benchmark::DoNotOptimize(r);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(betas.size()));
}

void ground_grid(benchmark::State& state, Mode mode) {
    const swsh::GroundState g(swsh::build_series(swsh::Rational(1, 2), 8), 0.1);
    std::vector<double> thetas;
    for (int i = 1; i < 512; ++i) thetas.push_back(i * 3.141592653589793 / 512);
    for (auto _ : state) {
        auto r = swsh::kernels::sample_ground(g, thetas, mode);
        benchmark::DoNotOptimize(r);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(thetas.size()));
}

}  // namespace

BENCHMARK_CAPTURE(oracle_sweep, serial, Mode::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(oracle_sweep, parallel, Mode::parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(ground_grid, serial, Mode::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(ground_grid, parallel, Mode::parallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
