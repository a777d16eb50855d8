#include <benchmark/benchmark.h>

#include "qbm/kernels.hpp"
#include "qbm/observables.hpp"

namespace {

const qbm::UnitSystem units{};

// s(t) for an Ohmic bath at lag 10^(range/2 - 2).
void BM_OhmicMsd(benchmark::State& state) {
    const auto bath = qbm::BathSpec::ohmic(1.0);
    const double t = std::pow(10.0, 0.5 * static_cast<double>(state.range(0)) - 2.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qbm::mean_square_displacement(bath, units, qbm::Temperature(1.0), t));
    }
}
BENCHMARK(BM_OhmicMsd)->DenseRange(0, 8, 2);

void BM_OhmicMsdZeroTemperature(benchmark::State& state) {
    const auto bath = qbm::BathSpec::ohmic(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qbm::mean_square_displacement(bath, units, qbm::Temperature(0.0), 3.0));
    }
}
BENCHMARK(BM_OhmicMsdZeroTemperature);

void BM_OhmicCommutator(benchmark::State& state) {
    const auto bath = qbm::BathSpec::ohmic(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(qbm::commutator_amplitude(bath, units, 3.0));
}
BENCHMARK(BM_OhmicCommutator);

void BM_TabulatedKernelPair(benchmark::State& state) {
    std::vector<double> grid, values;
    for (int i = 0; i < 400; ++i) {
        const double w = 0.05 + 0.05 * i;
        grid.push_back(w);
        values.push_back(0.4 * w / ((2.25 - w * w) * (2.25 - w * w) + 0.16 * w * w));
    }
    const auto bath = qbm::BathSpec::tabulated(std::move(grid), std::move(values));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qbm::kernel_pair(bath, units, qbm::Temperature(1.0), 2.0));
    }
}
BENCHMARK(BM_TabulatedKernelPair);

void BM_InterferenceProfile(benchmark::State& state) {
    std::vector<double> xs(static_cast<std::size_t>(state.range(0)));
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = -20.0 + 40.0 * i / (xs.size() - 1);
    const auto k = qbm::no_dissipation_kernels(units, qbm::Temperature(1.0), 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(qbm::interference_profile(xs, 10.0, 1.0, 0.0, k));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_InterferenceProfile)->Arg(1 << 10)->Arg(1 << 14);

}  // namespace
BENCHMARK_MAIN();
