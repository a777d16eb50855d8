#include <benchmark/benchmark.h>

#include <vector>

#include "qbm/measurement.hpp"

namespace {

void BM_XiJoint(benchmark::State& state) {
    const auto a = qbm::MeasuringFunction::gaussian(0.6);
    const auto b = qbm::MeasuringFunction::gaussian(0.3);
    const qbm::Covariance2 cov{0.5, -0.2, 0.5};
    for (auto _ : state) benchmark::DoNotOptimize(qbm::xi_joint(a, b, cov, 0.4, 1.3, -0.7));
}
BENCHMARK(BM_XiJoint);

void BM_Invert2D(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto k = qbm::UniformGrid::spanning(-12.0, 12.0, n);
    std::vector<qbm::complex> xi(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) xi[i * n + j] = std::exp(-0.5 * (k[i] * k[i] + k[j] * k[j]));
    }
    std::vector<double> xs(64);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = -4.0 + 8.0 * i / 63.0;
    for (auto _ : state) benchmark::DoNotOptimize(qbm::invert_characteristic(k, k, xi, xs, xs));
}
BENCHMARK(BM_Invert2D)->Arg(81)->Arg(161);

}  // namespace
