// Shared fixtures for the test suites.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "qbm/bath.hpp"

namespace qbm::testing {

// Im α of a damped oscillator (ω₀ = 1.5, γ = 0.4, m = 1) sampled on 400
// uniform points in [0.05, 20]. Bound particle, so <x²> is finite.
inline BathSpec damped_oscillator_bath() {
    constexpr std::size_t n = 400;
    constexpr double lo = 0.05;
    constexpr double hi = 20.0;
    constexpr double w0 = 1.5;
    constexpr double g = 0.4;
    std::vector<double> grid(n);
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = lo + static_cast<double>(i) * (hi - lo) / static_cast<double>(n - 1);
        grid[i] = w;
        values[i] = g * w / ((w0 * w0 - w * w) * (w0 * w0 - w * w) + g * g * w * w);
    }
    return BathSpec::tabulated(std::move(grid), std::move(values));
}

inline double relative_error(double got, double want) {
    return want == 0.0 ? std::abs(got) : std::abs((got - want) / want);
}

}  // namespace qbm::testing
