// quadrature.hpp: adaptive Gauss-Kronrod integration on finite and
// semi-infinite ranges, and an accelerated half-period panel sum for
// oscillatory tails.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "qbm/errors.hpp"

namespace qbm {

struct QuadratureConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    std::size_t max_panels = 1'000'000;

    /// Throws DomainError unless both tolerances are > 0 and max_panels >= 1.
    void validate() const;
};

namespace quad {

template <class T>
struct Estimate {
    T value{};
    double error = 0.0;
    std::size_t panels = 0;
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208292293894, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Gauss weights for the odd-indexed Kronrod nodes.
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class F>
using result_t = std::decay_t<std::invoke_result_t<F&, double>>;

template <class T>
struct Panel {
    double a;
    double b;
    T value;
    double error;
};

template <class F, class T = result_t<F>>
Panel<T> gauss_kronrod21(F& f, double a, double b) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<T, 21> fv{};
    fv[10] = f(center);
    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * kKronrodNodes[j];
        fv[j] = f(center - dx);
        fv[20 - j] = f(center + dx);
    }

    T kronrod = fv[10] * kKronrodWeights[10];
    T gauss{};
    double abs_sum = std::abs(fv[10]) * kKronrodWeights[10];
    for (std::size_t j = 0; j < 10; ++j) {
        const T pair = fv[j] + fv[20 - j];
        kronrod += pair * kKronrodWeights[j];
        abs_sum += (std::abs(fv[j]) + std::abs(fv[20 - j])) * kKronrodWeights[j];
        if (j % 2 == 1) gauss += pair * kGaussWeights[j / 2];
    }
    const T mean = kronrod * 0.5;
    double asc = std::abs(fv[10] - mean) * kKronrodWeights[10];
    for (std::size_t j = 0; j < 10; ++j) {
        asc += (std::abs(fv[j] - mean) + std::abs(fv[20 - j] - mean)) * kKronrodWeights[j];
    }

    const double scale = std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    const double resasc = asc * scale;
    const double resabs = abs_sum * scale;
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(50.0 * eps * resabs, err);
    }
    return {a, b, kronrod * half, err};
}

}  // namespace detail

/// Globally adaptive GK21 over [a, b] split at the given interior breakpoints.
/// Stops when the summed error estimate is below max(abs_tol, rel_tol*|I|).
/// Throws ConvergenceError (carrying the partial estimate) when more than
/// cfg.max_panels subintervals would be needed.
template <class F>
Estimate<detail::result_t<F>> integrate(F&& f, std::span<const double> points,
                                        const QuadratureConfig& cfg) {
    using T = detail::result_t<F>;
    using Panel = detail::Panel<T>;
    constexpr double eps = std::numeric_limits<double>::epsilon();

    if (points.size() < 2) return {};
    auto worse = [](const Panel& x, const Panel& y) { return x.error < y.error; };

    std::vector<Panel> heap;
    heap.reserve(std::min<std::size_t>(cfg.max_panels, 4096));
    T total{};
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (points[i + 1] == points[i]) continue;
        heap.push_back(detail::gauss_kronrod21(f, points[i], points[i + 1]));
        total += heap.back().value;
        total_err += heap.back().error;
    }
    std::make_heap(heap.begin(), heap.end(), worse);

    // Panels too narrow to bisect; their error stays in the budget.
    std::vector<Panel> frozen;
    double frozen_err = 0.0;
    std::size_t since_resum = 0;
    while (!heap.empty()) {
        const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
        if (total_err <= tol) break;
        if (frozen_err > tol) break;
        if (heap.size() >= cfg.max_panels) {
            throw ConvergenceError("quadrature: panel budget exhausted", std::real(total),
                                   total_err);
        }
        std::pop_heap(heap.begin(), heap.end(), worse);
        Panel worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (std::abs(worst.b - worst.a) <= 8.0 * eps * std::max(std::abs(worst.a), std::abs(worst.b)) ||
            mid == worst.a || mid == worst.b) {
            frozen_err += worst.error;
            frozen.push_back(worst);
            continue;
        }
        Panel left = detail::gauss_kronrod21(f, worst.a, mid);
        Panel right = detail::gauss_kronrod21(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), worse);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), worse);

        if (++since_resum == 256) {
            since_resum = 0;
            total = T{};
            total_err = 0.0;
            for (const auto& p : frozen) {
                total += p.value;
                total_err += p.error;
            }
            for (const auto& p : heap) {
                total += p.value;
                total_err += p.error;
            }
        }
    }

    Estimate<T> out;
    out.panels = heap.size() + frozen.size();
    for (const auto& p : frozen) {
        out.value += p.value;
        out.error += p.error;
    }
    for (const auto& p : heap) {
        out.value += p.value;
        out.error += p.error;
    }
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(out.value));
    if (frozen_err > tol) {
        throw ConvergenceError("quadrature: roundoff prevents reaching tolerance",
                               std::real(out.value), out.error);
    }
    return out;
}

template <class F>
Estimate<detail::result_t<F>> integrate(F&& f, double a, double b, const QuadratureConfig& cfg) {
    const std::array<double, 2> ends{a, b};
    return integrate(std::forward<F>(f), std::span<const double>(ends), cfg);
}

/// ∫_a^∞ f(x) dx through x = a + (1-u)/u. f must decay faster than 1/x.
template <class F>
Estimate<detail::result_t<F>> integrate_to_infinity(F&& f, double a, const QuadratureConfig& cfg) {
    using T = detail::result_t<F>;
    auto mapped = [&f, a](double u) -> T {
        if (u <= 0.0) return T{};
        const double x = a + (1.0 - u) / u;
        return f(x) / (u * u);
    };
    return integrate(mapped, 0.0, 1.0, cfg);
}

enum class Trig { Sin, Cos };

/// ∫_a^∞ g(ω) trig(ω t) dω for a smooth, eventually monotone g that decays to
/// zero, where a is a zero of trig(ω t). The range is cut into half-period
/// panels of length π/t whose integrals alternate in sign; their partial sums
/// are accelerated by repeated pairwise averaging until successive accelerated
/// values agree to within `target` (absolute).
template <class F>
Estimate<double> oscillatory_tail(F&& g, double a, double t, Trig trig, double target,
                                  const QuadratureConfig& cfg) {
    constexpr std::size_t kWindow = 24;
    constexpr std::size_t kMinPanels = 8;
    constexpr int kAgreeNeeded = 3;

    const double period = std::numbers::pi / t;
    const std::size_t max_tail = std::min<std::size_t>(cfg.max_panels, 200'000);
    QuadratureConfig panel_cfg = cfg;
    panel_cfg.abs_tol = std::max(target * 1e-2, std::numeric_limits<double>::min());

    auto integrand = [&](double w) {
        const double phase = w * t;
        return g(w) * (trig == Trig::Sin ? std::sin(phase) : std::cos(phase));
    };

    std::vector<double> partial;
    partial.reserve(256);
    double running = 0.0;
    double last_accel = 0.0;
    double err_sum = 0.0;
    std::size_t gk_panels = 0;
    int agree = 0;
    std::array<double, kWindow> scratch{};

    for (std::size_t k = 0; k < max_tail; ++k) {
        const double lo = a + static_cast<double>(k) * period;
        const auto piece = integrate(integrand, lo, lo + period, panel_cfg);
        running += piece.value;
        err_sum += piece.error;
        gk_panels += piece.panels;
        partial.push_back(running);

        const std::size_t n = std::min(partial.size(), kWindow);
        std::copy(partial.end() - static_cast<std::ptrdiff_t>(n), partial.end(), scratch.begin());
        for (std::size_t level = n; level > 1; --level) {
            for (std::size_t i = 0; i + 1 < level; ++i) scratch[i] = 0.5 * (scratch[i] + scratch[i + 1]);
        }
        const double accel = scratch[0];

        if (partial.size() >= kMinPanels) {
            const bool negligible = std::abs(piece.value) < target * 1e-3;
            if (std::abs(accel - last_accel) <= target || negligible) {
                if (++agree >= kAgreeNeeded || negligible) {
                    return {accel, std::abs(accel - last_accel) + err_sum, gk_panels};
                }
            } else {
                agree = 0;
            }
        }
        last_accel = accel;
    }
    throw ConvergenceError("oscillatory tail: acceleration did not converge", last_accel, err_sum);
}

}  // namespace quad
}  // namespace qbm
