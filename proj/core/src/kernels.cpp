#include "qbm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "qbm/errors.hpp"

namespace qbm {
namespace {

constexpr double kPi = std::numbers::pi;

void require_lag(double t, const char* where) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError(std::string(where) + ": t must be >= 0");
}

// Multiplies Im α in the s(t) integrand. thermal(ω) ~ 2kT/ħω as ω → 0 for T > 0.
struct Thermal {
    double hbar_over_2kT;  // 0 encodes T = 0
    ThermalWeight weight;

    double operator()(double omega) const {
        if (hbar_over_2kT == 0.0) return weight == ThermalWeight::Exact ? 1.0 : 0.0;
        const double x = hbar_over_2kT * omega;
        if (weight == ThermalWeight::HighTemperature) return 1.0 / x;
        return 1.0 / std::tanh(x);
    }
};

Thermal make_thermal(const UnitSystem& units, Temperature T, ThermalWeight weight) {
    if (T.is_zero()) return {0.0, weight};
    return {units.hbar() / (2.0 * units.boltzmann() * T.value()), weight};
}

// 1 − cos x without cancellation.
double one_minus_cos(double x) {
    const double h = std::sin(0.5 * x);
    return 2.0 * h * h;
}

// Breakpoints on [lo, hi]: structural points plus a mesh every few
// oscillation periods, so no initial panel spans many oscillations.
std::vector<double> breakpoints(double lo, double hi, std::vector<double> structural, double t,
                                std::size_t budget) {
    std::vector<double> pts{lo, hi};
    for (double p : structural) {
        if (p > lo && p < hi) pts.push_back(p);
    }
    if (t > 0.0) {
        const double spacing = 4.0 * kPi / t;
        const double count = (hi - lo) / spacing;
        if (count > 1.0 && count < static_cast<double>(budget) / 4.0) {
            for (double w = lo + spacing; w < hi; w += spacing) pts.push_back(w);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::vector<double> decades_from(double scale, double hi) {
    std::vector<double> out;
    for (double p = scale; p < hi; p *= 10.0) out.push_back(p);
    return out;
}

// Smallest ω ≥ floor of the form (k + offset)·π/t, offset 0 for sine zeros and
// 1/2 for cosine zeros.
double zero_at_or_after(double floor, double t, double offset) {
    const double period = kPi / t;
    const double k = std::max(1.0, std::ceil(floor / period - offset));
    return (k + offset) * period;
}

double tail_tolerance(double head, const QuadratureConfig& quad) {
    return 0.25 * std::max(quad.abs_tol, quad.rel_tol * std::abs(head));
}

double ohmic_msd_integral(double gamma, const UnitSystem& units, const Thermal& thermal, double t,
                          const QuadratureConfig& quad) {
    const double m = units.mass();
    const double g2 = gamma * gamma;
    // Im α · thermal, the non-oscillating factor.
    auto envelope = [=](double w) { return gamma / (m * w * (w * w + g2)) * thermal(w); };
    const double zero_limit =
        thermal.hbar_over_2kT == 0.0 ? 0.0 : t * t / (2.0 * m * gamma * thermal.hbar_over_2kT);
    auto integrand = [=](double w) {
        if (w == 0.0) return zero_limit;
        return envelope(w) * one_minus_cos(w * t);
    };

    const double cut = zero_at_or_after(std::max(kPi / t, 8.0 * gamma), t, 0.5);
    const auto pts = breakpoints(0.0, cut, decades_from(gamma * 1e-3, cut), t, quad.max_panels);
    const auto head = quad::integrate(integrand, std::span<const double>(pts), quad);
    const double tol = tail_tolerance(head.value, quad);
    QuadratureConfig tail_cfg = quad;
    tail_cfg.abs_tol = tol;
    const auto flat = quad::integrate_to_infinity(envelope, cut, tail_cfg);
    const auto wiggle = quad::oscillatory_tail(envelope, cut, t, quad::Trig::Cos, tol, quad);
    return head.value + flat.value - wiggle.value;
}

double ohmic_commutator_integral(double gamma, const UnitSystem& units, double t,
                                 const QuadratureConfig& quad) {
    const double m = units.mass();
    const double g2 = gamma * gamma;
    auto envelope = [=](double w) { return gamma / (m * w * (w * w + g2)); };
    auto integrand = [=](double w) {
        if (w == 0.0) return t / (m * gamma);
        return envelope(w) * std::sin(w * t);
    };
    const double cut = zero_at_or_after(std::max(kPi / t, 8.0 * gamma), t, 0.0);
    const auto pts = breakpoints(0.0, cut, decades_from(gamma * 1e-3, cut), t, quad.max_panels);
    const auto head = quad::integrate(integrand, std::span<const double>(pts), quad);
    const auto tail =
        quad::oscillatory_tail(envelope, cut, t, quad::Trig::Sin, tail_tolerance(head.value, quad), quad);
    return head.value + tail.value;
}

// ∫ over the grid support of Im α(ω)·weight(ω).
template <class F>
double tabulated_integral(const TabulatedBath& bath, F weight, double t, const QuadratureConfig& quad) {
    auto integrand = [&](double w) { return bath(w) * weight(w); };
    std::vector<double> grid(bath.grid().begin(), bath.grid().end());
    const auto pts = breakpoints(bath.front(), bath.back(), grid, t, quad.max_panels);
    return quad::integrate(integrand, std::span<const double>(pts), quad).value;
}

}  // namespace

Variance Variance::finite(double value) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw DomainError("Variance: finite value must be >= 0");
    }
    Variance v;
    v.value_ = value;
    return v;
}

double Variance::value() const {
    if (!value_) throw DomainError("Variance: <x^2> diverges for this bath");
    return *value_;
}

double mean_square_displacement(const BathSpec& bath, const UnitSystem& units, Temperature T,
                                double t, const QuadratureConfig& quad, ThermalWeight weight) {
    require_lag(t, "mean_square_displacement");
    quad.validate();
    if (bath.is_no_dissipation()) return no_dissipation_kernels(units, T, t).s;
    if (t == 0.0) return 0.0;

    const Thermal thermal = make_thermal(units, T, weight);
    const double prefactor = 2.0 * units.hbar() / kPi;
    if (const auto* o = std::get_if<OhmicBath>(&bath.variant())) {
        return prefactor * ohmic_msd_integral(o->gamma, units, thermal, t, quad);
    }
    const auto& tab = std::get<TabulatedBath>(bath.variant());
    return prefactor * tabulated_integral(
                           tab, [&](double w) { return thermal(w) * one_minus_cos(w * t); }, t, quad);
}

double commutator_amplitude(const BathSpec& bath, const UnitSystem& units, double t,
                            const QuadratureConfig& quad) {
    require_lag(t, "commutator_amplitude");
    quad.validate();
    if (bath.is_no_dissipation()) return units.hbar() * t / units.mass();
    if (t == 0.0) return 0.0;

    const double prefactor = 2.0 * units.hbar() / kPi;
    if (const auto* o = std::get_if<OhmicBath>(&bath.variant())) {
        return prefactor * ohmic_commutator_integral(o->gamma, units, t, quad);
    }
    const auto& tab = std::get<TabulatedBath>(bath.variant());
    return prefactor * tabulated_integral(tab, [&](double w) { return std::sin(w * t); }, t, quad);
}

KernelPair kernel_pair(const BathSpec& bath, const UnitSystem& units, Temperature T, double t,
                       const QuadratureConfig& quad, ThermalWeight weight) {
    return {t, mean_square_displacement(bath, units, T, t, quad, weight),
            commutator_amplitude(bath, units, t, quad)};
}

KernelPair no_dissipation_kernels(const UnitSystem& units, Temperature T, double t) {
    require_lag(t, "no_dissipation_kernels");
    const double m = units.mass();
    return {t, units.boltzmann() * T.value() * t * t / m, units.hbar() * t / m};
}

KernelPair ohmic_high_t_kernels(double gamma, const UnitSystem& units, Temperature T, double t) {
    require_lag(t, "ohmic_high_t_kernels");
    if (!(gamma > 0.0)) throw DomainError("ohmic_high_t_kernels: gamma must be > 0");
    const double m = units.mass();
    const double kT = units.boltzmann() * T.value();
    const double decay = -std::expm1(-gamma * t);  // 1 − e^{−γt}
    // t − (1 − e^{−γt})/γ loses all digits for γt ≪ 1; use the series there.
    const double x = gamma * t;
    double excess;
    if (x < 1e-3) {
        excess = t * x * (0.5 - x / 6.0 + x * x / 24.0 - x * x * x / 120.0);
    } else {
        excess = t - decay / gamma;
    }
    return {t, 2.0 * kT / (m * gamma) * excess, units.hbar() / (m * gamma) * decay};
}

bool is_high_temperature(double gamma, const UnitSystem& units, Temperature T) noexcept {
    return units.boltzmann() * T.value() >= 10.0 * units.hbar() * gamma;
}

Variance equilibrium_variance(const BathSpec& bath, const UnitSystem& units, Temperature T,
                              const QuadratureConfig& quad) {
    const auto* tab = std::get_if<TabulatedBath>(&bath.variant());
    if (!tab) return Variance::divergent();
    quad.validate();
    const Thermal thermal = make_thermal(units, T, ThermalWeight::Exact);
    return Variance::finite(units.hbar() / kPi * tabulated_integral(*tab, thermal, 0.0, quad));
}

double position_autocorrelation(const BathSpec& bath, const UnitSystem& units, Temperature T,
                                double t, const QuadratureConfig& quad) {
    require_lag(t, "position_autocorrelation");
    const auto* tab = std::get_if<TabulatedBath>(&bath.variant());
    if (!tab) {
        throw UnsupportedVariantError("position_autocorrelation: needs a finite-variance bath");
    }
    quad.validate();
    const Thermal thermal = make_thermal(units, T, ThermalWeight::Exact);
    return units.hbar() / kPi *
           tabulated_integral(*tab, [&](double w) { return thermal(w) * std::cos(w * t); }, t, quad);
}

}  // namespace qbm
