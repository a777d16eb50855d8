#include "qbm/observables.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qbm/errors.hpp"

namespace qbm {
namespace {

constexpr double kPi = std::numbers::pi;

void require_width(double sigma1, const char* where) {
    if (!(sigma1 > 0.0)) throw DomainError(std::string(where) + ": sigma1 must be > 0");
}

double width_squared(double sigma1, double sigma2, const KernelPair& k) {
    return sigma1 * sigma1 + k.c * k.c / (4.0 * sigma1 * sigma1) + k.s + sigma2 * sigma2;
}

}  // namespace

JointGaussian joint_gaussian_params(double sigma1, double sigma2, const Variance& x2_mean,
                                    const KernelPair& kernels) {
    require_width(sigma1, "joint_gaussian_params");
    const double v = x2_mean.value();
    const double sigma = std::sqrt(sigma1 * sigma1 + v);
    const double tau =
        std::sqrt(sigma2 * sigma2 + kernels.c * kernels.c / (4.0 * sigma1 * sigma1) + v);
    const double rho = (2.0 * v - kernels.s) / (2.0 * sigma * tau);
    if (!(rho * rho < 1.0)) {
        throw InconsistentInputsError("joint_gaussian_params: rho^2 >= 1, distribution not normalizable");
    }
    return {sigma, tau, rho};
}

double single_distribution(double sigma, double x1) {
    return std::exp(-x1 * x1 / (2.0 * sigma * sigma)) / std::sqrt(2.0 * kPi * sigma * sigma);
}

double joint_distribution(const JointGaussian& jg, double x1, double x2) {
    const double one_minus = 1.0 - jg.rho * jg.rho;
    const double a = x1 / jg.sigma;
    const double b = x2 / jg.tau;
    const double q = (a * a - 2.0 * jg.rho * a * b + b * b) / (2.0 * one_minus);
    return std::exp(-q) / (2.0 * kPi * jg.sigma * jg.tau * std::sqrt(one_minus));
}

SpreadResult packet_width(double sigma1, double sigma2, const KernelPair& kernels) {
    require_width(sigma1, "packet_width");
    return {kernels.t, width_squared(sigma1, sigma2, kernels)};
}

double conditional_spread(double x, double sigma1, double sigma2, const KernelPair& kernels) {
    const double w2 = packet_width(sigma1, sigma2, kernels).w2;
    return std::exp(-x * x / (2.0 * w2)) / std::sqrt(2.0 * kPi * w2);
}

InterferenceProfile interference_profile(std::span<const double> x_grid, double d, double sigma1,
                                         double sigma2, const KernelPair& kernels) {
    require_width(sigma1, "interference_profile");
    if (!(d > 0.0)) throw DomainError("interference_profile: d must be > 0");
    const double s1sq = sigma1 * sigma1;
    const double w2 = width_squared(sigma1, sigma2, kernels);
    const double prefactor =
        1.0 / (std::sqrt(2.0 * kPi * w2) * (1.0 + std::exp(-d * d / (8.0 * s1sq))));
    const double smear = (s1sq + kernels.s + sigma2 * sigma2) * d * d / (4.0 * s1sq);
    const double fringe_rate = d * kernels.c / (4.0 * s1sq * w2);

    InterferenceProfile out;
    out.t = kernels.t;
    out.x_grid.assign(x_grid.begin(), x_grid.end());
    out.attenuation = attenuation(d, sigma1, sigma2, kernels);
    const std::size_t n = x_grid.size();
    out.p.resize(n);
    out.fringe_envelope.resize(n);
    out.slit_plus.resize(n);
    out.slit_minus.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = x_grid[i];
        const double up = x - 0.5 * d;
        const double down = x + 0.5 * d;
        out.fringe_envelope[i] = prefactor * std::exp(-(x * x + smear) / (2.0 * w2));
        out.slit_plus[i] = prefactor * 0.5 * std::exp(-up * up / (2.0 * w2));
        out.slit_minus[i] = prefactor * 0.5 * std::exp(-down * down / (2.0 * w2));
        out.p[i] = out.fringe_envelope[i] * std::cos(x * fringe_rate) + out.slit_plus[i] +
                   out.slit_minus[i];
    }
    return out;
}

std::vector<double> fringe_to_envelope_ratio(const InterferenceProfile& profile) {
    constexpr double floor = 1e-250;
    std::vector<double> out;
    for (std::size_t i = 0; i < profile.p.size(); ++i) {
        const double a = profile.slit_plus[i];
        const double b = profile.slit_minus[i];
        const double f = profile.fringe_envelope[i];
        if (a < floor || b < floor || f < floor) continue;
        out.push_back(f / (2.0 * std::sqrt(a) * std::sqrt(b)));  // a·b may underflow
    }
    return out;
}

double attenuation(double d, double sigma1, double sigma2, const KernelPair& kernels) {
    require_width(sigma1, "attenuation");
    const double w2 = width_squared(sigma1, sigma2, kernels);
    return std::exp(-(kernels.s + sigma2 * sigma2) * d * d / (8.0 * sigma1 * sigma1 * w2));
}

double attenuation_no_dissipation(double t, double d, double sigma1, const UnitSystem& units,
                                  Temperature T) {
    require_width(sigma1, "attenuation_no_dissipation");
    if (!(t >= 0.0)) throw DomainError("attenuation_no_dissipation: t must be >= 0");
    const auto scales = thermal_scales(units, T);
    if (t == 0.0) return 1.0;
    const double kT = units.boltzmann() * T.value();
    const double s1sq = sigma1 * sigma1;
    const double denom = 8.0 * s1sq + 2.0 * scales.lambda_bar * scales.lambda_bar +
                         8.0 * units.mass() * s1sq * s1sq / (kT * t * t);
    return std::exp(-d * d / denom);
}

DecoherenceEstimate decoherence_time(double d, double sigma1, const UnitSystem& units, Temperature T,
                                     const BathSpec& bath) {
    require_width(sigma1, "decoherence_time");
    if (!(d > 0.0)) throw DomainError("decoherence_time: d must be > 0");
    const auto scales = thermal_scales(units, T);
    const double tau_d = sigma1 * sigma1 / (scales.v_bar * d);
    RegimeFlags flags{d >= 10.0 * sigma1, d > 10.0 * scales.lambda_bar, std::nullopt};
    if (const auto* o = std::get_if<OhmicBath>(&bath.variant())) flags.weak_damping = o->gamma * tau_d < 0.1;
    return {tau_d, flags};
}

std::optional<double> measured_decoherence_time(std::span<const double> times, double d,
                                                double sigma1, const UnitSystem& units,
                                                Temperature T) {
    require_width(sigma1, "measured_decoherence_time");
    if (T.is_zero()) throw DomainError("measured_decoherence_time: requires T > 0");
    const double kT = units.boltzmann() * T.value();
    const double s1sq = sigma1 * sigma1;
    // 8mσ₁⁴/kTt² <= 8d²  ⟺  mσ₁⁴ <= kT t² d²
    for (double t : times) {
        if (t > 0.0 && units.mass() * s1sq * s1sq <= kT * t * t * d * d * (1.0 + 1e-12)) return t;
    }
    return std::nullopt;
}

double long_time_attenuation_rate(double d, const UnitSystem& units, Temperature T, double gamma) {
    if (!(gamma > 0.0)) throw DomainError("long_time_attenuation_rate: gamma must be > 0");
    const auto scales = thermal_scales(units, T);
    return d * d * gamma / (scales.lambda_bar * scales.lambda_bar);
}

}  // namespace qbm
