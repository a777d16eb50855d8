// kernels.hpp: the two time-domain kernels of quantum Brownian motion.
//
//   s(t) = (2ħ/π) ∫₀^∞ dω Im α(ω) coth(ħω/2kT) (1 − cos ωt)
//   c(t) = (2ħ/π) ∫₀^∞ dω Im α(ω) sin ωt,   [x(t₁), x(t₁+t)] = i c(t)
//
// s is even in t and c is odd; every function here takes t >= 0.
#pragma once

#include <optional>

#include "qbm/bath.hpp"
#include "qbm/quadrature.hpp"

namespace qbm {

/// Mean square displacement s and commutator amplitude c at lag t.
struct KernelPair {
    double t = 0.0;
    double s = 0.0;
    double c = 0.0;
};

/// Thermal factor multiplying Im α in the s(t) integrand.
enum class ThermalWeight {
    Exact,            // coth(ħω/2kT), → 1 at T = 0
    HighTemperature,  // 2kT/ħω, the kT ≫ ħω limit
};

/// Equilibrium <x²>: finite for bound (tabulated) baths, divergent for a free
/// particle.
class Variance {
public:
    static Variance finite(double value);
    static Variance divergent() { return Variance(); }

    bool is_finite() const noexcept { return value_.has_value(); }
    /// Throws DomainError when divergent.
    double value() const;

private:
    Variance() = default;
    std::optional<double> value_;
};

/// s(t) by oscillatory quadrature. NoDissipation short-circuits to kT t²/m
/// (0 at T = 0). Throws DomainError for t < 0 and ConvergenceError when the
/// panel budget runs out.
double mean_square_displacement(const BathSpec& bath, const UnitSystem& units, Temperature T,
                                double t, const QuadratureConfig& quad = {},
                                ThermalWeight weight = ThermalWeight::Exact);

/// c(t) by oscillatory quadrature; temperature independent. NoDissipation
/// returns ħt/m.
double commutator_amplitude(const BathSpec& bath, const UnitSystem& units, double t,
                            const QuadratureConfig& quad = {});

/// Both kernels at lag t.
KernelPair kernel_pair(const BathSpec& bath, const UnitSystem& units, Temperature T, double t,
                       const QuadratureConfig& quad = {},
                       ThermalWeight weight = ThermalWeight::Exact);

/// Free-particle kernels: s = kT t²/m, c = ħt/m.
KernelPair no_dissipation_kernels(const UnitSystem& units, Temperature T, double t);

/// Ohmic kernels in the high-temperature regime kT ≫ ħγ:
///   s = (2kT/mγ)(t − (1 − e^{−γt})/γ),  c = (ħ/mγ)(1 − e^{−γt}).
/// The regime is not enforced; see is_high_temperature().
KernelPair ohmic_high_t_kernels(double gamma, const UnitSystem& units, Temperature T, double t);

/// Soft check for the closed forms above: kT >= 10 ħγ.
bool is_high_temperature(double gamma, const UnitSystem& units, Temperature T) noexcept;

/// <x²> = (ħ/π) ∫ Im α coth(ħω/2kT) dω for tabulated baths; Divergent for
/// Ohmic and NoDissipation.
Variance equilibrium_variance(const BathSpec& bath, const UnitSystem& units, Temperature T,
                              const QuadratureConfig& quad = {});

/// Symmetrized autocorrelation <x(t₁)x(t₁+t) + x(t₁+t)x(t₁)>/2 for tabulated
/// baths, so that s(t) = 2<x²> − 2·autocorrelation(t).
double position_autocorrelation(const BathSpec& bath, const UnitSystem& units, Temperature T,
                                double t, const QuadratureConfig& quad = {});

}  // namespace qbm
