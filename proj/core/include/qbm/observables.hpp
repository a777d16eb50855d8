// observables.hpp: closed-form measurement statistics built from the kernels.
//
// All commutator-bearing expressions use the real amplitude c(t) with
// [x(t₁), x(t₁+t)] = i c(t), so −[x,x]² enters as +c².
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qbm/bath.hpp"
#include "qbm/kernels.hpp"

namespace qbm {

/// Parameters of the bivariate normal W(1,2).
struct JointGaussian {
    double sigma;
    double tau;
    double rho;
};

/// σ² = σ₁² + <x²>,  τ² = σ₂² + c²/4σ₁² + <x²>,  2στρ = 2<x²> − s.
/// Throws InconsistentInputsError when ρ² >= 1 and DomainError for a
/// divergent variance or σ₁ <= 0.
JointGaussian joint_gaussian_params(double sigma1, double sigma2, const Variance& x2_mean,
                                    const KernelPair& kernels);

/// Centred normal density with standard deviation sigma.
double single_distribution(double sigma, double x1);
double joint_distribution(const JointGaussian& jg, double x1, double x2);

struct SpreadResult {
    double t;
    double w2;
};

/// Mean square width w² = σ₁² + c²/4σ₁² + s + σ₂². Throws DomainError when
/// σ₁ <= 0.
SpreadResult packet_width(double sigma1, double sigma2, const KernelPair& kernels);

/// Free-particle conditional probability: normal with variance w²(t).
double conditional_spread(double x, double sigma1, double sigma2, const KernelPair& kernels);

/// Two-packet conditional probability sampled on x_grid. The three terms are
/// kept separately so the fringe/envelope ratio can be measured.
struct InterferenceProfile {
    double t = 0.0;
    std::vector<double> x_grid;
    std::vector<double> p;
    double attenuation = 1.0;

    std::vector<double> fringe_envelope;  // interference term without its cosine
    std::vector<double> slit_plus;        // packet at +d/2
    std::vector<double> slit_minus;       // packet at −d/2
};

InterferenceProfile interference_profile(std::span<const double> x_grid, double d, double sigma1,
                                         double sigma2, const KernelPair& kernels);

/// Ratio of the interference envelope to twice the geometric mean of the two
/// slit terms, at every grid point where all three terms are representable.
std::vector<double> fringe_to_envelope_ratio(const InterferenceProfile& profile);

/// a(t) = exp{−(s + σ₂²) d² / (8 σ₁² w²)}.
double attenuation(double d, double sigma1, double sigma2, const KernelPair& kernels);

/// a(t) for a free particle without dissipation, σ₂ = 0:
///   exp{−d² / (8σ₁² + 2λ̄² + 8mσ₁⁴/kTt²)}.
/// Equals 1 at t = 0 by continuity. Requires T > 0.
double attenuation_no_dissipation(double t, double d, double sigma1, const UnitSystem& units,
                                  Temperature T);

struct RegimeFlags {
    bool separation_exceeds_width;       // d ≥ 10 σ₁
    bool separation_exceeds_wavelength;  // d > 10 λ̄
    std::optional<bool> weak_damping;    // γ τ_d < 0.1, Ohmic baths only
};

struct DecoherenceEstimate {
    double tau_d;
    RegimeFlags flags;
};

/// τ_d = σ₁² / (v̄ d). Does not depend on the damping; γ only enters the flags.
DecoherenceEstimate decoherence_time(double d, double sigma1, const UnitSystem& units, Temperature T,
                                     const BathSpec& bath);

/// Empirical τ_d: the first time on an ascending grid at which the transient
/// term 8mσ₁⁴/kTt² of the no-dissipation exponent has fallen to 8d². This
/// happens exactly at σ₁²/(v̄ d); on a grid it is the first point at or
/// beyond it. Empty if no grid point qualifies.
std::optional<double> measured_decoherence_time(std::span<const double> times, double d,
                                                double sigma1, const UnitSystem& units,
                                                Temperature T);

/// Long-time (γt ≫ 1, σ₁ → 0) decay rate of a(t) for Ohmic baths: d²γ/λ̄².
double long_time_attenuation_rate(double d, const UnitSystem& units, Temperature T, double gamma);

}  // namespace qbm
