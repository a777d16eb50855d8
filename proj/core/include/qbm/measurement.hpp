// measurement.hpp: measuring functions α(x), their Fourier transforms, and the
// characteristic-function route to the measurement distributions.
//
// The characteristic functions of quantum Brownian motion are
//
//   ξ(1)   = e^{−k₁²<x²>/2} ∫ dq/2π ᾶ(q − k₁/2)* ᾶ(q + k₁/2)
//   ξ(1,2) = e^{−½ kᵀ C k} ∏ⱼ ∫ dqⱼ/2π ᾶⱼ(qⱼ − kⱼ/2)* ᾶⱼ(qⱼ + kⱼ/2) · e^{i q₁ k₂ c₁₂}
//
// with C the symmetrized covariance and [x(t₁), x(t₂)] = i c₁₂. Carrying the
// commutator as the real amplitude c₁₂ turns its factor into a pure phase;
// with that phase the Gaussian integrals reproduce the closed-form joint
// distribution (τ² gains +c²/4σ₁²). For both supported measuring functions
// the q₁ weight is even, so the sign of the phase is not observable.
//
// Distributions are recovered by W(x) = ∫ dk/2π ξ(k) e^{−ikx}.
#pragma once

#include <complex>
#include <span>
#include <variant>
#include <vector>

#include "qbm/kernels.hpp"
#include "qbm/quadrature.hpp"

namespace qbm {

using complex = std::complex<double>;

/// (2πσ²)^{−1/4} exp{−(x − center)²/4σ²}
struct GaussianSlit {
    double sigma;
    double center = 0.0;
};

/// Two Gaussian packets of width σ at center ± d/2, jointly normalized by
/// [8πσ²(1 + e^{−d²/8σ²})²]^{1/4}.
struct DoubleSlit {
    double separation;
    double sigma;
    double center = 0.0;
};

/// A measuring function. A centre offset c shifts the readings by −c, since
/// the instrument responds to α[x(t) − x₁].
class MeasuringFunction {
public:
    using Variant = std::variant<GaussianSlit, DoubleSlit>;

    static MeasuringFunction gaussian(double sigma, double center = 0.0);
    static MeasuringFunction double_slit(double separation, double sigma, double center = 0.0);

    const Variant& variant() const noexcept { return v_; }
    double sigma() const noexcept;

private:
    explicit MeasuringFunction(Variant v) : v_(v) {}
    Variant v_;
};

double double_slit_normalization(double separation, double sigma);

double alpha_value(const MeasuringFunction& mf, double x);

/// ᾶ(q) = ∫ dx α(x) e^{−iqx}, in closed form.
complex alpha_fourier(const MeasuringFunction& mf, double q);

/// First line of the characteristic function, by adaptive quadrature over q.
/// Requires a finite variance.
complex xi_single(const MeasuringFunction& mf, const Variance& x2_mean, double k1,
                  const QuadratureConfig& quad = {});

/// Symmetrized 2×2 covariance <x(tⱼ)x(tₗ) + x(tₗ)x(tⱼ)>/2.
struct Covariance2 {
    double xx;
    double xy;
    double yy;
};

/// Second line of the characteristic function. The (q₁, q₂) integrand
/// factorizes, so it is evaluated as a product of two adaptive 1D integrals.
/// Throws DomainError if the covariance is not positive semidefinite.
complex xi_joint(const MeasuringFunction& mf1, const MeasuringFunction& mf2, const Covariance2& cov,
                 double c12, double k1, double k2, const QuadratureConfig& quad = {});

/// Uniform grid start + i·step, i < count.
struct UniformGrid {
    double start;
    double step;
    std::size_t count;

    double operator[](std::size_t i) const noexcept { return start + static_cast<double>(i) * step; }
    double back() const noexcept { return (*this)[count - 1]; }
    std::vector<double> points() const;

    /// count points spanning [lo, hi] inclusive.
    static UniformGrid spanning(double lo, double hi, std::size_t count);
};

struct InversionOptions {
    /// Largest |ξ| tolerated on the k-grid boundary relative to max |ξ|.
    double decay_threshold = 1e-12;
    bool enforce_decay = true;
};

struct Inversion1D {
    std::vector<double> x;
    std::vector<double> density;
    double max_imag_residue = 0.0;
};

/// Row-major density on x1 × x2 (index i1·x2.size() + i2).
struct Inversion2D {
    std::vector<double> x1;
    std::vector<double> x2;
    std::vector<double> density;
    double max_imag_residue = 0.0;

    double operator()(std::size_t i1, std::size_t i2) const { return density[i1 * x2.size() + i2]; }
};

/// Discrete Fourier inversion W(x) = Σ Δk/2π ξ(k) e^{−ikx}. Throws
/// AliasingError when ξ has not decayed at the grid edge or an x point lies
/// outside one period (|x| > π/Δk).
Inversion1D invert_characteristic(const UniformGrid& k, std::span<const complex> samples,
                                  std::span<const double> x, const InversionOptions& opts = {});

/// Two-dimensional version; samples are row-major over k1 × k2.
Inversion2D invert_characteristic(const UniformGrid& k1, const UniformGrid& k2,
                                  std::span<const complex> samples, std::span<const double> x1,
                                  std::span<const double> x2, const InversionOptions& opts = {});

/// Trapezoid rule on an arbitrary ascending grid.
double trapezoid(std::span<const double> x, std::span<const double> y);

}  // namespace qbm
