// bath.hpp: unit system, temperature and the environment response Im α(ω+i0⁺).
#pragma once

#include <span>
#include <variant>
#include <vector>

namespace qbm {

/// Physical constants in whatever unit system the caller works in.
/// The default is the dimensionless system ħ = k_B = m = 1.
class UnitSystem {
public:
    UnitSystem() = default;
    UnitSystem(double hbar, double boltzmann, double mass);

    double hbar() const noexcept { return hbar_; }
    double boltzmann() const noexcept { return boltzmann_; }
    double mass() const noexcept { return mass_; }

    friend bool operator==(const UnitSystem&, const UnitSystem&) = default;

private:
    double hbar_ = 1.0;
    double boltzmann_ = 1.0;
    double mass_ = 1.0;
};

/// Absolute temperature, T >= 0. T = 0 is a valid state (coth -> 1).
class Temperature {
public:
    constexpr Temperature() = default;
    explicit Temperature(double value);

    double value() const noexcept { return value_; }
    bool is_zero() const noexcept { return value_ == 0.0; }

    friend bool operator==(const Temperature&, const Temperature&) = default;

private:
    double value_ = 0.0;
};

struct ThermalScales {
    double lambda_bar;  // ħ / sqrt(m k T), mean thermal de Broglie wavelength
    double v_bar;       // sqrt(k T / m), mean thermal velocity
};

/// λ̄ and v̄. Throws DomainError at T = 0.
ThermalScales thermal_scales(const UnitSystem& units, Temperature T);

/// Ohmic damping: mean motion obeys m<ẍ> + mγ<ẋ> = 0.
struct OhmicBath {
    double gamma;
};

/// Free particle without dissipation. Its kernels are analytic limits and
/// Im α is not evaluated pointwise.
struct NoDissipationBath {};

/// Im α(ω) sampled on an ascending grid of positive frequencies. Linear
/// interpolation inside the grid, zero outside.
class TabulatedBath {
public:
    TabulatedBath(std::vector<double> grid, std::vector<double> values);

    std::span<const double> grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }

    double front() const noexcept { return grid_.front(); }
    double back() const noexcept { return grid_.back(); }

    /// Linear interpolation; 0 outside [front, back].
    double operator()(double omega) const noexcept;

private:
    std::vector<double> grid_;
    std::vector<double> values_;
};

class BathSpec {
public:
    using Variant = std::variant<OhmicBath, NoDissipationBath, TabulatedBath>;

    static BathSpec ohmic(double gamma);
    static BathSpec no_dissipation();
    static BathSpec tabulated(std::vector<double> grid, std::vector<double> values);

    const Variant& variant() const noexcept { return v_; }

    bool is_ohmic() const noexcept { return std::holds_alternative<OhmicBath>(v_); }
    bool is_no_dissipation() const noexcept { return std::holds_alternative<NoDissipationBath>(v_); }
    bool is_tabulated() const noexcept { return std::holds_alternative<TabulatedBath>(v_); }

    /// Ohmic γ; 0 for NoDissipation. Throws UnsupportedVariantError for Tabulated.
    double damping_rate() const;

private:
    explicit BathSpec(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

/// Im α(ω + i0⁺) for ω > 0.
///
/// Ohmic: γ / (m ω (ω² + γ²)). Tabulated: linear interpolation, 0 outside the
/// grid. NoDissipation throws UnsupportedVariantError; its kernels are handled
/// through closed-form limits instead. ω <= 0 throws DomainError.
double im_alpha(const BathSpec& bath, const UnitSystem& units, double omega);

}  // namespace qbm
