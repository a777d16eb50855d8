#include "qbm/bath.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qbm/errors.hpp"

namespace qbm {

UnitSystem::UnitSystem(double hbar, double boltzmann, double mass)
    : hbar_(hbar), boltzmann_(boltzmann), mass_(mass) {
    if (!(hbar > 0.0) || !(boltzmann > 0.0) || !(mass > 0.0) || !std::isfinite(hbar) ||
        !std::isfinite(boltzmann) || !std::isfinite(mass)) {
        throw DomainError("UnitSystem: hbar, boltzmann and mass must be finite and > 0");
    }
}

Temperature::Temperature(double value) : value_(value) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw DomainError("Temperature: value must be finite and >= 0");
    }
}

ThermalScales thermal_scales(const UnitSystem& units, Temperature T) {
    if (T.is_zero()) throw DomainError("thermal_scales: undefined at T = 0");
    const double kT = units.boltzmann() * T.value();
    return {units.hbar() / std::sqrt(units.mass() * kT), std::sqrt(kT / units.mass())};
}

TabulatedBath::TabulatedBath(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (grid_.size() < 2) throw DomainError("TabulatedBath: grid needs at least 2 points");
    if (grid_.size() != values_.size()) {
        throw DomainError("TabulatedBath: grid and values differ in length");
    }
    if (!(grid_.front() > 0.0)) throw DomainError("TabulatedBath: frequencies must be > 0");
    for (std::size_t i = 1; i < grid_.size(); ++i) {
        if (!(grid_[i] > grid_[i - 1])) {
            throw DomainError("TabulatedBath: grid must be strictly ascending");
        }
    }
    for (double v : values_) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw DomainError("TabulatedBath: values must be finite and >= 0 (passivity)");
        }
    }
    if (!std::isfinite(grid_.back())) throw DomainError("TabulatedBath: grid must be finite");
}

double TabulatedBath::operator()(double omega) const noexcept {
    if (omega < grid_.front() || omega > grid_.back()) return 0.0;
    auto it = std::upper_bound(grid_.begin(), grid_.end(), omega);
    if (it == grid_.end()) return values_.back();
    const auto hi = static_cast<std::size_t>(it - grid_.begin());
    const std::size_t lo = hi - 1;
    const double w = (omega - grid_[lo]) / (grid_[hi] - grid_[lo]);
    return values_[lo] + w * (values_[hi] - values_[lo]);
}

BathSpec BathSpec::ohmic(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw DomainError("BathSpec::ohmic: gamma must be finite and > 0");
    }
    return BathSpec(OhmicBath{gamma});
}

BathSpec BathSpec::no_dissipation() { return BathSpec(NoDissipationBath{}); }

BathSpec BathSpec::tabulated(std::vector<double> grid, std::vector<double> values) {
    return BathSpec(TabulatedBath(std::move(grid), std::move(values)));
}

double BathSpec::damping_rate() const {
    if (const auto* o = std::get_if<OhmicBath>(&v_)) return o->gamma;
    if (is_no_dissipation()) return 0.0;
    throw UnsupportedVariantError("damping_rate: tabulated baths have no single damping rate");
}

double im_alpha(const BathSpec& bath, const UnitSystem& units, double omega) {
    if (!(omega > 0.0)) throw DomainError("im_alpha: omega must be > 0");
    struct Visitor {
        const UnitSystem& units;
        double omega;
        double operator()(const OhmicBath& b) const {
            return b.gamma / (units.mass() * omega * (omega * omega + b.gamma * b.gamma));
        }
        double operator()(const NoDissipationBath&) const {
            throw UnsupportedVariantError(
                "im_alpha: no-dissipation bath is handled by closed-form kernel limits");
        }
        double operator()(const TabulatedBath& b) const { return b(omega); }
    };
    return std::visit(Visitor{units, omega}, bath.variant());
}

}  // namespace qbm
