#pragma once

#include <stdexcept>
#include <string>

namespace qbm {

/// An argument lies outside the domain of the operation (negative time,
/// zero temperature where a thermal scale is required, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The operation is not defined for the requested bath variant.
class UnsupportedVariantError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Inputs are individually valid but jointly inconsistent (e.g. rho^2 >= 1).
class InconsistentInputsError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A characteristic function was not decayed at the edge of its k-grid, or
/// the requested x-grid does not fit inside one period of the inversion.
class AliasingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature exhausted its panel budget. Carries the best estimate
/// reached so far so that sweeps can report instead of aborting.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double partial_estimate, double error_estimate)
        : std::runtime_error(what), partial_(partial_estimate), error_(error_estimate) {}

    double partial_estimate() const noexcept { return partial_; }
    double error_estimate() const noexcept { return error_; }

private:
    double partial_;
    double error_;
};

}  // namespace qbm
