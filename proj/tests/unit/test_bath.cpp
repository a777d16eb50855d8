#include "doctest.h"

#include <cmath>
#include <random>

#include "qbm/bath.hpp"
#include "qbm/errors.hpp"

using namespace qbm;

TEST_CASE("im_alpha: Ohmic response") {
    const auto bath = BathSpec::ohmic(1.0);
    CHECK(im_alpha(bath, UnitSystem{}, 2.0) == doctest::Approx(0.1).epsilon(1e-15));

    // decays as 1/ω³ beyond γ
    const double a = im_alpha(bath, UnitSystem{}, 100.0);
    const double b = im_alpha(bath, UnitSystem{}, 200.0);
    CHECK(a > b);
    CHECK(a / b == doctest::Approx(8.0).epsilon(1e-3));

    // mass scales the response as 1/m
    CHECK(im_alpha(bath, UnitSystem(1.0, 1.0, 4.0), 2.0) == doctest::Approx(0.025));
}

TEST_CASE("im_alpha: tabulated interpolation and hard zero outside the grid") {
    const auto flat = BathSpec::tabulated({1.0, 3.0}, {0.2, 0.2});
    CHECK(im_alpha(flat, UnitSystem{}, 2.0) == doctest::Approx(0.2));
    CHECK(im_alpha(flat, UnitSystem{}, 0.5) == 0.0);
    CHECK(im_alpha(flat, UnitSystem{}, 3.5) == 0.0);
    CHECK(im_alpha(flat, UnitSystem{}, 3.0) == doctest::Approx(0.2));

    const auto ramp = BathSpec::tabulated({1.0, 2.0, 4.0}, {0.0, 1.0, 0.0});
    CHECK(im_alpha(ramp, UnitSystem{}, 1.5) == doctest::Approx(0.5));
    CHECK(im_alpha(ramp, UnitSystem{}, 3.0) == doctest::Approx(0.5));
}

TEST_CASE("im_alpha: error paths") {
    CHECK_THROWS_AS(im_alpha(BathSpec::ohmic(1.0), UnitSystem{}, 0.0), DomainError);
    CHECK_THROWS_AS(im_alpha(BathSpec::ohmic(1.0), UnitSystem{}, -1.0), DomainError);
    CHECK_THROWS_AS(im_alpha(BathSpec::no_dissipation(), UnitSystem{}, 1.0), UnsupportedVariantError);
}

TEST_CASE("BathSpec and UnitSystem validation") {
    CHECK_THROWS_AS(BathSpec::ohmic(0.0), DomainError);
    CHECK_THROWS_AS(BathSpec::ohmic(-1.0), DomainError);
    CHECK_THROWS_AS(BathSpec::tabulated({1.0}, {0.1}), DomainError);
    CHECK_THROWS_AS(BathSpec::tabulated({1.0, 1.0}, {0.1, 0.1}), DomainError);
    CHECK_THROWS_AS(BathSpec::tabulated({2.0, 1.0}, {0.1, 0.1}), DomainError);
    CHECK_THROWS_AS(BathSpec::tabulated({0.0, 1.0}, {0.1, 0.1}), DomainError);
    CHECK_THROWS_AS(BathSpec::tabulated({1.0, 2.0}, {0.1, -0.1}), DomainError);
    CHECK_THROWS_AS(BathSpec::tabulated({1.0, 2.0}, {0.1}), DomainError);
    CHECK_THROWS_AS(UnitSystem(0.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(UnitSystem(1.0, -1.0, 1.0), DomainError);
    CHECK_THROWS_AS(Temperature(-1.0), DomainError);
    CHECK(Temperature(0.0).is_zero());
    CHECK(BathSpec::ohmic(0.3).damping_rate() == 0.3);
    CHECK(BathSpec::no_dissipation().damping_rate() == 0.0);
}

TEST_CASE("thermal_scales") {
    auto [l1, v1] = thermal_scales(UnitSystem{}, Temperature(1.0));
    CHECK(l1 == 1.0);
    CHECK(v1 == 1.0);

    auto [l2, v2] = thermal_scales(UnitSystem(1.0, 1.0, 4.0), Temperature(1.0));
    CHECK(l2 == doctest::Approx(0.5));
    CHECK(v2 == doctest::Approx(0.5));

    auto [l3, v3] = thermal_scales(UnitSystem{}, Temperature(4.0));
    CHECK(l3 == doctest::Approx(0.5));
    CHECK(v3 == doctest::Approx(2.0));

    CHECK_THROWS_AS(thermal_scales(UnitSystem{}, Temperature(0.0)), DomainError);
}

TEST_CASE("property: passivity and λ̄·v̄·m = ħ") {
    std::mt19937_64 rng(20260416);
    std::uniform_real_distribution<double> logu(-3.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        const double gamma = std::pow(10.0, logu(rng));
        const double omega = std::pow(10.0, logu(rng));
        const UnitSystem units(std::pow(10.0, logu(rng)), std::pow(10.0, logu(rng)),
                               std::pow(10.0, logu(rng)));
        CHECK(im_alpha(BathSpec::ohmic(gamma), units, omega) >= 0.0);

        const auto sc = thermal_scales(units, Temperature(std::pow(10.0, logu(rng))));
        CHECK(sc.lambda_bar * sc.v_bar * units.mass() == doctest::Approx(units.hbar()).epsilon(1e-14));
    }
}
