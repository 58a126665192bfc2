#include <doctest.h>

#include <cmath>

#include "tlj/boundary.hpp"

using namespace tlj;

static const BoundaryCurves& curves() { return BoundaryCurves::shared(); }

TEST_CASE("intercepts at zero drive") {
    CHECK(curves().a0(0.0) == 0.0);
    CHECK(curves().a1(0.0) == 1.0);
    CHECK(curves().b1(0.0) == 1.0);
    CHECK(curves().locate(BoundaryName::a0, 0.0) == 0.0);
    CHECK(curves().locate(BoundaryName::a1, 0.0) == 1.0);
}

TEST_CASE("a0 follows the small-drive parabola") {
    CHECK(curves().locate(BoundaryName::a0, 0.2) == doctest::Approx(-0.0200).epsilon(0.025));
    CHECK(std::abs(curves().locate(BoundaryName::a0, 0.2) - (-0.0200)) < 5e-4);
    // slope tracks -V near the origin
    CHECK(curves().a0_slope(0.2) == doctest::Approx(-0.2).epsilon(0.06));
    // non-increasing near V = 0
    CHECK(curves().a0(0.05) <= 0.0);
    CHECK(curves().a0(0.1) <= curves().a0(0.05));
}

TEST_CASE("known transition values") {
    CHECK(std::abs(curves().locate(BoundaryName::a0, 1.0) - (-0.45514)) < 1e-3);
    CHECK(std::abs(curves().locate(BoundaryName::b1, 0.5) - 0.47065) < 1e-3);
    // the principal region closes onto the drive axis near V = 0.908
    CHECK(std::abs(curves().b1(0.908)) < 2e-3);
}

TEST_CASE("interpolated values stay within 1e-4 of a fresh bisection") {
    for (double V : {0.13, 0.41, 0.77, 1.03, 1.49, 1.87}) {
        CHECK(std::abs(curves().a0(V) - curves().locate(BoundaryName::a0, V)) < 1e-4);
        CHECK(std::abs(curves().b1(V) - curves().locate(BoundaryName::b1, V)) < 1e-4);
        CHECK(std::abs(curves().a1(V) - curves().locate(BoundaryName::a1, V)) < 1e-4);
    }
}

TEST_CASE("sidedness: a step off each curve lands on the expected side") {
    const double eps = 1e-3;
    for (double V : {0.1, 0.35, 0.6, 0.9, 1.2, 1.6, 1.95}) {
        const double a0 = curves().locate(BoundaryName::a0, V);
        CHECK(characteristic_exponent({a0 + eps, V}).stable);
        CHECK_FALSE(characteristic_exponent({a0 - eps, V}).stable);

        const double b1 = curves().locate(BoundaryName::b1, V);
        CHECK(characteristic_exponent({b1 - eps, V}).stable);
        CHECK_FALSE(characteristic_exponent({b1 + eps, V}).stable);

        const double a1 = curves().locate(BoundaryName::a1, V);
        CHECK(characteristic_exponent({a1 + eps, V}).stable);
        CHECK_FALSE(characteristic_exponent({a1 - eps, V}).stable);
    }
}

TEST_CASE("band ordering convention b1 <= a1") {
    for (int k = 0; k < curves().knots(); ++k) {
        const double V = 2.0 * k / (curves().knots() - 1);
        CHECK(curves().b1(V) <= curves().a1(V) + 1e-12);
    }
}

TEST_CASE("requests beyond the tabulated range are rejected") {
    CHECK_THROWS_AS(curves().a0(2.5), OutOfTabulation);
    CHECK_THROWS_AS(curves().locate(BoundaryName::b1, -0.1), OutOfTabulation);
    CHECK_THROWS_AS(boundary_name_from_string("b2"), std::invalid_argument);
    CHECK(boundary_name_from_string("a0") == BoundaryName::a0);
}
