#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tlj/mathieu.hpp"

using namespace tlj;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("determinant is the identity when the drive vanishes") {
    CHECK(hill_determinant({0.5, 0.0}, 25) == 1.0);
    CHECK(hill_determinant({-1.3, 0.0}, 25) == 1.0);
}

TEST_CASE("determinant truncation is converged at the default order") {
    // self-convergence against a doubled truncation
    const double d25 = hill_determinant({0.5, 0.1}, 25);
    const double d50 = hill_determinant({0.5, 0.1}, 50);
    CHECK(std::abs(d25 - d50) < 1e-10);

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uu(-1.0, 1.5), uv(0.0, 1.5);
    int tested = 0;
    while (tested < 200) {
        const double U = uu(rng), V = uv(rng);
        if (near_determinant_pole(U)) continue;
        ++tested;
        CHECK(std::abs(hill_determinant({U, V}, 25) - hill_determinant({U, V}, 50)) < 1e-10);
    }
}

TEST_CASE("determinant rejects pole-adjacent and under-truncated input") {
    CHECK_THROWS_AS(hill_determinant({1e-9, 0.5}), PoleProximity);
    CHECK_THROWS_AS(hill_determinant({4.0 + 5e-5, 0.5}), PoleProximity);
    CHECK_THROWS_AS(hill_determinant({0.5, 0.1}, 4), std::invalid_argument);
}

TEST_CASE("exponent recovers the static-well closed form") {
    const StabilityResult r = characteristic_exponent({0.25, 0.0});
    CHECK(r.stable);
    CHECK(r.w.imag() == 0.0);
    CHECK(r.w.real() == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_FALSE(characteristic_exponent({-0.25, 0.0}).stable);

    for (double U : {0.04, 0.3, 0.62, 0.9}) {
        const StabilityResult s = characteristic_exponent({U, 0.0});
        CHECK(s.stable);
        CHECK(std::abs(s.w.real() - std::sqrt(U)) < 1e-8);
    }
    // above the first band edge the exponent folds into [0, 1]; compare the
    // cosine instead of the branch
    for (double U : {1.3, 2.25, 3.1}) {
        const StabilityResult s = characteristic_exponent({U, 0.0});
        CHECK(s.stable);
        CHECK(std::abs(std::cos(kPi * s.w.real()) - std::cos(kPi * std::sqrt(U))) < 1e-8);
    }
    for (double U : {-0.04, -0.5, -2.0}) CHECK_FALSE(characteristic_exponent({U, 0.0}).stable);
}

TEST_CASE("operating point (0, 0.25) is stable, (0, 1.0) is not") {
    const StabilityResult a = characteristic_exponent({0.0, 0.25});
    CHECK(a.stable);
    CHECK(a.used_floquet);  // sits on the r = 0 determinant pole
    CHECK(std::isnan(a.hill_det));

    CHECK_FALSE(characteristic_exponent({0.0, 1.0}).stable);
}

TEST_CASE("monodromy trace closed forms at zero drive") {
    const FloquetResult still = floquet_stable({0.25, 0.0});
    CHECK(std::abs(still.monodromy_trace - 2.0 * std::cos(kPi * 0.5)) < 1e-10);
    CHECK(still.stable);

    const FloquetResult runaway = floquet_stable({-0.5, 0.0});
    CHECK(runaway.monodromy_trace ==
          doctest::Approx(2.0 * std::cosh(kPi * std::sqrt(0.5))).epsilon(1e-10));
    CHECK_FALSE(runaway.stable);

    CHECK(floquet_stable({0.0, 0.25}).stable);
    CHECK_THROWS_AS(floquet_stable({0.25, 0.0}, 32), std::invalid_argument);
}

TEST_CASE("trace and determinant routes compute the same cos(pi w)") {
    // trace of the one-period monodromy equals 2 cos(pi w); the determinant
    // route must reproduce it wherever it applies
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uu(-1.0, 1.5), uv(0.0, 1.5);
    int tested = 0;
    while (tested < 150) {
        const double U = uu(rng), V = uv(rng);
        if (near_determinant_pole(U, 1e-3)) continue;
        const StabilityResult h = characteristic_exponent({U, V});
        const FloquetResult f = floquet_stable({U, V});
        if (std::abs(f.monodromy_trace) > 50.0) continue;  // deep instability, trace error grows
        ++tested;
        CHECK(std::abs(f.monodromy_trace - 2.0 * h.cos_arg) < 5e-6);
    }
}

TEST_CASE("verdicts are even in the drive sign") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uu(-1.0, 1.5), uv(0.0, 1.5);
    for (int i = 0; i < 100; ++i) {
        const double U = uu(rng), V = uv(rng);
        const FloquetResult fp = floquet_stable({U, V});
        const FloquetResult fm = floquet_stable({U, -V});
        CHECK(fp.monodromy_trace == doctest::Approx(fm.monodromy_trace).epsilon(1e-12));
        if (!near_determinant_pole(U))
            CHECK(characteristic_exponent({U, V}).stable ==
                  characteristic_exponent({U, -V}).stable);
    }
}

TEST_CASE("determinant and monodromy classifiers agree away from the band edges") {
    const int n = 60;
    int agree = 0, total = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double U = -1.0 + 2.5 * i / (n - 1);
            const double V = 1.5 * j / (n - 1);
            if (near_determinant_pole(U)) continue;
            ++total;
            if (characteristic_exponent({U, V}).stable == floquet_stable({U, V}).stable) ++agree;
        }
    CHECK(static_cast<double>(agree) / total >= 0.99);
}
