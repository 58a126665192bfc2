#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tlj/potential.hpp"

using namespace tlj;

TEST_CASE("quadratic coefficients enforce the trace constraint") {
    CHECK_THROWS_AS(QuadraticCoefficients::make(0, 0, 0, 0, 0, 0, 0.3, 0.2, 0.0),
                    std::invalid_argument);
    const QuadraticCoefficients q = QuadraticCoefficients::diagonal(0.29, -0.15);
    CHECK(q.gamma == doctest::Approx(-0.14).epsilon(1e-15));
}

TEST_CASE("control potential point values") {
    const QuadraticCoefficients q1 = QuadraticCoefficients::diagonal(0.2, 0.0);
    CHECK(control_potential(q1, {1, 1, 1}) == doctest::Approx(0.0).epsilon(1e-15));

    const QuadraticCoefficients q2 = QuadraticCoefficients::diagonal(0.29, -0.15);
    CHECK(control_potential(q2, {1, 0, 0}) == doctest::Approx(0.29));
    CHECK(control_potential(q2, {0, 0, 0}) == 0.0);
}

TEST_CASE("rf potential point values") {
    CHECK(rf_potential(0.25, {0, 1, 1}, 0.0) == doctest::Approx(0.0));
    CHECK(rf_potential(0.75, {0, 1, 0}, 0.0) == doctest::Approx(-1.5));
    CHECK(std::abs(rf_potential(0.4, {0.3, 0.7, -1.2}, std::numbers::pi / 4.0)) < 1e-15);
}

TEST_CASE("transfer profiles hit the documented knots") {
    const TransferProfile tp{ProfileKind::three_phase, 6.0};
    CHECK(tp.eval(1.0) == 0.0);          // T/6
    CHECK(tp.eval(2.0) == 0.0);          // T/3
    CHECK(tp.eval(3.0) == doctest::Approx(0.5));
    CHECK(tp.eval(4.0) == doctest::Approx(1.0));
    CHECK(tp.eval(6.0) == 1.0);

    for (ProfileKind k : {ProfileKind::heaviside, ProfileKind::linear, ProfileKind::three_phase,
                          ProfileKind::smoothstep}) {
        const TransferProfile p{k, 2.0};
        CHECK(p.eval(0.0) == 0.0);
        CHECK(p.eval(2.0) == 1.0);
        double prev = -1.0;
        for (int i = 0; i <= 200; ++i) {
            const double f = p.eval(2.0 * i / 200.0);
            CHECK(f >= prev - 1e-15);  // monotone
            CHECK(f >= 0.0);
            CHECK(f <= 1.0);
            prev = f;
        }
    }
    CHECK(to_string(profile_kind_from_string("smoothstep")) == "smoothstep");
    CHECK_THROWS_AS(profile_kind_from_string("ramp"), std::invalid_argument);
}

TEST_CASE("blend endpoints reduce to the single-trap forms") {
    const TwoLayerGeometry g(25.0);
    const JunctionParams jp{0.75, -0.15, 0.29};
    const TransferProfile held{ProfileKind::heaviside, 1e12};  // f = 0 at any finite t
    const TransferProfile done{ProfileKind::linear, 1e-9};     // f = 1 at any t > T

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> up(-20.0, 20.0);
    for (int i = 0; i < 50; ++i) {
        const Vec3 p{up(rng), up(rng), up(rng)};
        const double t = 0.37 * i;
        // f = 0: bottom trap with its null at z = -s
        const double direct0 =
            control_potential(QuadraticCoefficients::diagonal(jp.alpha, jp.beta),
                              {p.x, p.y, p.z + g.s}) +
            rf_potential(jp.mu, {p.x, p.y, p.z + g.s}, t);
        CHECK(total_potential(g, jp, held, p, t) == doctest::Approx(direct0).epsilon(1e-12));

        // f = 1: rotoreflected top trap
        const double direct1 =
            control_potential(QuadraticCoefficients::diagonal(jp.alpha, jp.beta),
                              {p.y, -p.x, g.s - p.z}) +
            rf_potential(jp.mu, {p.y, -p.x, g.s - p.z}, t);
        CHECK(total_potential(g, jp, done, p, t) == doctest::Approx(direct1).epsilon(1e-12));
    }
}

TEST_CASE("rotoreflection symmetry of the blended potential") {
    // Phi(x, y, z, t; f) = Phi(y, -x, -z, t; 1 - f). Two linear ramps of
    // different durations pin complementary blend values at one drive time.
    const TwoLayerGeometry g(25.0);
    const JunctionParams jp{0.6, 0.1, 0.25};
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> up(-15.0, 15.0), uf(0.05, 0.95), ut(0.05, 1.5);

    for (int i = 0; i < 200; ++i) {
        const Vec3 p{up(rng), up(rng), up(rng)};
        const Vec3 m{p.y, -p.x, -p.z};
        const double f = uf(rng);
        const double t = ut(rng);
        const TransferProfile pa{ProfileKind::linear, t / f};
        const TransferProfile pb{ProfileKind::linear, t / (1.0 - f)};
        CHECK(total_potential(g, jp, pa, p, t) ==
              doctest::Approx(total_potential(g, jp, pb, m, t)).epsilon(1e-12));
    }
}

TEST_CASE("analytic gradients match central differences") {
    const TwoLayerGeometry g(25.0);
    const JunctionParams jp{0.75, -0.15, 0.29};
    const TransferProfile prof{ProfileKind::smoothstep, 5.0};
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> up(-10.0, 10.0), ut(0.0, 5.0);
    const double h = 1e-5;
    for (int i = 0; i < 1000; ++i) {
        const Vec3 p{up(rng), up(rng), up(rng)};
        const double t = ut(rng);
        const Vec3 grad = total_gradient(g, jp, prof, p, t);
        for (int a = 0; a < 3; ++a) {
            Vec3 pp = p, pm = p;
            pp[a] += h;
            pm[a] -= h;
            const double fd =
                (total_potential(g, jp, prof, pp, t) - total_potential(g, jp, prof, pm, t)) /
                (2.0 * h);
            const double scale = std::max(1.0, std::abs(grad[a]));
            CHECK(std::abs(grad[a] - fd) < 1e-6 * scale);
        }
    }
}

TEST_CASE("laplace trace of both parts vanishes identically") {
    const TwoLayerGeometry g(25.0);
    const JunctionParams jp{0.6, -0.2, 0.45};
    const TransferProfile prof{ProfileKind::three_phase, 4.0};
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> up(-12.0, 12.0), ut(0.0, 4.0);
    const double h = 1e-3;
    for (int i = 0; i < 200; ++i) {
        const Vec3 p{up(rng), up(rng), up(rng)};
        const double t = ut(rng);
        double lap = 0.0;
        const double c = total_potential(g, jp, prof, p, t);
        for (int a = 0; a < 3; ++a) {
            Vec3 pp = p, pm = p;
            pp[a] += h;
            pm[a] -= h;
            lap += total_potential(g, jp, prof, pp, t) - 2.0 * c +
                   total_potential(g, jp, prof, pm, t);
        }
        CHECK(std::abs(lap / (h * h)) < 1e-6);
    }
}

TEST_CASE("drive mapping reproduces the quoted radial frequency") {
    PhysicalTrapSpec spec;
    spec.drive_frequency = 31e6;
    spec.mu = 0.25;
    spec.ion_mass = constants::yb171_mass;
    spec.ion_charge = constants::elementary_charge;
    spec.rf_amplitude = 56.0;
    spec.separation = 50e-6;

    const DimensionlessScales s = physical_to_dimensionless(spec);
    CHECK(s.secular_estimate / (2.0 * std::numbers::pi) ==
          doctest::Approx(2.74e6).epsilon(0.01));
    CHECK(s.time_scale == doctest::Approx(2.0 / (2.0 * std::numbers::pi * 31e6)));

    spec.mu = 0.0;
    CHECK(physical_to_dimensionless(spec).secular_estimate == 0.0);

    spec.mu = 0.75;
    CHECK(physical_to_dimensionless(spec).secular_estimate / (2.0 * std::numbers::pi) ==
          doctest::Approx(8.2e6).epsilon(0.02));
}

TEST_CASE("rf drive calibration round-trips") {
    const double omega = 2.0 * std::numbers::pi * 31e6;
    const double curv = 1.2e8;  // V/m^2 per volt
    const double v = rf_volts_for_mu(0.25, curv, constants::yb171_mass,
                                     constants::elementary_charge, omega);
    CHECK(mu_from_rf_drive(v, curv, constants::yb171_mass, constants::elementary_charge,
                           omega) == doctest::Approx(0.25).epsilon(1e-12));
}
