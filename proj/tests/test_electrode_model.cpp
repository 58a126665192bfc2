#include <doctest.h>

#include <cmath>
#include <random>

#include "tlj/electrode_model.hpp"

using namespace tlj;

TEST_CASE("half-space rectangle potential boundary values") {
    const ElectrodeRect r{-10, 10, -5, 5};
    CHECK(halfspace_rect_potential(r, 0, 0, 0) == 1.0);
    CHECK(halfspace_rect_potential(r, 20, 0, 0) == 0.0);
    // directly over the center it tends to the full half solid angle as z -> 0+
    CHECK(halfspace_rect_potential(r, 0, 0, 1e-4) == doctest::Approx(1.0).epsilon(1e-3));
    // far field decays
    CHECK(halfspace_rect_potential(r, 0, 0, 500.0) < 1e-3);
}

TEST_CASE("parallel-plate limit: slab potential is linear between the planes") {
    const ElectrodeLayout lay = ElectrodeLayout::parallel_plate(50.0);
    const ElectrodeRect& plate = lay.electrodes[0].rects[0];
    for (int order : {20, 40}) {
        double worst = 0.0;
        for (double z = 5.0; z <= 45.0; z += 5.0)
            for (double x : {-60.0, 0.0, 60.0})
                for (double y : {-40.0, 25.0}) {
                    const double p = slab_rect_potential(plate, x, y, z, 50.0, order);
                    worst = std::max(worst, std::abs(p - (1.0 - z / 50.0)));
                }
        CHECK(worst < 1e-3);
    }
}

TEST_CASE("complementary rectangles superpose to the covering electrode") {
    // splitting a patch in two changes nothing about the summed potential
    const ElectrodeRect whole{-30, 30, -20, 20};
    const ElectrodeRect left{-30, 4, -20, 20}, right{4, 30, -20, 20};
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-25.0, 25.0), uz(2.0, 48.0);
    for (int i = 0; i < 50; ++i) {
        const double x = u(rng), y = u(rng), z = uz(rng);
        const double a = slab_rect_potential(whole, x, y, z, 50.0);
        const double b =
            slab_rect_potential(left, x, y, z, 50.0) + slab_rect_potential(right, x, y, z, 50.0);
        CHECK(a == doctest::Approx(b).epsilon(1e-10));
    }
}

TEST_CASE("slab potential respects both plane boundary conditions") {
    const ElectrodeRect r{-40, 40, -25, 25};
    // near the grounded opposing plane the potential collapses
    CHECK(std::abs(slab_rect_potential(r, 0, 0, 49.95, 50.0)) < 2e-3);
    // off the electrode on the source plane it also collapses
    CHECK(std::abs(slab_rect_potential(r, 200.0, 0, 0.05, 50.0)) < 2e-3);
    // over the electrode it approaches one
    CHECK(slab_rect_potential(r, 0, 0, 0.05, 50.0) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK_THROWS_AS(slab_rect_potential(r, 0, 0, -1.0, 50.0), GeometryError);
    CHECK_THROWS_AS(slab_rect_potential(r, 0, 0, 51.0, 50.0), GeometryError);
}

TEST_CASE("generated grids are discretely harmonic away from the planes") {
    ElectrodeLayout lay = ElectrodeLayout::peregrine_like(50.0, /*two_layer=*/false);
    GridRequest req;
    req.origin = {-30.0, -30.0, -15.0};
    req.spacing = {2.0, 2.0, 1.0};
    req.dims = {31, 31, 31};
    const FieldGrid grid = generate_rect_electrode_grid(lay, req);

    const int rf = grid.electrode_index("b.rf");
    REQUIRE(rf >= 0);
    double worst = 0.0;
    for (int ix = 4; ix < 27; ix += 3)
        for (int iy = 4; iy < 27; iy += 3)
            for (int iz = 8; iz < 23; iz += 2) {
                double num = 0.0, den = 0.0;
                for (int a = 0; a < 3; ++a) {
                    const double h = req.spacing[a];
                    int dx = a == 0, dy = a == 1, dz = a == 2;
                    const double second =
                        (grid.at(rf, ix + dx, iy + dy, iz + dz) - 2.0 * grid.at(rf, ix, iy, iz) +
                         grid.at(rf, ix - dx, iy - dy, iz - dz)) /
                        (h * h);
                    num += second;
                    den += std::abs(second);
                }
                if (den > 1e-12) worst = std::max(worst, std::abs(num) / den);
            }
    CHECK(worst < 1e-3);
}

TEST_CASE("two-layer null sits at the reference height") {
    ElectrodeLayout lay = ElectrodeLayout::peregrine_like(50.0);
    GridRequest req;
    req.origin = {-25.0, -40.0, -20.0};
    req.spacing = {2.5, 1.0, 0.5};
    req.dims = {21, 81, 81};
    const FieldGrid grid = generate_rect_electrode_grid(lay, req);

    const NullReport null = find_rf_null(grid, "b.rf", 0.0, 50.0);
    REQUIRE(null.found);
    CHECK(std::abs(null.position.y) < 0.2);
    CHECK(null.height_above_bottom == doctest::Approx(23.7).epsilon(1.5 / 23.7));
    CHECK(null.curvature_yy > 0.0);

    // the rotoreflected top null mirrors it
    const NullReport top = find_rf_null(grid, "t.rf", 0.0, 50.0);
    REQUIRE(top.found);
    CHECK(top.position.z == doctest::Approx(-null.position.z).epsilon(0.02));
}

TEST_CASE("uniform slab field has no null to find") {
    const ElectrodeLayout lay = ElectrodeLayout::parallel_plate(50.0);
    GridRequest req;
    req.origin = {-30.0, -30.0, -20.0};
    req.spacing = {3.0, 3.0, 1.0};
    req.dims = {21, 21, 41};
    const FieldGrid grid = generate_rect_electrode_grid(lay, req);
    const NullReport null = find_rf_null(grid, "b.plate", 0.0, 50.0);
    CHECK_FALSE(null.found);
}

TEST_CASE("grid generation refuses regions touching the planes") {
    const ElectrodeLayout lay = ElectrodeLayout::peregrine_like(50.0);
    GridRequest req;
    req.origin = {-10.0, -10.0, -25.0};
    req.spacing = {1.0, 1.0, 1.0};
    req.dims = {21, 21, 26};
    CHECK_THROWS_AS(generate_rect_electrode_grid(lay, req), GeometryError);
}

TEST_CASE("layout validation and file round-trip") {
    ElectrodeLayout lay = ElectrodeLayout::peregrine_like(50.0);
    std::stringstream ss;
    lay.save(ss);
    const ElectrodeLayout back = ElectrodeLayout::load(ss);
    CHECK(back.electrodes.size() == lay.electrodes.size());
    CHECK(back.separation == lay.separation);
    CHECK(back.two_layer == lay.two_layer);

    ElectrodeLayout bad = lay;
    bad.electrodes.push_back({"dup", ElectrodeRole::control, {{-1000.0, -900.0, 41.0, 60.0}}});
    CHECK_THROWS_AS(bad.validate(), GeometryError);  // overlaps the rf rail
}

TEST_CASE("control solve hits its curvature and push targets") {
    const ElectrodeLayout lay = ElectrodeLayout::peregrine_like(50.0);
    const Vec3 null_pos{0.0, 0.0, -1.3};
    const double hxx = 3.4e-3, hyy = -1.1e-3, pz = 0.002;
    const ControlSolve sol =
        solve_control_voltages(lay, {"c0", "c1", "c2", "out"}, null_pos, hxx, hyy, pz);
    CHECK(sol.residual < 1e-9);
    CHECK(sol.grad_z == doctest::Approx(pz).epsilon(1e-6));

    // verify against a direct evaluation of the combined potential
    auto combined = [&](const Vec3& p) {
        double sum = 0.0;
        for (std::size_t i = 0; i < sol.electrodes.size(); ++i)
            for (const Electrode& e : lay.electrodes)
                if (e.name == sol.electrodes[i])
                    sum += sol.volts[i] * layout_potential(lay, e, false, p);
        return sum;
    };
    const double h = 0.05;
    const double measured_hxx =
        (combined({h, 0, -1.3}) - 2.0 * combined({0, 0, -1.3}) + combined({-h, 0, -1.3})) /
        (h * h);
    CHECK(measured_hxx == doctest::Approx(hxx).epsilon(1e-5));
}
