#include "tlj/experiments.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace tlj {

TrapAssembly::TrapAssembly(const AssemblyOptions& opt)
    : TrapAssembly(
          [&opt] {
              ElectrodeLayout lay = ElectrodeLayout::peregrine_like(opt.separation_um);
              return generate_rect_electrode_grid(lay, opt.grid_request);
          }(),
          opt) {}

TrapAssembly::TrapAssembly(FieldGrid grid, const AssemblyOptions& opt)
    : opt_(opt),
      layout_(ElectrodeLayout::peregrine_like(opt.separation_um)),
      grid_(std::move(grid)),
      null_(find_rf_null(grid_, "b.rf", 0.0, opt.separation_um)) {
    if (!null_.found)
        throw GeometryError("TrapAssembly: generated grid has no RF null");
}

Vec3 TrapAssembly::top_null_m() const {
    // rotoreflected image of the bottom null
    const Vec3 b = bottom_null_m();
    return {-b.y, b.x, -b.z};
}

double TrapAssembly::omega() const { return 2.0 * std::numbers::pi * opt_.drive_frequency; }

double TrapAssembly::rf_volts_for(double mu) const {
    // curvature_yy is per um^2; convert to V/m^2 per volt
    return tlj::rf_volts_for_mu(mu, null_.curvature_yy * 1e12, opt_.mass, opt_.charge, omega());
}

std::vector<ElectrodeDrive> TrapAssembly::drives_for(const JunctionParams& jp) const {
    const double vrf = rf_volts_for(std::abs(jp.mu));
    std::vector<ElectrodeDrive> drives{
        {"b.rf", vrf, true, 0},
        {"t.rf", vrf, true, 1},
    };

    const bool any_control = jp.alpha != 0.0 || jp.beta != 0.0;
    if (any_control) {
        const double k = coefficient_scale(opt_.mass, opt_.charge, omega());  // V/m^2
        const double hxx = 2.0 * jp.alpha * k * 1e-12;  // V/um^2
        const double hyy = 2.0 * jp.beta * k * 1e-12;
        const double pz = opt_.control_push_per_alpha * jp.alpha;
        const ControlSolve sol = solve_control_voltages(layout_, {"c0", "c1", "c2", "out"},
                                                        null_.position, hxx, hyy, pz);
        for (std::size_t i = 0; i < sol.electrodes.size(); ++i) {
            drives.push_back({"b." + sol.electrodes[i], sol.volts[i], false, 0});
            drives.push_back({"t." + sol.electrodes[i], sol.volts[i], false, 1});
        }
    }
    return drives;
}

SuperposedField TrapAssembly::field_for(const JunctionParams& jp,
                                        std::function<double(double)> blend) const {
    return SuperposedField({&grid_}, drives_for(jp), std::move(blend), omega());
}

SimConfig TrapAssembly::default_config(double duration_s) const {
    SimConfig cfg;
    cfg.duration = duration_s;
    const Vec3 lo = grid_.interior_lo() * 1e-6, hi = grid_.interior_hi() * 1e-6;
    cfg.bounds = {std::min(std::abs(lo.x), hi.x), std::min(std::abs(lo.y), hi.y),
                  std::min(std::abs(lo.z), hi.z)};
    // stay a hair inside so the sampler never throws before the box check
    cfg.bounds = cfg.bounds * (1.0 - 1e-9);
    return cfg;
}

TrajectoryRecord TrapAssembly::run_transfer(const JunctionParams& jp,
                                            const TransferProfile& profile_s, const Vec3& v0,
                                            const SimConfig& cfg) const {
    const TransferProfile prof = profile_s;
    const SuperposedField field =
        field_for(jp, [prof](double t) { return prof.eval(t); });

    IonState ion;
    ion.charge = opt_.charge;
    ion.mass = opt_.mass;
    ion.position = bottom_null_m();
    ion.velocity = v0;
    return simulate(ion, grid_field_source(field), cfg, 2.0 * std::numbers::pi / omega(),
                    [prof](double t) { return prof.eval(t); });
}

TrajectoryRecord TrapAssembly::run_static(const JunctionParams& jp, double blend_value,
                                          const Vec3& v0, const SimConfig& cfg) const {
    const SuperposedField field = field_for(jp, [blend_value](double) { return blend_value; });
    IonState ion;
    ion.charge = opt_.charge;
    ion.mass = opt_.mass;
    ion.position = blend_value == 0.0 ? bottom_null_m()
                   : blend_value == 1.0 ? top_null_m()
                                        : Vec3{0.0, 0.0, 0.0};
    ion.velocity = v0;
    return simulate(ion, grid_field_source(field), cfg, 2.0 * std::numbers::pi / omega(),
                    [blend_value](double) { return blend_value; });
}

std::vector<TransferCase> reference_transfer_cases() {
    return {
        {"fig6a", {0.75, 0.0, 0.0}},
        {"fig6b", {0.75, 0.0, 0.2}},
        {"fig6c", {0.75, 0.0, 0.29}},
        {"fig6d", {0.75, -0.15, 0.29}},
    };
}

AlphaSweepResult alpha_sweep(const TrapAssembly& trap, double mu, double beta,
                             const std::vector<double>& alphas, const TransferProfile& profile_s,
                             const Vec3& v0, const SimConfig& cfg) {
    for (std::size_t i = 1; i < alphas.size(); ++i)
        if (!(alphas[i] > alphas[i - 1]) || !(alphas[0] > 0.0))
            throw std::invalid_argument("alpha_sweep: values must be positive ascending");

    AlphaSweepResult out;
    for (double a : alphas) {
        const TrajectoryRecord rec = trap.run_transfer({mu, beta, a}, profile_s, v0, cfg);
        out.points.push_back({a, rec.outcome});
        if (rec.outcome == Outcome::confined) out.last_confined = a;
    }
    return out;
}

AlphaSweepResult alpha_sweep_quadratic(const TransferExperiment& base,
                                       const std::vector<double>& alphas, const SimConfig& cfg) {
    for (std::size_t i = 1; i < alphas.size(); ++i)
        if (!(alphas[i] > alphas[i - 1]) || !(alphas[0] > 0.0))
            throw std::invalid_argument("alpha_sweep: values must be positive ascending");

    AlphaSweepResult out;
    for (double a : alphas) {
        TransferExperiment exp = base;
        exp.jp.alpha = a;
        const TrajectoryRecord rec = simulate_transfer(exp, cfg);
        out.points.push_back({a, rec.outcome});
        if (rec.outcome == Outcome::confined) out.last_confined = a;
    }
    return out;
}

}  // namespace tlj
