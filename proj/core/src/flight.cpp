#include "tlj/flight.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace tlj {

IonState rk4_step(const IonState& state, const FieldSource& grad_phi, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be positive");
    const double qm = -state.charge / state.mass;

    const Vec3 p0 = state.position, v0 = state.velocity;
    const double t0 = state.time, th = t0 + 0.5 * dt, tf = t0 + dt;

    const Vec3 k1v = qm * grad_phi(p0, t0);
    const Vec3 k1p = v0;
    const Vec3 k2v = qm * grad_phi(p0 + 0.5 * dt * k1p, th);
    const Vec3 k2p = v0 + 0.5 * dt * k1v;
    const Vec3 k3v = qm * grad_phi(p0 + 0.5 * dt * k2p, th);
    const Vec3 k3p = v0 + 0.5 * dt * k2v;
    const Vec3 k4v = qm * grad_phi(p0 + dt * k3p, tf);
    const Vec3 k4p = v0 + dt * k3v;

    IonState out = state;
    out.position = p0 + (dt / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    out.velocity = v0 + (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    out.time = tf;
    return out;
}

void SimConfig::validate() const {
    if (!(dt_fraction > 0.0) || dt_fraction > 1.0 / 64.0)
        throw ConfigError("SimConfig: dt must be at most 1/64 of the RF period");
    if (!(duration > 0.0)) throw ConfigError("SimConfig: duration must be positive");
    if (!(bounds.x > 0.0 && bounds.y > 0.0 && bounds.z > 0.0))
        throw ConfigError("SimConfig: loss box must be nonempty");
    if (record_stride < 1) throw ConfigError("SimConfig: record stride must be >= 1");
}

namespace {

int worst_axis(const Vec3& p, const Vec3& bounds) {
    double worst = 0.0;
    int axis = 0;
    for (int a = 0; a < 3; ++a) {
        const double r = std::abs(p[a]) / bounds[a];
        if (r > worst) worst = r, axis = a;
    }
    return axis;
}

}  // namespace

TrajectoryRecord simulate(const IonState& initial, const FieldSource& grad_phi,
                          const SimConfig& cfg, double rf_period,
                          const std::function<double(double)>& blend) {
    cfg.validate();
    if (!(rf_period > 0.0)) throw std::invalid_argument("simulate: rf_period must be positive");

    const double dt = rf_period * cfg.dt_fraction;
    const long steps = static_cast<long>(std::ceil(cfg.duration / dt));

    TrajectoryRecord rec;
    rec.dt = dt;
    const std::size_t expect = static_cast<std::size_t>(steps / cfg.record_stride + 2);
    rec.t.reserve(expect);
    rec.position.reserve(expect);
    rec.velocity.reserve(expect);
    rec.blend.reserve(expect);

    auto record = [&](const IonState& s) {
        rec.t.push_back(s.time);
        rec.position.push_back(s.position);
        rec.velocity.push_back(s.velocity);
        rec.blend.push_back(blend ? blend(s.time) : 0.0);
    };

    IonState s = initial;
    record(s);
    for (long i = 0; i < steps; ++i) {
        bool domain_lost = false;
        try {
            s = rk4_step(s, grad_phi, dt);
        } catch (const OutOfDomain&) {
            domain_lost = true;
        }
        const bool out_of_box = std::abs(s.position.x) > cfg.bounds.x ||
                                std::abs(s.position.y) > cfg.bounds.y ||
                                std::abs(s.position.z) > cfg.bounds.z;
        if (domain_lost || out_of_box) {
            rec.outcome = Outcome::lost;
            rec.lost_axis = worst_axis(s.position, cfg.bounds);
            rec.lost_time = s.time;
            record(s);
            return rec;
        }
        if ((i + 1) % cfg.record_stride == 0) record(s);
    }
    if (rec.t.back() != s.time) record(s);
    return rec;
}

FieldSource quadratic_transfer_source(const TransferExperiment& exp) {
    const double omega = 2.0 * std::numbers::pi * exp.drive_frequency;
    const double k = coefficient_scale(exp.mass, exp.charge, omega);
    const TwoLayerGeometry geom(exp.null_half_separation);
    // profile and drive share the cos(2t) clock of the model equations
    TransferProfile prof = exp.profile;
    prof.T = exp.profile.T * omega / 2.0;
    const JunctionParams jp = exp.jp;
    return [k, geom, jp, prof, omega](const Vec3& p, double tau) {
        return k * total_gradient(geom, jp, prof, p, 0.5 * omega * tau);
    };
}

FieldSource quadratic_static_source(const TransferExperiment& exp, double blend_value) {
    const double omega = 2.0 * std::numbers::pi * exp.drive_frequency;
    const double k = coefficient_scale(exp.mass, exp.charge, omega);
    const TwoLayerGeometry geom(exp.null_half_separation);
    const JunctionParams jp = exp.jp;
    return [k, geom, jp, omega, blend_value](const Vec3& p, double tau) {
        return k * blended_gradient(geom, jp, blend_value, p, 0.5 * omega * tau);
    };
}

TrajectoryRecord simulate_transfer(const TransferExperiment& exp, const SimConfig& cfg) {
    const double omega = 2.0 * std::numbers::pi * exp.drive_frequency;
    IonState ion;
    ion.charge = exp.charge;
    ion.mass = exp.mass;
    ion.position = exp.start.value_or(Vec3{0.0, 0.0, -exp.null_half_separation});
    ion.velocity = exp.v0;
    const TransferProfile prof = exp.profile;
    return simulate(ion, quadratic_transfer_source(exp), cfg, 2.0 * std::numbers::pi / omega,
                    [prof](double t) { return prof.eval(t); });
}

FieldSource grid_field_source(const SuperposedField& field) {
    return [&field](const Vec3& p, double t) {
        // grid lengths are um; gradients come back in V/um
        const SampledField s = field.sample({p.x * 1e6, p.y * 1e6, p.z * 1e6}, t);
        return s.gradient * 1e6;
    };
}

void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& rec) {
    os << "# tlj-trajectory 1\n";
    os << "time,x,y,z,vx,vy,vz,f\n";
    char buf[512];
    for (std::size_t i = 0; i < rec.t.size(); ++i) {
        std::snprintf(buf, sizeof buf,
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", rec.t[i],
                      rec.position[i].x, rec.position[i].y, rec.position[i].z,
                      rec.velocity[i].x, rec.velocity[i].y, rec.velocity[i].z, rec.blend[i]);
        os << buf;
    }
    if (rec.outcome == Outcome::confined) {
        os << "# outcome: confined\n";
    } else {
        os << "# outcome: lost axis=" << "xyz"[rec.lost_axis] << " t=" << rec.lost_time << "\n";
    }
}

TrajectoryRecord read_trajectory_csv(std::istream& is) {
    TrajectoryRecord rec;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.find("outcome: lost") != std::string::npos) {
                rec.outcome = Outcome::lost;
                const auto ax = line.find("axis=");
                if (ax != std::string::npos)
                    rec.lost_axis = line[ax + 5] == 'x' ? 0 : (line[ax + 5] == 'y' ? 1 : 2);
                const auto tp = line.find("t=");
                if (tp != std::string::npos) rec.lost_time = std::stod(line.substr(tp + 2));
            }
            continue;
        }
        if (line.rfind("time,", 0) == 0) continue;
        double v[8];
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2],
                        &v[3], &v[4], &v[5], &v[6], &v[7]) != 8)
            throw Error("read_trajectory_csv: malformed row: " + line);
        rec.t.push_back(v[0]);
        rec.position.push_back({v[1], v[2], v[3]});
        rec.velocity.push_back({v[4], v[5], v[6]});
        rec.blend.push_back(v[7]);
    }
    if (rec.t.size() >= 2) rec.dt = rec.t[1] - rec.t[0];
    return rec;
}

}  // namespace tlj
