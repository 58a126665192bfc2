#ifndef TLJ_FLIGHT_HPP
#define TLJ_FLIGHT_HPP

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tlj/field_grid.hpp"
#include "tlj/potential.hpp"
#include "tlj/vec3.hpp"

namespace tlj {

// SI throughout: positions m, velocities m/s, time s, charge C, mass kg.
struct IonState {
    double charge = constants::elementary_charge;
    double mass = constants::yb171_mass;
    Vec3 position;
    Vec3 velocity;
    double time = 0.0;
};

// Gradient of the potential (V/m) at a position and time; throws OutOfDomain
// outside the field's region.
using FieldSource = std::function<Vec3(const Vec3&, double)>;

// Classical RK4 update of (position, velocity) under a = -(q/m) grad phi.
// Charge and mass ride along unchanged.
IonState rk4_step(const IonState& state, const FieldSource& grad_phi, double dt);

enum class Outcome { confined, lost };

struct TrajectoryRecord {
    std::vector<double> t;
    std::vector<Vec3> position;
    std::vector<Vec3> velocity;
    std::vector<double> blend;  // f(t) at the sample times
    Outcome outcome = Outcome::confined;
    int lost_axis = -1;     // 0, 1, 2 when lost
    double lost_time = 0.0;
    double dt = 0.0;        // integration step (s); samples are dt * stride apart
};

struct SimConfig {
    double dt_fraction = 1.0 / 256.0;  // integration step as a fraction of the RF period
    double duration = 0.0;             // s
    Vec3 bounds{95e-6, 95e-6, 22e-6};  // half-widths of the loss box, m
    int record_stride = 4;

    void validate() const;
};

// Integrates from `initial` for cfg.duration. The ion counts as lost when a
// coordinate leaves the loss box or the field source runs out of domain;
// the record then ends at that sample. rf_period sets the step size.
TrajectoryRecord simulate(const IonState& initial, const FieldSource& grad_phi,
                          const SimConfig& cfg, double rf_period,
                          const std::function<double(double)>& blend = nullptr);

// Transfer run in the idealized quadratic model. The vertical offset `s` of
// the model is the half-separation of the two RF nulls (not of the trap
// planes); the loss box still spans the full inter-plane region.
struct TransferExperiment {
    JunctionParams jp;
    double null_half_separation = 1.3e-6;  // m
    TransferProfile profile{ProfileKind::three_phase, 2.9e-6};  // T in s
    double drive_frequency = 31e6;  // Hz
    double charge = constants::elementary_charge;
    double mass = constants::yb171_mass;
    Vec3 v0{5.0, 5.0, 5.0};
    std::optional<Vec3> start;  // defaults to the bottom null (0, 0, -s)
};

// Potential-gradient source of the quadratic two-layer model in physical
// units. Coefficients are scaled by m Omega^2 / (8 q) so the model triple
// (mu, beta, alpha) maps onto its drive-equation parameters exactly.
FieldSource quadratic_transfer_source(const TransferExperiment& exp);

// Same model with the blend frozen at a fixed value (paused transfer).
FieldSource quadratic_static_source(const TransferExperiment& exp, double blend_value);

TrajectoryRecord simulate_transfer(const TransferExperiment& exp, const SimConfig& cfg);

// Grid-model source: SuperposedField sampled in um, converted to V/m.
FieldSource grid_field_source(const SuperposedField& field);

void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& rec);
TrajectoryRecord read_trajectory_csv(std::istream& is);

}  // namespace tlj

#endif
