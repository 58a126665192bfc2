#ifndef TLJ_EXPERIMENTS_HPP
#define TLJ_EXPERIMENTS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tlj/electrode_model.hpp"
#include "tlj/flight.hpp"

namespace tlj {

struct AssemblyOptions {
    double separation_um = 50.0;
    GridRequest grid_request;
    double drive_frequency = 31e6;  // Hz
    double charge = constants::elementary_charge;
    double mass = constants::yb171_mass;
    // Residual vertical control field left at the null per unit alpha
    // (V/um). Models the small control-field deviation of a real electrode
    // stack; it is what pushes the ion off the RF null as alpha grows.
    double control_push_per_alpha = 0.003;
};

// Generated two-layer trap: field grid, RF null bookkeeping, voltage
// calibration and control solutions for transfer experiments.
class TrapAssembly {
  public:
    explicit TrapAssembly(const AssemblyOptions& opt = {});
    TrapAssembly(FieldGrid grid, const AssemblyOptions& opt);

    const AssemblyOptions& options() const { return opt_; }
    const FieldGrid& grid() const { return grid_; }
    const ElectrodeLayout& layout() const { return layout_; }
    const NullReport& bottom_null() const { return null_; }
    Vec3 bottom_null_m() const { return null_.position * 1e-6; }
    Vec3 top_null_m() const;
    double omega() const;

    // RF amplitude realizing the requested drive strength for this geometry.
    double rf_volts_for(double mu) const;

    // Per-electrode drives for a transfer at the given parameters: RF pair
    // plus the control solution targeting the quadratic coefficients at the
    // bottom null, mirrored onto the top layer.
    std::vector<ElectrodeDrive> drives_for(const JunctionParams& jp) const;

    SuperposedField field_for(const JunctionParams& jp,
                              std::function<double(double)> blend) const;

    // Loss box clamped to the interpolable grid interior, in meters.
    SimConfig default_config(double duration_s) const;

    TrajectoryRecord run_transfer(const JunctionParams& jp, const TransferProfile& profile_s,
                                  const Vec3& v0, const SimConfig& cfg) const;

    // Static hold at fixed blend value (f = 0 keeps the bottom trap only).
    TrajectoryRecord run_static(const JunctionParams& jp, double blend_value,
                                const Vec3& v0, const SimConfig& cfg) const;

  private:
    AssemblyOptions opt_;
    ElectrodeLayout layout_;
    FieldGrid grid_;
    NullReport null_;
};

// Fig-6-style case labels used by the CLI presets and the acceptance runs.
struct TransferCase {
    std::string name;
    JunctionParams jp;
};

// mu = 0.75, (alpha, beta) = A (0,0), B (0.2,0), C (0.29,0), D (0.29,-0.15)
std::vector<TransferCase> reference_transfer_cases();

struct AlphaSweepPoint {
    double alpha = 0.0;
    Outcome outcome = Outcome::confined;
};

struct AlphaSweepResult {
    std::vector<AlphaSweepPoint> points;
    std::optional<double> last_confined;
};

// Runs the transfer per alpha (ascending) with the remaining parameters
// fixed, against the grid model.
AlphaSweepResult alpha_sweep(const TrapAssembly& trap, double mu, double beta,
                             const std::vector<double>& alphas, const TransferProfile& profile_s,
                             const Vec3& v0, const SimConfig& cfg);

// Same sweep in the quadratic model.
AlphaSweepResult alpha_sweep_quadratic(const TransferExperiment& base,
                                       const std::vector<double>& alphas, const SimConfig& cfg);

}  // namespace tlj

#endif
