#ifndef TLJ_JUNCTION_HPP
#define TLJ_JUNCTION_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "tlj/boundary.hpp"
#include "tlj/mathieu.hpp"

namespace tlj {

// Transfer parameter triple: mu is the RF strength, beta the transverse
// static coefficient, alpha the axial one. The vertical coefficient is
// fixed by the source-free condition, gamma = -alpha - beta.
struct JunctionParams {
    double mu = 0.0;
    double beta = 0.0;
    double alpha = 0.0;

    double gamma() const { return -alpha - beta; }
};

// A single trap holding an ion at one point is stable when the three
// parameter pairs (alpha, 0), (beta, mu), (gamma, mu) are all stable and
// the axial coefficient is strictly positive.
struct SimpleStabilityReport {
    bool axial_ok = false;     // alpha > 0
    bool x_ok = false;         // (alpha, 0)
    bool y_ok = false;         // (beta, mu)
    bool z_ok = false;         // (gamma, mu)
    bool stable = false;
};

enum class FailingPair : std::uint8_t { path, static_pair };
enum class FailureMechanism : std::uint8_t { below_a0, above_a1b1, axial_unconfined };

struct TransferStabilityReport {
    bool stable = false;
    std::optional<double> first_failure_t;  // none iff stable
    std::optional<FailingPair> failing_pair;
    std::optional<FailureMechanism> mechanism;
};

SimpleStabilityReport simple_trap_stable(const JunctionParams& jp);

// Transfer verdict per the two pair families: the swept pair
// (alpha (1-t) + beta t, mu t) sampled at `samples` uniform t with local
// bisection refinement of the first sign change to t-resolution 1e-4, and
// the time-independent pair (gamma, mu). A failure on the sampled path is
// reported with its t and mechanism; a failure of the static pair alone is
// reported at t = 0. Verdicts use |mu| (stability is even in the drive).
TransferStabilityReport transfer_stable(const JunctionParams& jp, int samples = 256);

// Closed-form test for the swept pair dipping below a0: finds the V
// location m where the path slope (beta - alpha)/mu matches a0'(m) and
// compares heights there. True means banned. Throws DegenerateSlope when
// the slope target underflows (beta ~ alpha); callers fall back to the
// sampled path. Only the below-a0 escape is covered; band crossings above
// the principal region are invisible to this test.
bool banned_region_tangency(const JunctionParams& jp,
                            const BoundaryCurves& curves = BoundaryCurves::shared());

struct GridAxis {
    double lo = 0.0;
    double hi = 1.0;
    int cells = 16;

    // cell-center coordinate
    double center(int i) const { return lo + (i + 0.5) * (hi - lo) / cells; }
};

struct CellVerdict {
    bool simple_stable = false;
    bool transfer_stable = false;
};

// Dense verdict map over (mu, beta, alpha) cell centers. transfer_stable
// implies simple_stable cell-wise by construction of the conditions.
struct RegionMap3D {
    GridAxis mu, beta, alpha;
    std::vector<CellVerdict> cells;  // alpha fastest, then beta, then mu

    const CellVerdict& at(int imu, int ibeta, int ialpha) const {
        return cells[(static_cast<std::size_t>(imu) * beta.cells + ibeta) * alpha.cells + ialpha];
    }
};

RegionMap3D region_map(const GridAxis& mu, const GridAxis& beta, const GridAxis& alpha,
                       int path_samples = 128);

}  // namespace tlj

#endif
