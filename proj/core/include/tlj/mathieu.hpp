#ifndef TLJ_MATHIEU_HPP
#define TLJ_MATHIEU_HPP

#include <complex>

#include "tlj/errors.hpp"

namespace tlj {

// One-dimensional drive equation  q'' + (U + 2 V cos 2t) q = 0.
//
// U is the static coefficient, V the dimensionless RF drive strength.
// Solutions are classified through the characteristic exponent w of the
// Floquet form q = e^{iwt} P(t), P having period pi: motion is bounded
// exactly when w is real.
struct MathieuParams {
    double U = 0.0;
    double V = 0.0;
};

struct StabilityResult {
    bool stable = false;
    std::complex<double> w;  // characteristic exponent (real part in [0,1])
    double hill_det = 0.0;   // truncated determinant value; NaN if pole fallback used
    double cos_arg = 0.0;    // cos(pi w) = 1 - hill_det * (1 - cos(pi sqrt(U)))
    bool used_floquet = false;
};

struct FloquetResult {
    double monodromy_trace = 0.0;
    bool stable = false;
};

inline constexpr int kHillDefaultOrder = 25;
inline constexpr double kPoleTol = 1e-4;        // band half-width on |U - r^2|
inline constexpr double kStableTol = 1e-9;      // slack on |cos_arg| <= 1
inline constexpr int kFloquetDefaultSteps = 2048;

// True when U sits within kPoleTol of an even-integer square (0, 4, 16, ...),
// where the determinant row coefficients blow up.
bool near_determinant_pole(double U, double tol = kPoleTol);

// Truncated banded determinant of the exponent-zero characteristic matrix:
// rows indexed by even r in [-2N, 2N], unit diagonal, off-diagonal pair
// V / (r^2 - U), evaluated by the three-term tridiagonal recurrence.
// Throws PoleProximity inside the pole bands and std::invalid_argument for
// N < 5. Converges to ~1e-10 by N = 25 over |U|, V <= 2 away from poles.
double hill_determinant(const MathieuParams& p, int N = kHillDefaultOrder);

// Stability verdict from cos(pi w) = 1 - Delta(0) (1 - cos(pi sqrt(U))),
// with the complex square root (for U < 0 the cosine continues to
// cosh(pi sqrt(-U))). Inside the determinant pole bands the verdict is
// delegated to the monodromy integration and hill_det is reported as NaN.
StabilityResult characteristic_exponent(const MathieuParams& p,
                                        int N = kHillDefaultOrder);

// Independent oracle: RK4 integration of two fundamental solutions across
// one drive period (pi), stability from |trace| <= 2 of the monodromy
// matrix. Deterministic for fixed step count.
FloquetResult floquet_stable(const MathieuParams& p,
                             int steps = kFloquetDefaultSteps);

}  // namespace tlj

#endif
