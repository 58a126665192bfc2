#ifndef TLJ_POTENTIAL_HPP
#define TLJ_POTENTIAL_HPP

#include <string>

#include "tlj/errors.hpp"
#include "tlj/junction.hpp"
#include "tlj/vec3.hpp"

namespace tlj {

// Quadratic form a x + b y + c Z + d xy + e yZ + f Zx
//              + alpha x^2 + beta y^2 + gamma Z^2
// with the source-free constraint alpha + beta + gamma = 0 enforced at
// construction. The idealized junction model zeroes all linear and cross
// terms; they are carried so synthetic fields can be built in tests.
struct QuadraticCoefficients {
    double a = 0.0, b = 0.0, c = 0.0;
    double d = 0.0, e = 0.0, f = 0.0;
    double alpha = 0.0, beta = 0.0, gamma = 0.0;

    static QuadraticCoefficients diagonal(double alpha, double beta);
    static QuadraticCoefficients make(double a, double b, double c, double d, double e,
                                      double f, double alpha, double beta, double gamma);

    double value(const Vec3& p) const;
    Vec3 gradient(const Vec3& p) const;
};

// Two trap planes at z = -s and z = +s; the top trap is the bottom trap
// mapped by the rotoreflection (x, y, z) -> (y, -x, s - z).
struct TwoLayerGeometry {
    double s = 0.0;  // half separation, um

    explicit TwoLayerGeometry(double half_sep);
};

enum class ProfileKind { heaviside, linear, three_phase, smoothstep };

ProfileKind profile_kind_from_string(const std::string& s);
std::string to_string(ProfileKind k);

// Voltage blend f(t): 0 at t = 0, 1 at t = T, monotone non-decreasing.
// three_phase holds 0 until T/3, ramps linearly to 1 at 2T/3, then holds.
// Evaluation clamps t outside [0, T].
struct TransferProfile {
    ProfileKind kind = ProfileKind::three_phase;
    double T = 1.0;

    double eval(double t) const;
};

// Quadratic control potential alpha x^2 + beta y^2 + gamma Z^2 about one
// trap's null (Z is the local vertical offset).
double control_potential(const QuadraticCoefficients& q, const Vec3& p);
Vec3 control_gradient(const QuadraticCoefficients& q, const Vec3& p);

// RF part cos(2t) * 2 mu (Z^2 - y^2) of a single linear trap.
double rf_potential(double mu, const Vec3& p, double t);
Vec3 rf_gradient(double mu, const Vec3& p, double t);

// Blended two-layer potential (1 - f) phi0 + f phi1 with the bottom null
// at z = -s and the rotoreflected top null at z = +s, both RF terms in
// phase. Time t is in drive units (period pi).
double total_potential(const TwoLayerGeometry& g, const JunctionParams& jp,
                       const TransferProfile& prof, const Vec3& p, double t);
Vec3 total_gradient(const TwoLayerGeometry& g, const JunctionParams& jp,
                    const TransferProfile& prof, const Vec3& p, double t);

// Same forms with an explicit blend value instead of a profile.
double blended_potential(const TwoLayerGeometry& g, const JunctionParams& jp, double f,
                         const Vec3& p, double t);
Vec3 blended_gradient(const TwoLayerGeometry& g, const JunctionParams& jp, double f,
                      const Vec3& p, double t);

// Drive hardware description. mu may be supplied directly or derived from
// the RF curvature of a field model.
struct PhysicalTrapSpec {
    double drive_frequency = 0.0;  // Hz, Omega / 2 pi
    double rf_amplitude = 0.0;     // V
    double ion_mass = 0.0;         // kg
    double ion_charge = 0.0;       // C
    double separation = 0.0;       // m, between trap planes
    double mu = 0.0;
};

struct DimensionlessScales {
    double mu = 0.0;
    double time_scale = 0.0;       // seconds per drive-equation time unit (= 2 / Omega)
    double length_scale = 1e-6;    // meters per model length unit
    double secular_estimate = 0.0; // rad/s, small-mu radial estimate mu Omega / (2 sqrt 2)
};

// Maps the drive to the dimensionless convention: physical time tau relates
// to drive-equation time t by tau = 2 t / Omega, so the drive term cos(2t)
// is cos(Omega tau). mu doubles as the RF drive strength V of the radial
// equations; the quoted amplitude is the RMS-scaled one and no further
// sqrt(2) enters.
DimensionlessScales physical_to_dimensionless(const PhysicalTrapSpec& spec);

// mu produced by an RF electrode whose unit-voltage potential has transverse
// curvature d2phi/dy2 = curv (V/m^2 per volt) at the null.
double mu_from_rf_drive(double rf_volts, double curv_per_volt, double ion_mass,
                        double ion_charge, double omega);
double rf_volts_for_mu(double mu, double curv_per_volt, double ion_mass,
                       double ion_charge, double omega);

// Quadratic-coefficient scale: a model coefficient u maps to a physical
// potential curvature 2 u k with k = m Omega^2 / (8 q) in V/m^2.
double coefficient_scale(double ion_mass, double ion_charge, double omega);

namespace constants {
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg
inline constexpr double yb171_mass = 171.0 * atomic_mass_unit;
}  // namespace constants

}  // namespace tlj

#endif
