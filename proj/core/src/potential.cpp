#include "tlj/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tlj {

QuadraticCoefficients QuadraticCoefficients::diagonal(double alpha, double beta) {
    return make(0, 0, 0, 0, 0, 0, alpha, beta, -alpha - beta);
}

QuadraticCoefficients QuadraticCoefficients::make(double a, double b, double c, double d,
                                                  double e, double f, double alpha,
                                                  double beta, double gamma) {
    const double scale = std::max({std::abs(alpha), std::abs(beta), std::abs(gamma), 1.0});
    if (std::abs(alpha + beta + gamma) > 1e-12 * scale)
        throw std::invalid_argument("QuadraticCoefficients: alpha + beta + gamma must vanish");
    QuadraticCoefficients q;
    q.a = a; q.b = b; q.c = c;
    q.d = d; q.e = e; q.f = f;
    q.alpha = alpha; q.beta = beta; q.gamma = gamma;
    return q;
}

double QuadraticCoefficients::value(const Vec3& p) const {
    return a * p.x + b * p.y + c * p.z + d * p.x * p.y + e * p.y * p.z + f * p.z * p.x +
           alpha * p.x * p.x + beta * p.y * p.y + gamma * p.z * p.z;
}

Vec3 QuadraticCoefficients::gradient(const Vec3& p) const {
    return {a + d * p.y + f * p.z + 2.0 * alpha * p.x,
            b + d * p.x + e * p.z + 2.0 * beta * p.y,
            c + e * p.y + f * p.x + 2.0 * gamma * p.z};
}

TwoLayerGeometry::TwoLayerGeometry(double half_sep) : s(half_sep) {
    if (!(half_sep > 0.0)) throw std::invalid_argument("TwoLayerGeometry: s must be positive");
}

ProfileKind profile_kind_from_string(const std::string& s) {
    if (s == "heaviside") return ProfileKind::heaviside;
    if (s == "linear") return ProfileKind::linear;
    if (s == "three_phase") return ProfileKind::three_phase;
    if (s == "smoothstep") return ProfileKind::smoothstep;
    throw std::invalid_argument("unknown transfer profile kind: " + s);
}

std::string to_string(ProfileKind k) {
    switch (k) {
        case ProfileKind::heaviside: return "heaviside";
        case ProfileKind::linear: return "linear";
        case ProfileKind::three_phase: return "three_phase";
        case ProfileKind::smoothstep: return "smoothstep";
    }
    return "?";
}

double TransferProfile::eval(double t) const {
    if (!(T > 0.0)) throw std::invalid_argument("TransferProfile: duration must be positive");
    const double u = std::clamp(t / T, 0.0, 1.0);
    switch (kind) {
        case ProfileKind::heaviside:
            return u < 0.5 ? 0.0 : 1.0;
        case ProfileKind::linear:
            return u;
        case ProfileKind::three_phase: {
            if (u <= 1.0 / 3.0) return 0.0;
            if (u >= 2.0 / 3.0) return 1.0;
            return 3.0 * u - 1.0;
        }
        case ProfileKind::smoothstep:
            return u * u * (3.0 - 2.0 * u);
    }
    return 0.0;
}

double control_potential(const QuadraticCoefficients& q, const Vec3& p) {
    return q.value(p);
}

Vec3 control_gradient(const QuadraticCoefficients& q, const Vec3& p) {
    return q.gradient(p);
}

double rf_potential(double mu, const Vec3& p, double t) {
    return std::cos(2.0 * t) * 2.0 * mu * (p.z * p.z - p.y * p.y);
}

Vec3 rf_gradient(double mu, const Vec3& p, double t) {
    const double c = std::cos(2.0 * t) * 4.0 * mu;
    return {0.0, -c * p.y, c * p.z};
}

namespace {

struct BlendTerms {
    double f;      // profile value
    double w0, w1; // layer weights (1 - f), f
    double zb, zt; // vertical offsets z + s and s - z
};

BlendTerms blend(const TwoLayerGeometry& g, const TransferProfile& prof, const Vec3& p,
                 double t) {
    BlendTerms b;
    b.f = prof.eval(t);
    b.w0 = 1.0 - b.f;
    b.w1 = b.f;
    b.zb = p.z + g.s;
    b.zt = g.s - p.z;
    return b;
}

}  // namespace

double total_potential(const TwoLayerGeometry& g, const JunctionParams& jp,
                       const TransferProfile& prof, const Vec3& p, double t) {
    const BlendTerms b = blend(g, prof, p, t);
    const double gamma = jp.gamma();
    const double ctrl = (b.w0 * jp.alpha + b.w1 * jp.beta) * p.x * p.x +
                        (b.w0 * jp.beta + b.w1 * jp.alpha) * p.y * p.y +
                        b.w0 * gamma * b.zb * b.zb + b.w1 * gamma * b.zt * b.zt;
    const double rf = std::cos(2.0 * t) *
                      (-b.w1 * 2.0 * jp.mu * p.x * p.x - b.w0 * 2.0 * jp.mu * p.y * p.y +
                       b.w0 * 2.0 * jp.mu * b.zb * b.zb + b.w1 * 2.0 * jp.mu * b.zt * b.zt);
    return ctrl + rf;
}

Vec3 total_gradient(const TwoLayerGeometry& g, const JunctionParams& jp,
                    const TransferProfile& prof, const Vec3& p, double t) {
    const BlendTerms b = blend(g, prof, p, t);
    const double gamma = jp.gamma();
    const double c2t = std::cos(2.0 * t);
    Vec3 grad;
    grad.x = 2.0 * (b.w0 * jp.alpha + b.w1 * jp.beta) * p.x - c2t * 4.0 * b.w1 * jp.mu * p.x;
    grad.y = 2.0 * (b.w0 * jp.beta + b.w1 * jp.alpha) * p.y - c2t * 4.0 * b.w0 * jp.mu * p.y;
    // d/dz of zb^2 is +2 zb, of zt^2 is -2 zt
    grad.z = 2.0 * b.w0 * gamma * b.zb - 2.0 * b.w1 * gamma * b.zt +
             c2t * (4.0 * b.w0 * jp.mu * b.zb - 4.0 * b.w1 * jp.mu * b.zt);
    return grad;
}

DimensionlessScales physical_to_dimensionless(const PhysicalTrapSpec& spec) {
    if (!(spec.drive_frequency > 0.0))
        throw std::invalid_argument("physical_to_dimensionless: drive frequency must be positive");
    const double omega = 2.0 * std::numbers::pi * spec.drive_frequency;
    DimensionlessScales s;
    s.mu = spec.mu;
    s.time_scale = 2.0 / omega;
    s.length_scale = 1e-6;
    s.secular_estimate = spec.mu * omega / (2.0 * std::numbers::sqrt2);
    return s;
}

double mu_from_rf_drive(double rf_volts, double curv_per_volt, double ion_mass,
                        double ion_charge, double omega) {
    return 2.0 * ion_charge * rf_volts * std::abs(curv_per_volt) / (ion_mass * omega * omega);
}

double rf_volts_for_mu(double mu, double curv_per_volt, double ion_mass, double ion_charge,
                       double omega) {
    return mu * ion_mass * omega * omega / (2.0 * ion_charge * std::abs(curv_per_volt));
}

double coefficient_scale(double ion_mass, double ion_charge, double omega) {
    return ion_mass * omega * omega / (8.0 * ion_charge);
}

}  // namespace tlj
