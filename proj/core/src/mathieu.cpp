#include "tlj/mathieu.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace tlj {

namespace {
constexpr double kPi = std::numbers::pi;
}

bool near_determinant_pole(double U, double tol) {
    if (std::abs(U) < tol) return true;  // r = 0
    if (U < 0.0) return false;
    const long k = std::lround(std::sqrt(U) / 2.0);
    for (long r = std::max(1L, k - 1); r <= k + 1; ++r) {
        const double even = 2.0 * static_cast<double>(r);
        if (std::abs(U - even * even) < tol) return true;
    }
    return false;
}

double hill_determinant(const MathieuParams& p, int N) {
    if (N < 5) throw std::invalid_argument("hill_determinant: truncation order must be >= 5");
    if (!std::isfinite(p.U) || !std::isfinite(p.V))
        throw std::invalid_argument("hill_determinant: non-finite parameters");
    if (near_determinant_pole(p.U))
        throw PoleProximity("hill_determinant: U within pole tolerance of an even-integer square");

    // Tridiagonal determinant by the usual recurrence
    //   D_k = D_{k-1} - z_k z_{k-1} D_{k-2},
    // rows ordered r = -2N, ..., 0, ..., 2N with z_r = V / (r^2 - U).
    auto zeta = [&](long k) {
        const double r = static_cast<double>(2 * (k - N));
        return p.V / (r * r - p.U);
    };
    double dm2 = 1.0;  // empty determinant
    double dm1 = 1.0;  // first 1x1 block
    double zprev = zeta(0);
    for (long k = 1; k <= 2 * N; ++k) {
        const double zk = zeta(k);
        const double dk = dm1 - zk * zprev * dm2;
        dm2 = dm1;
        dm1 = dk;
        zprev = zk;
    }
    return dm1;
}

StabilityResult characteristic_exponent(const MathieuParams& p, int N) {
    StabilityResult out;
    if (near_determinant_pole(p.U)) {
        const FloquetResult fl = floquet_stable(p);
        out.used_floquet = true;
        out.hill_det = std::numeric_limits<double>::quiet_NaN();
        out.cos_arg = fl.monodromy_trace / 2.0;  // trace = 2 cos(pi w)
        out.stable = fl.stable;
        out.w = std::acos(std::complex<double>(out.cos_arg, 0.0)) / kPi;
        return out;
    }

    const double det = hill_determinant(p, N);
    // cos(pi sqrt(U)) under the principal complex square root: plain cosine
    // for U >= 0, cosh(pi sqrt(-U)) for U < 0.
    const std::complex<double> sqrtU = std::sqrt(std::complex<double>(p.U, 0.0));
    const double cospsu = std::cos(kPi * sqrtU).real();
    out.hill_det = det;
    out.cos_arg = 1.0 - det * (1.0 - cospsu);
    out.stable = std::abs(out.cos_arg) <= 1.0 + kStableTol;
    out.w = std::acos(std::complex<double>(out.cos_arg, 0.0)) / kPi;
    if (out.stable) out.w = std::complex<double>(out.w.real(), 0.0);
    return out;
}

FloquetResult floquet_stable(const MathieuParams& p, int steps) {
    if (steps < 64) throw std::invalid_argument("floquet_stable: steps must be >= 64");

    const double h = kPi / steps;
    // two fundamental solutions (q, q') = (1,0) and (0,1)
    double q1 = 1.0, p1 = 0.0;
    double q2 = 0.0, p2 = 1.0;
    auto acc = [&](double t, double q) { return -(p.U + 2.0 * p.V * std::cos(2.0 * t)) * q; };
    double t = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double th = t + 0.5 * h;
        const double tf = t + h;

        const double k1q1 = p1, k1p1 = acc(t, q1);
        const double k1q2 = p2, k1p2 = acc(t, q2);

        const double k2q1 = p1 + 0.5 * h * k1p1, k2p1 = acc(th, q1 + 0.5 * h * k1q1);
        const double k2q2 = p2 + 0.5 * h * k1p2, k2p2 = acc(th, q2 + 0.5 * h * k1q2);

        const double k3q1 = p1 + 0.5 * h * k2p1, k3p1 = acc(th, q1 + 0.5 * h * k2q1);
        const double k3q2 = p2 + 0.5 * h * k2p2, k3p2 = acc(th, q2 + 0.5 * h * k2q2);

        const double k4q1 = p1 + h * k3p1, k4p1 = acc(tf, q1 + h * k3q1);
        const double k4q2 = p2 + h * k3p2, k4p2 = acc(tf, q2 + h * k3q2);

        q1 += (h / 6.0) * (k1q1 + 2.0 * k2q1 + 2.0 * k3q1 + k4q1);
        p1 += (h / 6.0) * (k1p1 + 2.0 * k2p1 + 2.0 * k3p1 + k4p1);
        q2 += (h / 6.0) * (k1q2 + 2.0 * k2q2 + 2.0 * k3q2 + k4q2);
        p2 += (h / 6.0) * (k1p2 + 2.0 * k2p2 + 2.0 * k3p2 + k4p2);
        t = tf;
    }
    FloquetResult out;
    out.monodromy_trace = q1 + p2;
    out.stable = std::abs(out.monodromy_trace) <= 2.0 + kStableTol;
    return out;
}

}  // namespace tlj
