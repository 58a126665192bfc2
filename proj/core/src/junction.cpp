#include "tlj/junction.hpp"

#include <cmath>
#include <stdexcept>

#include "tlj/parallel.hpp"

namespace tlj {

namespace {

bool point_stable(double U, double V) {
    return characteristic_exponent({U, V}).stable;
}

FailureMechanism classify_escape(double U, double V, const BoundaryCurves& curves) {
    const double Vc = std::min(V, curves.v_max());
    return U < curves.a0(Vc) ? FailureMechanism::below_a0 : FailureMechanism::above_a1b1;
}

}  // namespace

SimpleStabilityReport simple_trap_stable(const JunctionParams& jp) {
    SimpleStabilityReport r;
    const double mu = std::abs(jp.mu);
    r.axial_ok = jp.alpha > 0.0;
    r.x_ok = point_stable(jp.alpha, 0.0);
    r.y_ok = point_stable(jp.beta, mu);
    r.z_ok = point_stable(jp.gamma(), mu);
    r.stable = r.axial_ok && r.x_ok && r.y_ok && r.z_ok;
    return r;
}

TransferStabilityReport transfer_stable(const JunctionParams& jp, int samples) {
    if (samples < 64) throw std::invalid_argument("transfer_stable: samples must be >= 64");

    TransferStabilityReport out;
    const double mu = std::abs(jp.mu);
    const auto& curves = BoundaryCurves::shared();

    if (jp.alpha <= 0.0) {
        out.first_failure_t = 0.0;
        out.failing_pair = FailingPair::path;
        out.mechanism = FailureMechanism::axial_unconfined;
        return out;
    }

    auto path_U = [&](double t) { return jp.alpha * (1.0 - t) + jp.beta * t; };
    auto path_ok = [&](double t) { return point_stable(path_U(t), mu * t); };

    bool prev_ok = path_ok(0.0);
    if (!prev_ok) {
        out.first_failure_t = 0.0;
        out.failing_pair = FailingPair::path;
        out.mechanism = classify_escape(path_U(0.0), 0.0, curves);
        return out;
    }
    for (int i = 1; i < samples; ++i) {
        const double t = static_cast<double>(i) / (samples - 1);
        if (!path_ok(t)) {
            // refine the crossing inside the last sample interval
            double lo = static_cast<double>(i - 1) / (samples - 1);
            double hi = t;
            while (hi - lo > 1e-4) {
                const double mid = 0.5 * (lo + hi);
                if (path_ok(mid))
                    lo = mid;
                else
                    hi = mid;
            }
            out.first_failure_t = hi;
            out.failing_pair = FailingPair::path;
            out.mechanism = classify_escape(path_U(hi), mu * hi, curves);
            return out;
        }
    }

    if (!point_stable(jp.gamma(), mu)) {
        out.first_failure_t = 0.0;  // the static pair applies at every t
        out.failing_pair = FailingPair::static_pair;
        out.mechanism = classify_escape(jp.gamma(), mu, curves);
        return out;
    }

    out.stable = true;
    return out;
}

bool banned_region_tangency(const JunctionParams& jp, const BoundaryCurves& curves) {
    if (!(std::abs(jp.mu) > 0.0)) throw std::invalid_argument("banned_region_tangency: mu must be nonzero");
    const double mu = std::abs(jp.mu);
    const double slope = (jp.beta - jp.alpha) / mu;  // dU/dV along the swept pair

    if (std::abs(slope) < 1e-12)
        throw DegenerateSlope("banned_region_tangency: path slope underflows, a0' has no candidate");

    // Paths rising in U move away from a0; the closest approach is at V = 0
    // where the gap is alpha.
    if (slope >= 0.0) return jp.alpha <= 0.0;

    // a0' decreases monotonically from 0; find m with a0'(m) = slope by
    // bisection, clamping to the path extent [0, mu].
    const double v_hi = std::min(mu, curves.v_max());
    double m;
    if (slope <= curves.a0_slope(curves.v_max())) {
        // steeper than any tabulated slope: closest approach beyond range,
        // gap is smallest at the path end
        m = v_hi;
    } else {
        double lo = 0.0, hi = curves.v_max();
        for (int i = 0; i < 50; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (curves.a0_slope(mid) > slope)
                lo = mid;
            else
                hi = mid;
        }
        m = std::min(0.5 * (lo + hi), v_hi);
    }
    return curves.a0(m) > slope * m + jp.alpha;
}

RegionMap3D region_map(const GridAxis& mu, const GridAxis& beta, const GridAxis& alpha,
                       int path_samples) {
    if (mu.cells < 8 || beta.cells < 8 || alpha.cells < 8)
        throw std::invalid_argument("region_map: need at least 8 cells per axis");
    for (const auto* ax : {&mu, &beta, &alpha})
        if (!std::isfinite(ax->lo) || !std::isfinite(ax->hi) || !(ax->hi > ax->lo))
            throw std::invalid_argument("region_map: bad axis range");

    // touch the shared tabulation before going parallel
    (void)BoundaryCurves::shared();

    RegionMap3D map;
    map.mu = mu;
    map.beta = beta;
    map.alpha = alpha;
    map.cells.resize(static_cast<std::size_t>(mu.cells) * beta.cells * alpha.cells);

    parallel_for(map.cells.size(), [&](std::size_t idx) {
        const int ia = static_cast<int>(idx % alpha.cells);
        const int ib = static_cast<int>((idx / alpha.cells) % beta.cells);
        const int im = static_cast<int>(idx / (static_cast<std::size_t>(alpha.cells) * beta.cells));
        const JunctionParams jp{mu.center(im), beta.center(ib), alpha.center(ia)};
        CellVerdict v;
        v.simple_stable = simple_trap_stable(jp).stable;
        v.transfer_stable = v.simple_stable && transfer_stable(jp, path_samples).stable;
        map.cells[idx] = v;
    });
    return map;
}

}  // namespace tlj
