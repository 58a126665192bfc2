#include "tlj/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tlj {

namespace {

bool point_stable(double U, double V) {
    return characteristic_exponent({U, V}).stable;
}

// Bisect the stable/unstable transition inside [lo, hi]; lo and hi must
// already disagree. Returns the midpoint at 1e-6 resolution in U.
double bisect_transition(double lo, double hi, double V, bool lo_stable) {
    for (int i = 0; i < 60 && (hi - lo) > 1e-7; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (point_stable(mid, V) == lo_stable)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

BoundaryName boundary_name_from_string(const std::string& s) {
    if (s == "a0") return BoundaryName::a0;
    if (s == "a1") return BoundaryName::a1;
    if (s == "b1") return BoundaryName::b1;
    throw std::invalid_argument("unknown boundary curve name: " + s);
}

BoundaryCurves BoundaryCurves::tabulate(double v_max, int knots) {
    if (v_max <= 0.0 || knots < 16)
        throw std::invalid_argument("BoundaryCurves::tabulate: bad range or knot count");

    BoundaryCurves bc;
    bc.v_max_ = v_max;
    bc.dv_ = v_max / (knots - 1);
    bc.v_.resize(knots);
    bc.a0_.resize(knots);
    bc.a1_.resize(knots);
    bc.b1_.resize(knots);

    // V = 0 intercepts are exact.
    bc.v_[0] = 0.0;
    bc.a0_[0] = 0.0;
    bc.a1_[0] = 1.0;
    bc.b1_[0] = 1.0;

    double tongue_mid = 1.0;  // a point inside the unstable band between b1 and a1
    for (int k = 1; k < knots; ++k) {
        const double V = k * bc.dv_;
        bc.v_[k] = V;

        // a0: unstable below, stable above. Track from the previous knot.
        {
            double window = std::max(4.0 * bc.dv_, 0.02);
            double lo = bc.a0_[k - 1] - window;
            double hi = bc.a0_[k - 1] + window;
            for (int grow = 0; grow < 12 && point_stable(lo, V); ++grow) lo -= window, window *= 2.0;
            window = std::max(4.0 * bc.dv_, 0.02);
            for (int grow = 0; grow < 12 && !point_stable(hi, V); ++grow) hi += window, window *= 2.0;
            bc.a0_[k] = bisect_transition(lo, hi, V, /*lo_stable=*/false);
        }

        // b1/a1: both edges of the band emanating from (1, 0). The previous
        // midpoint stays inside the band when knots are dense, since the band
        // half-width grows like V while the edges drift by O(dv); rescan as a
        // fallback.
        {
            if (point_stable(tongue_mid, V)) {
                const double step = std::max(0.25 * V, 0.5 * bc.dv_);
                bool found = false;
                for (double off = 0.0; off <= 0.4 && !found; off += step) {
                    for (double sgn : {1.0, -1.0}) {
                        const double cand = tongue_mid + sgn * off;
                        if (!point_stable(cand, V)) {
                            tongue_mid = cand;
                            found = true;
                            break;
                        }
                    }
                }
                if (!found)
                    throw Error("BoundaryCurves::tabulate: lost the b1/a1 band at V = " +
                                std::to_string(V));
            }

            double window = std::max(4.0 * bc.dv_, 0.02);
            double lo = bc.b1_[k - 1] - window;
            for (int grow = 0; grow < 12 && !point_stable(lo, V); ++grow) lo -= window, window *= 2.0;
            bc.b1_[k] = bisect_transition(lo, tongue_mid, V, /*lo_stable=*/true);

            window = std::max(4.0 * bc.dv_, 0.02);
            double hi = bc.a1_[k - 1] + window;
            for (int grow = 0; grow < 12 && !point_stable(hi, V); ++grow) hi += window, window *= 2.0;
            bc.a1_[k] = bisect_transition(tongue_mid, hi, V, /*lo_stable=*/false);

            tongue_mid = 0.5 * (bc.b1_[k] + bc.a1_[k]);
        }
    }

    // a0 slope by central differences (one-sided at the ends).
    bc.a0_slope_.resize(knots);
    for (int k = 0; k < knots; ++k) {
        if (k == 0)
            bc.a0_slope_[k] = (bc.a0_[1] - bc.a0_[0]) / bc.dv_;
        else if (k == knots - 1)
            bc.a0_slope_[k] = (bc.a0_[k] - bc.a0_[k - 1]) / bc.dv_;
        else
            bc.a0_slope_[k] = (bc.a0_[k + 1] - bc.a0_[k - 1]) / (2.0 * bc.dv_);
    }
    return bc;
}

void BoundaryCurves::check_range(double V) const {
    if (!(V >= 0.0) || V > v_max_ + 1e-12)
        throw OutOfTabulation("boundary curve requested at V = " + std::to_string(V) +
                              " outside [0, " + std::to_string(v_max_) + "]");
}

double BoundaryCurves::interp(const std::vector<double>& y, double V) const {
    check_range(V);
    const double s = std::min(V / dv_, static_cast<double>(y.size() - 1));
    const int i = std::min(static_cast<int>(s), static_cast<int>(y.size()) - 2);
    const double f = s - i;
    return y[i] * (1.0 - f) + y[i + 1] * f;
}

double BoundaryCurves::a0(double V) const { return interp(a0_, V); }
double BoundaryCurves::a1(double V) const { return interp(a1_, V); }
double BoundaryCurves::b1(double V) const { return interp(b1_, V); }
double BoundaryCurves::a0_slope(double V) const { return interp(a0_slope_, V); }

double BoundaryCurves::eval(BoundaryName name, double V) const {
    switch (name) {
        case BoundaryName::a0: return a0(V);
        case BoundaryName::a1: return a1(V);
        case BoundaryName::b1: return b1(V);
    }
    throw std::invalid_argument("bad boundary name");
}

double BoundaryCurves::locate(BoundaryName name, double V) const {
    check_range(V);
    if (V == 0.0) return name == BoundaryName::a0 ? 0.0 : 1.0;

    const double seed = eval(name, V);
    // stable side above for a0 and a1, below for b1
    const bool stable_above = (name != BoundaryName::b1);
    double window = 2e-4;
    double lo = seed - window, hi = seed + window;
    for (int grow = 0; grow < 16 && point_stable(lo, V) != !stable_above; ++grow)
        lo -= window, window *= 2.0;
    window = 2e-4;
    for (int grow = 0; grow < 16 && point_stable(hi, V) != stable_above; ++grow)
        hi += window, window *= 2.0;
    return bisect_transition(lo, hi, V, /*lo_stable=*/!stable_above);
}

const BoundaryCurves& BoundaryCurves::shared() {
    static const BoundaryCurves bc = BoundaryCurves::tabulate();
    return bc;
}

}  // namespace tlj
