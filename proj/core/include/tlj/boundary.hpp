#ifndef TLJ_BOUNDARY_HPP
#define TLJ_BOUNDARY_HPP

#include <memory>
#include <string>
#include <vector>

#include "tlj/errors.hpp"
#include "tlj/mathieu.hpp"

namespace tlj {

enum class BoundaryName { a0, a1, b1 };

BoundaryName boundary_name_from_string(const std::string& s);

// Tabulated stability-transition curves U(V) of the (U, V) diagram:
//   a0 - lower edge of the principal stable region, a0(0) = 0
//   b1 - upper edge of the principal region, b1(0) = 1
//   a1 - lower edge of the second region, a1(0) = 1
// a1 and b1 both emanate from (1, 0); they are told apart by ordering at
// each V, with b1 <= a1 by convention. Knots are uniform in V on
// [0, v_max]; evaluation interpolates linearly, slopes use central
// differences on the knots.
class BoundaryCurves {
  public:
    static BoundaryCurves tabulate(double v_max = 2.0, int knots = 400);

    double v_max() const { return v_max_; }
    int knots() const { return static_cast<int>(v_.size()); }

    double a0(double V) const;
    double a1(double V) const;
    double b1(double V) const;
    double eval(BoundaryName name, double V) const;

    double a0_slope(double V) const;

    // Re-locates the transition at the requested V by bisection on stability
    // verdicts, seeded from the tabulation; resolves U to 1e-6.
    double locate(BoundaryName name, double V) const;

    // Process-wide table with the default range, built once on first use.
    static const BoundaryCurves& shared();

  private:
    BoundaryCurves() = default;
    void check_range(double V) const;
    double interp(const std::vector<double>& y, double V) const;

    double v_max_ = 0.0;
    double dv_ = 0.0;
    std::vector<double> v_, a0_, a1_, b1_, a0_slope_;
};

}  // namespace tlj

#endif
