#ifndef TLJ_FIELD_GRID_HPP
#define TLJ_FIELD_GRID_HPP

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tlj/errors.hpp"
#include "tlj/vec3.hpp"

namespace tlj {

struct SampledField {
    double potential = 0.0;
    Vec3 gradient;  // exact derivative of the interpolant
};

// Per-electrode scalar potential samples (volts per applied volt) on a
// regular 3D grid. Lengths are in the grid's own unit (generated grids use
// micrometers). Sample ordering is row-major with z fastest:
// index = (ix * ny + iy) * nz + iz.
//
// Sampling uses a separable cubic Hermite interpolant whose node tangents
// come from the 4th-order centered difference, so the stencil spans 6
// nodes per axis. The interpolant is C1 across cells and reproduces
// polynomials through degree 3 exactly; the gradient is its analytic
// derivative. Valid sample points must stay two cells inside the boundary
// on every axis.
class FieldGrid {
  public:
    FieldGrid(const Vec3& origin, const Vec3& spacing, const std::array<int, 3>& dims);

    const Vec3& origin() const { return origin_; }
    const Vec3& spacing() const { return spacing_; }
    const std::array<int, 3>& dims() const { return dims_; }
    std::size_t samples_per_electrode() const { return stride_x_ * dims_[0]; }

    // inclusive bounds of the interpolable interior
    Vec3 interior_lo() const;
    Vec3 interior_hi() const;
    bool in_interior(const Vec3& p) const;

    int add_electrode(const std::string& name, std::vector<double> samples);
    int electrode_index(std::string_view name) const;  // -1 when absent
    int electrode_count() const { return static_cast<int>(names_.size()); }
    const std::string& electrode_name(int i) const { return names_.at(i); }
    const std::vector<double>& electrode_samples(int i) const { return data_.at(i); }

    double& at(int electrode, int ix, int iy, int iz);
    double at(int electrode, int ix, int iy, int iz) const;

    SampledField sample(int electrode, const Vec3& p) const;
    SampledField sample(std::string_view electrode, const Vec3& p) const;

    bool same_layout(const FieldGrid& other) const;

    // Text format: header lines (format tag, dims, origin, spacing,
    // electrode count), then per electrode a name line followed by the
    // sample block printed with 17 significant digits, which round-trips
    // doubles exactly.
    void save(std::ostream& os) const;
    void save_file(const std::string& path) const;
    static FieldGrid load(std::istream& is);
    static FieldGrid load_file(const std::string& path);

  private:
    Vec3 origin_, spacing_;
    std::array<int, 3> dims_{};
    std::size_t stride_x_ = 0, stride_y_ = 0;
    std::vector<std::string> names_;
    std::vector<std::vector<double>> data_;
};

// One electrode's excitation inside a superposed field. Layer 0 is scaled
// by (1 - f(t)), layer 1 by f(t); RF electrodes pick up an extra
// cos(omega t).
struct ElectrodeDrive {
    std::string electrode;
    double volts = 0.0;
    bool rf = false;
    int layer = 0;
};

// Time-dependent superposition sum_e v_e(t) * sample(e, p). Voltages are
// fixed at construction, so the per-electrode arrays collapse into at most
// four combined channels (layer x static/rf); linearity in each voltage is
// preserved exactly.
class SuperposedField {
  public:
    SuperposedField(const std::vector<const FieldGrid*>& grids,
                    const std::vector<ElectrodeDrive>& drives,
                    std::function<double(double)> blend,  // f(t)
                    double omega);                        // drive rate, rad per time unit

    SampledField sample(const Vec3& p, double t) const;

    const FieldGrid& combined() const { return combined_; }
    bool in_interior(const Vec3& p) const { return combined_.in_interior(p); }

  private:
    FieldGrid combined_;
    std::function<double(double)> blend_;
    double omega_;
    std::array<int, 4> channel_{-1, -1, -1, -1};  // static0, rf0, static1, rf1
};

}  // namespace tlj

#endif
