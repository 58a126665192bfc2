#ifndef TLJ_ELECTRODE_MODEL_HPP
#define TLJ_ELECTRODE_MODEL_HPP

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "tlj/errors.hpp"
#include "tlj/field_grid.hpp"
#include "tlj/vec3.hpp"

namespace tlj {

enum class ElectrodeRole { rf, control };

// Axis-aligned electrode patch in a layer plane, described in the layer's
// own frame (electrode plane at local z = 0, field region local z > 0).
struct ElectrodeRect {
    double x0 = 0.0, x1 = 0.0;
    double y0 = 0.0, y1 = 0.0;
};

struct Electrode {
    std::string name;
    ElectrodeRole role = ElectrodeRole::control;
    std::vector<ElectrodeRect> rects;
};

// One layer's electrode set plus the two-layer arrangement. Lengths in um.
// The bottom layer sits at z = -s with its local +z pointing up; the top
// layer is the rotoreflected copy (x, y, z) -> (y, -x, s - z) and is only
// generated when `two_layer` is set. Either way the opposing plane acts as
// ground for the image construction.
struct ElectrodeLayout {
    double separation = 50.0;  // 2 s, distance between the planes
    bool two_layer = true;
    std::vector<Electrode> electrodes;

    void validate() const;  // overlap and extent checks; throws GeometryError

    // Rail pair y in +-[41, 126.44] (giving a lone-trap null height of
    // 72 um), a center control strip split into an inner segment and two
    // side pairs for axial shaping, and outer control planes.
    static ElectrodeLayout peregrine_like(double separation = 50.0, bool two_layer = true);
    static ElectrodeLayout single_layer(double separation = 50.0);
    static ElectrodeLayout parallel_plate(double separation = 50.0);

    void save(std::ostream& os) const;
    static ElectrodeLayout load(std::istream& is);
    static ElectrodeLayout load_file(const std::string& path);
    void save_file(const std::string& path) const;
};

// Potential at local (x, y, z), 0 < z < gap, of a unit-voltage rectangle in
// an otherwise grounded plane at z = 0 with a second grounded plane at
// z = gap. Image stack of `order` exact reflections plus an Euler-Maclaurin
// closure of the remainder; order 20 leaves the tail below ~1e-6.
double slab_rect_potential(const ElectrodeRect& r, double x, double y, double z, double gap,
                           int order = 20);

// Half-space solid-angle potential of the rectangle (no second plane).
double halfspace_rect_potential(const ElectrodeRect& r, double x, double y, double z);

// Analytic evaluation of one electrode of the layout at a junction-frame
// point. Top-layer electrodes are evaluated through the rotoreflection.
double layout_potential(const ElectrodeLayout& layout, const Electrode& e, bool top_layer,
                        const Vec3& p, int image_order = 20);

struct GridRequest {
    Vec3 origin{-100.0, -100.0, -24.5};
    Vec3 spacing{2.5, 2.5, 1.225};
    std::array<int, 3> dims{81, 81, 41};
    int image_order = 20;
};

// Samples every electrode of both layers onto a FieldGrid. Electrode names
// gain a layer prefix ("b." / "t."). Throws GeometryError when the grid
// region touches either electrode plane.
FieldGrid generate_rect_electrode_grid(const ElectrodeLayout& layout, const GridRequest& req);

struct NullReport {
    bool found = false;
    Vec3 position;          // junction frame, um
    double grad_norm = 0.0; // |grad phi| at the minimum, V/um per volt
    double height_above_bottom = 0.0;  // um from the bottom electrode plane
    double curvature_yy = 0.0;         // d2 phi / dy2 at the null, V/um^2 per volt
};

// Locates the RF field zero of one electrode channel on the x = x0 plane by
// scanning |grad phi| over (y, z) and refining with coordinate descent.
// found = false means the minimum gradient never drops far enough below the
// typical field to qualify as a null (a degenerate, uniform-field case).
// Pass the plane separation to fill height_above_bottom.
NullReport find_rf_null(const FieldGrid& grid, const std::string& electrode, double x0 = 0.0,
                        double separation = 0.0);

// Least-norm control voltages producing the requested potential Hessian
// diagonal (hxx, hyy in V/um^2; hzz follows from the trace) and vertical
// gradient pz (V/um) at `point`, using the named electrodes of one layer.
struct ControlSolve {
    std::vector<std::string> electrodes;
    std::vector<double> volts;
    double residual = 0.0;    // constraint residual norm
    double grad_z = 0.0;      // achieved d phi / dz at the point
};

ControlSolve solve_control_voltages(const ElectrodeLayout& layout,
                                    const std::vector<std::string>& electrodes,
                                    const Vec3& point, double hxx, double hyy, double pz,
                                    int image_order = 20);

}  // namespace tlj

#endif
