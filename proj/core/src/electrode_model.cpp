#include "tlj/electrode_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "tlj/parallel.hpp"

namespace tlj {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 8-point Gauss-Legendre nodes/weights on [-1, 1]
constexpr double kGlX[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                            -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                            0.7966664774136267,  0.9602898564975363};
constexpr double kGlW[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                            0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                            0.2223810344533745, 0.1012285362903763};

}  // namespace

double halfspace_rect_potential(const ElectrodeRect& r, double x, double y, double z) {
    if (z <= 0.0) {
        // boundary value: indicator of the rectangle
        return (x > r.x0 && x < r.x1 && y > r.y0 && y < r.y1) ? 1.0 : 0.0;
    }
    auto corner = [&](double cx, double cy) {
        const double dx = cx - x, dy = cy - y;
        return std::atan2(dx * dy, z * std::sqrt(dx * dx + dy * dy + z * z));
    };
    return (corner(r.x1, r.y1) - corner(r.x0, r.y1) - corner(r.x1, r.y0) + corner(r.x0, r.y0)) /
           kTwoPi;
}

double slab_rect_potential(const ElectrodeRect& r, double x, double y, double z, double gap,
                           int order) {
    if (!(gap > 0.0) || z <= 0.0 || z >= gap)
        throw GeometryError("slab_rect_potential: point must lie strictly between the planes");
    if (order < 1) order = 1;

    // images of the dipole layer: sum_{n>=0} phi0(z + 2n gap) - phi0(2(n+1) gap - z)
    double sum = 0.0;
    for (int n = 0; n <= order; ++n) {
        sum += halfspace_rect_potential(r, x, y, z + 2.0 * n * gap);
        sum -= halfspace_rect_potential(r, x, y, 2.0 * (n + 1) * gap - z);
    }

    // Euler-Maclaurin closure of the tail n = order+1 .. inf: the pair sum
    // collapses to an integral of phi0 across one image period plus half the
    // first omitted term.
    const double lo = z + 2.0 * (order + 1) * gap;
    const double hi = 2.0 * (order + 1) * gap + 2.0 * gap - z;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double integral = 0.0;
    for (int k = 0; k < 8; ++k)
        integral += kGlW[k] * halfspace_rect_potential(r, x, y, mid + half * kGlX[k]);
    integral *= half;
    sum += integral / (2.0 * gap);
    sum += 0.5 * (halfspace_rect_potential(r, x, y, lo) - halfspace_rect_potential(r, x, y, hi));
    return sum;
}

void ElectrodeLayout::validate() const {
    if (!(separation > 0.0)) throw GeometryError("ElectrodeLayout: separation must be positive");
    std::vector<const ElectrodeRect*> all;
    for (const Electrode& e : electrodes) {
        if (e.name.empty() || e.name.find(' ') != std::string::npos)
            throw GeometryError("ElectrodeLayout: electrode names must be non-empty, no spaces");
        for (const ElectrodeRect& r : e.rects) {
            if (!(r.x1 > r.x0) || !(r.y1 > r.y0))
                throw GeometryError("ElectrodeLayout: empty rectangle on electrode " + e.name);
            all.push_back(&r);
        }
    }
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            const ElectrodeRect &a = *all[i], &b = *all[j];
            const bool overlap =
                a.x0 < b.x1 - 1e-9 && b.x0 < a.x1 - 1e-9 && a.y0 < b.y1 - 1e-9 && b.y0 < a.y1 - 1e-9;
            if (overlap) throw GeometryError("ElectrodeLayout: overlapping rectangles");
        }
}

ElectrodeLayout ElectrodeLayout::peregrine_like(double separation, bool two_layer) {
    // Rail geometry reproducing the reference trap's 72 um lone-trap ion
    // height: null of a symmetric rail pair y in +-[a, b] sits at sqrt(ab).
    const double a = 41.0;
    const double b = 126.44;
    const double L = 2500.0;    // rail half-length; effectively infinite
    const double W = 2000.0;    // outer control extent
    const double seg = 50.0;    // center-strip segmentation half-length

    ElectrodeLayout lay;
    lay.separation = separation;
    lay.two_layer = two_layer;
    lay.electrodes = {
        {"rf", ElectrodeRole::rf, {{-L, L, a, b}, {-L, L, -b, -a}}},
        {"c0", ElectrodeRole::control, {{-seg, seg, -a, a}}},
        {"c1", ElectrodeRole::control, {{seg, 3.0 * seg, -a, a}, {-3.0 * seg, -seg, -a, a}}},
        {"c2", ElectrodeRole::control, {{3.0 * seg, L, -a, a}, {-L, -3.0 * seg, -a, a}}},
        {"out", ElectrodeRole::control, {{-L, L, b, W}, {-L, L, -W, -b}}},
    };
    lay.validate();
    return lay;
}

ElectrodeLayout ElectrodeLayout::single_layer(double separation) {
    return peregrine_like(separation, /*two_layer=*/false);
}

ElectrodeLayout ElectrodeLayout::parallel_plate(double separation) {
    ElectrodeLayout lay;
    lay.separation = separation;
    lay.two_layer = false;
    lay.electrodes = {{"plate", ElectrodeRole::control, {{-800.0, 800.0, -800.0, 800.0}}}};
    lay.validate();
    return lay;
}

void ElectrodeLayout::save(std::ostream& os) const {
    os << "tlj-layout 1\n";
    os << "separation " << separation << '\n';
    os << "two_layer " << (two_layer ? 1 : 0) << '\n';
    for (const Electrode& e : electrodes)
        for (const ElectrodeRect& r : e.rects)
            os << "rect " << e.name << ' ' << (e.role == ElectrodeRole::rf ? "rf" : "control")
               << ' ' << r.x0 << ' ' << r.x1 << ' ' << r.y0 << ' ' << r.y1 << '\n';
}

ElectrodeLayout ElectrodeLayout::load(std::istream& is) {
    std::string tag;
    int version = 0;
    is >> tag >> version;
    if (tag != "tlj-layout" || version != 1) throw ConfigError("not an electrode layout file");

    ElectrodeLayout lay;
    lay.electrodes.clear();
    std::string key;
    while (is >> key) {
        if (key == "separation") {
            is >> lay.separation;
        } else if (key == "two_layer") {
            int v = 1;
            is >> v;
            lay.two_layer = v != 0;
        } else if (key == "rect") {
            std::string name, role;
            ElectrodeRect r;
            if (!(is >> name >> role >> r.x0 >> r.x1 >> r.y0 >> r.y1))
                throw ConfigError("layout: malformed rect line");
            Electrode* e = nullptr;
            for (Electrode& cand : lay.electrodes)
                if (cand.name == name) e = &cand;
            if (!e) {
                lay.electrodes.push_back(
                    {name, role == "rf" ? ElectrodeRole::rf : ElectrodeRole::control, {}});
                e = &lay.electrodes.back();
            }
            e->rects.push_back(r);
        } else {
            throw ConfigError("layout: unknown key " + key);
        }
    }
    lay.validate();
    return lay;
}

ElectrodeLayout ElectrodeLayout::load_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open layout file " + path);
    return load(is);
}

void ElectrodeLayout::save_file(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw Error("cannot write layout file " + path);
    save(os);
}

double layout_potential(const ElectrodeLayout& layout, const Electrode& e, bool top_layer,
                        const Vec3& p, int image_order) {
    const double s = 0.5 * layout.separation;
    // local frame of the owning layer: bottom uses (x, y, z + s); the top
    // trap is the rotoreflected bottom trap, (x, y, z) -> (y, -x, s - z)
    Vec3 q = top_layer ? Vec3{p.y, -p.x, s - p.z} : Vec3{p.x, p.y, p.z + s};
    double sum = 0.0;
    for (const ElectrodeRect& r : e.rects)
        sum += slab_rect_potential(r, q.x, q.y, q.z, layout.separation, image_order);
    return sum;
}

FieldGrid generate_rect_electrode_grid(const ElectrodeLayout& layout, const GridRequest& req) {
    layout.validate();
    const double s = 0.5 * layout.separation;
    const double zlo = req.origin.z;
    const double zhi = req.origin.z + (req.dims[2] - 1) * req.spacing.z;
    if (zlo <= -s || zhi >= s)
        throw GeometryError("generate_rect_electrode_grid: grid must lie strictly between the planes");

    FieldGrid grid(req.origin, req.spacing, req.dims);
    const std::size_t n = grid.samples_per_electrode();

    std::vector<std::pair<std::string, const Electrode*>> jobs;
    for (const Electrode& e : layout.electrodes) jobs.push_back({"b." + e.name, &e});
    if (layout.two_layer)
        for (const Electrode& e : layout.electrodes) jobs.push_back({"t." + e.name, &e});

    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const bool top = jobs[j].first[0] == 't';
        const Electrode& e = *jobs[j].second;
        std::vector<double> block(n);
        parallel_for(n, [&](std::size_t idx) {
            const int iz = static_cast<int>(idx % req.dims[2]);
            const int iy = static_cast<int>((idx / req.dims[2]) % req.dims[1]);
            const int ix = static_cast<int>(idx / (static_cast<std::size_t>(req.dims[2]) * req.dims[1]));
            const Vec3 p{req.origin.x + ix * req.spacing.x, req.origin.y + iy * req.spacing.y,
                         req.origin.z + iz * req.spacing.z};
            block[idx] = layout_potential(layout, e, top, p, req.image_order);
        });
        grid.add_electrode(jobs[j].first, std::move(block));
    }
    return grid;
}

NullReport find_rf_null(const FieldGrid& grid, const std::string& electrode, double x0,
                        double separation) {
    const int e = grid.electrode_index(electrode);
    if (e < 0) throw std::invalid_argument("find_rf_null: no electrode named " + electrode);

    const Vec3 lo = grid.interior_lo(), hi = grid.interior_hi();
    auto gnorm = [&](double y, double z) {
        return grid.sample(e, {x0, y, z}).gradient.norm();
    };

    // coarse scan of the (y, z) plane
    const int ny = 41, nz = 61;
    double best = 1e300, by = 0.0, bz = 0.0, typical = 0.0;
    for (int iy = 0; iy < ny; ++iy)
        for (int iz = 0; iz < nz; ++iz) {
            const double y = lo.y + (hi.y - lo.y) * iy / (ny - 1);
            const double z = lo.z + (hi.z - lo.z) * iz / (nz - 1);
            const double g = gnorm(y, z);
            typical = std::max(typical, g);
            if (g < best) best = g, by = y, bz = z;
        }

    // coordinate-descent refinement with shrinking step
    const std::pair<double, double> dirs[4] = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
    double step = std::max(grid.spacing().y, grid.spacing().z);
    while (step > 1e-6) {
        bool moved = true;
        while (moved) {
            moved = false;
            for (const auto& d : dirs) {
                const double y = std::clamp(by + step * d.first, lo.y, hi.y);
                const double z = std::clamp(bz + step * d.second, lo.z, hi.z);
                const double g = gnorm(y, z);
                if (g < best) best = g, by = y, bz = z, moved = true;
            }
        }
        step *= 0.5;
    }

    NullReport rep;
    rep.position = {x0, by, bz};
    rep.grad_norm = best;
    rep.found = best < 1e-3 * typical;
    rep.height_above_bottom = separation > 0.0 ? bz + 0.5 * separation : 0.0;
    const double h = grid.spacing().y * 0.25;
    const SampledField c0 = grid.sample(e, {x0, by, bz});
    const SampledField cp = grid.sample(e, {x0, by + h, bz});
    const SampledField cm = grid.sample(e, {x0, by - h, bz});
    rep.curvature_yy = (cp.potential - 2.0 * c0.potential + cm.potential) / (h * h);
    return rep;
}

ControlSolve solve_control_voltages(const ElectrodeLayout& layout,
                                    const std::vector<std::string>& electrodes,
                                    const Vec3& point, double hxx, double hyy, double pz,
                                    int image_order) {
    const int n = static_cast<int>(electrodes.size());
    if (n < 3) throw std::invalid_argument("solve_control_voltages: need at least 3 electrodes");

    // analytic potentials differentiated numerically; h well below the
    // geometry scale keeps the curvature truncation ~1e-6 relative
    const double h = 0.05;
    std::vector<std::array<double, 3>> cols(n);  // (Hxx, Hyy, Pz) per electrode
    for (int j = 0; j < n; ++j) {
        const Electrode* e = nullptr;
        for (const Electrode& cand : layout.electrodes)
            if (cand.name == electrodes[j]) e = &cand;
        if (!e)
            throw std::invalid_argument("solve_control_voltages: no electrode " + electrodes[j]);
        auto phi = [&](const Vec3& p) { return layout_potential(layout, *e, false, p, image_order); };
        const double c = phi(point);
        const double xx = (phi({point.x + h, point.y, point.z}) - 2.0 * c +
                           phi({point.x - h, point.y, point.z})) / (h * h);
        const double yy = (phi({point.x, point.y + h, point.z}) - 2.0 * c +
                           phi({point.x, point.y - h, point.z})) / (h * h);
        const double gz = (phi({point.x, point.y, point.z + h}) -
                           phi({point.x, point.y, point.z - h})) / (2.0 * h);
        cols[j] = {xx, yy, gz};
    }

    // least-norm solution of A v = b via v = A^T (A A^T)^{-1} b, 3 rows
    const double b[3] = {hxx, hyy, pz};
    double AAT[3][3] = {};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            for (int j = 0; j < n; ++j) AAT[r][c] += cols[j][r] * cols[j][c];

    // 3x3 inverse by cofactors
    const double det = AAT[0][0] * (AAT[1][1] * AAT[2][2] - AAT[1][2] * AAT[2][1]) -
                       AAT[0][1] * (AAT[1][0] * AAT[2][2] - AAT[1][2] * AAT[2][0]) +
                       AAT[0][2] * (AAT[1][0] * AAT[2][1] - AAT[1][1] * AAT[2][0]);
    if (std::abs(det) < 1e-30)
        throw GeometryError("solve_control_voltages: degenerate electrode basis");
    double inv[3][3];
    inv[0][0] = (AAT[1][1] * AAT[2][2] - AAT[1][2] * AAT[2][1]) / det;
    inv[0][1] = (AAT[0][2] * AAT[2][1] - AAT[0][1] * AAT[2][2]) / det;
    inv[0][2] = (AAT[0][1] * AAT[1][2] - AAT[0][2] * AAT[1][1]) / det;
    inv[1][0] = (AAT[1][2] * AAT[2][0] - AAT[1][0] * AAT[2][2]) / det;
    inv[1][1] = (AAT[0][0] * AAT[2][2] - AAT[0][2] * AAT[2][0]) / det;
    inv[1][2] = (AAT[0][2] * AAT[1][0] - AAT[0][0] * AAT[1][2]) / det;
    inv[2][0] = (AAT[1][0] * AAT[2][1] - AAT[1][1] * AAT[2][0]) / det;
    inv[2][1] = (AAT[0][1] * AAT[2][0] - AAT[0][0] * AAT[2][1]) / det;
    inv[2][2] = (AAT[0][0] * AAT[1][1] - AAT[0][1] * AAT[1][0]) / det;

    double y[3] = {};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) y[r] += inv[r][c] * b[c];

    ControlSolve out;
    out.electrodes = electrodes;
    out.volts.resize(n);
    for (int j = 0; j < n; ++j) {
        double v = 0.0;
        for (int r = 0; r < 3; ++r) v += cols[j][r] * y[r];
        out.volts[j] = v;
    }
    double achieved[3] = {};
    for (int j = 0; j < n; ++j)
        for (int r = 0; r < 3; ++r) achieved[r] += cols[j][r] * out.volts[j];
    out.residual = std::sqrt((achieved[0] - b[0]) * (achieved[0] - b[0]) +
                             (achieved[1] - b[1]) * (achieved[1] - b[1]) +
                             (achieved[2] - b[2]) * (achieved[2] - b[2]));
    out.grad_z = achieved[2];
    return out;
}

}  // namespace tlj
