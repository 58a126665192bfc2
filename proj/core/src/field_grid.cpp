#include "tlj/field_grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tlj {

namespace {

// Cubic Hermite basis with 4th-order centered-difference tangents, written
// as weights over the six nodes i-2 .. i+3 of the cell [i, i+1].
struct AxisWeights {
    double w[6];
    double dw[6];  // d/dcoordinate, already divided by spacing
};

AxisWeights axis_weights(double s, double inv_h) {
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;
    const double g00 = 6.0 * s2 - 6.0 * s;
    const double g10 = 3.0 * s2 - 4.0 * s + 1.0;
    const double g01 = -6.0 * s2 + 6.0 * s;
    const double g11 = 3.0 * s2 - 2.0 * s;

    AxisWeights a;
    a.w[0] = h10 / 12.0;
    a.w[1] = -8.0 * h10 / 12.0 + h11 / 12.0;
    a.w[2] = h00 - 8.0 * h11 / 12.0;
    a.w[3] = h01 + 8.0 * h10 / 12.0;
    a.w[4] = -h10 / 12.0 + 8.0 * h11 / 12.0;
    a.w[5] = -h11 / 12.0;

    a.dw[0] = (g10 / 12.0) * inv_h;
    a.dw[1] = (-8.0 * g10 / 12.0 + g11 / 12.0) * inv_h;
    a.dw[2] = (g00 - 8.0 * g11 / 12.0) * inv_h;
    a.dw[3] = (g01 + 8.0 * g10 / 12.0) * inv_h;
    a.dw[4] = (-g10 / 12.0 + 8.0 * g11 / 12.0) * inv_h;
    a.dw[5] = (-g11 / 12.0) * inv_h;
    return a;
}

}  // namespace

FieldGrid::FieldGrid(const Vec3& origin, const Vec3& spacing, const std::array<int, 3>& dims)
    : origin_(origin), spacing_(spacing), dims_(dims) {
    for (int a = 0; a < 3; ++a) {
        if (dims_[a] < 6)
            throw std::invalid_argument("FieldGrid: need at least 6 samples per axis");
        if (!(spacing_[a] > 0.0))
            throw std::invalid_argument("FieldGrid: spacing must be positive");
    }
    stride_y_ = static_cast<std::size_t>(dims_[2]);
    stride_x_ = static_cast<std::size_t>(dims_[1]) * stride_y_;
}

Vec3 FieldGrid::interior_lo() const {
    return origin_ + Vec3{2.0 * spacing_.x, 2.0 * spacing_.y, 2.0 * spacing_.z};
}

Vec3 FieldGrid::interior_hi() const {
    return {origin_.x + (dims_[0] - 3) * spacing_.x,
            origin_.y + (dims_[1] - 3) * spacing_.y,
            origin_.z + (dims_[2] - 3) * spacing_.z};
}

bool FieldGrid::in_interior(const Vec3& p) const {
    const Vec3 lo = interior_lo(), hi = interior_hi();
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y && p.z >= lo.z &&
           p.z <= hi.z;
}

int FieldGrid::add_electrode(const std::string& name, std::vector<double> samples) {
    if (samples.size() != samples_per_electrode())
        throw std::invalid_argument("FieldGrid::add_electrode: sample count mismatch");
    if (electrode_index(name) >= 0)
        throw std::invalid_argument("FieldGrid::add_electrode: duplicate electrode " + name);
    names_.push_back(name);
    data_.push_back(std::move(samples));
    return static_cast<int>(names_.size()) - 1;
}

int FieldGrid::electrode_index(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return -1;
}

double& FieldGrid::at(int electrode, int ix, int iy, int iz) {
    return data_.at(electrode)[ix * stride_x_ + iy * stride_y_ + iz];
}

double FieldGrid::at(int electrode, int ix, int iy, int iz) const {
    return data_.at(electrode)[ix * stride_x_ + iy * stride_y_ + iz];
}

SampledField FieldGrid::sample(int electrode, const Vec3& p) const {
    const std::vector<double>& f = data_.at(electrode);

    int idx[3];
    double frac[3];
    for (int a = 0; a < 3; ++a) {
        const double s = (p[a] - origin_[a]) / spacing_[a];
        if (!(s >= 2.0) || !(s <= dims_[a] - 3.0))
            throw OutOfDomain("FieldGrid::sample: point outside the interpolable interior");
        const int i = std::min(std::max(static_cast<int>(std::floor(s)), 2), dims_[a] - 4);
        idx[a] = i;
        frac[a] = s - i;
    }

    const AxisWeights wx = axis_weights(frac[0], 1.0 / spacing_.x);
    const AxisWeights wy = axis_weights(frac[1], 1.0 / spacing_.y);
    const AxisWeights wz = axis_weights(frac[2], 1.0 / spacing_.z);

    // contract z, then y, then x
    double val = 0.0, gx = 0.0, gy = 0.0, gz = 0.0;
    for (int a = 0; a < 6; ++a) {
        double by = 0.0, bdy = 0.0, bdz = 0.0;
        const std::size_t base_x = static_cast<std::size_t>(idx[0] - 2 + a) * stride_x_;
        for (int b = 0; b < 6; ++b) {
            const std::size_t base =
                base_x + static_cast<std::size_t>(idx[1] - 2 + b) * stride_y_ +
                static_cast<std::size_t>(idx[2] - 2);
            double az = 0.0, adz = 0.0;
            for (int c = 0; c < 6; ++c) {
                const double v = f[base + c];
                az += wz.w[c] * v;
                adz += wz.dw[c] * v;
            }
            by += wy.w[b] * az;
            bdy += wy.dw[b] * az;
            bdz += wy.w[b] * adz;
        }
        val += wx.w[a] * by;
        gx += wx.dw[a] * by;
        gy += wx.w[a] * bdy;
        gz += wx.w[a] * bdz;
    }
    return {val, {gx, gy, gz}};
}

SampledField FieldGrid::sample(std::string_view electrode, const Vec3& p) const {
    const int i = electrode_index(electrode);
    if (i < 0)
        throw std::invalid_argument("FieldGrid::sample: no electrode named " +
                                    std::string(electrode));
    return sample(i, p);
}

bool FieldGrid::same_layout(const FieldGrid& other) const {
    auto near = [](double a, double b) { return a == b; };
    return dims_ == other.dims_ && near(origin_.x, other.origin_.x) &&
           near(origin_.y, other.origin_.y) && near(origin_.z, other.origin_.z) &&
           near(spacing_.x, other.spacing_.x) && near(spacing_.y, other.spacing_.y) &&
           near(spacing_.z, other.spacing_.z);
}

void FieldGrid::save(std::ostream& os) const {
    char buf[32];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << buf;
    };
    os << "tlj-field-grid 1\n";
    os << "dims " << dims_[0] << ' ' << dims_[1] << ' ' << dims_[2] << '\n';
    os << "origin ";
    put(origin_.x); os << ' '; put(origin_.y); os << ' '; put(origin_.z); os << '\n';
    os << "spacing ";
    put(spacing_.x); os << ' '; put(spacing_.y); os << ' '; put(spacing_.z); os << '\n';
    os << "electrodes " << names_.size() << '\n';
    for (std::size_t e = 0; e < names_.size(); ++e) {
        os << "electrode " << names_[e] << '\n';
        const auto& block = data_[e];
        for (std::size_t i = 0; i < block.size(); ++i) {
            put(block[i]);
            os << ((i + 1) % 8 == 0 || i + 1 == block.size() ? '\n' : ' ');
        }
    }
}

void FieldGrid::save_file(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw Error("FieldGrid::save_file: cannot open " + path);
    save(os);
}

FieldGrid FieldGrid::load(std::istream& is) {
    std::string tag;
    int version = 0;
    is >> tag >> version;
    if (tag != "tlj-field-grid" || version != 1)
        throw Error("FieldGrid::load: not a field grid file");

    std::string key;
    std::array<int, 3> dims{};
    Vec3 origin, spacing;
    is >> key >> dims[0] >> dims[1] >> dims[2];
    if (key != "dims") throw Error("FieldGrid::load: expected dims");
    is >> key >> origin.x >> origin.y >> origin.z;
    if (key != "origin") throw Error("FieldGrid::load: expected origin");
    is >> key >> spacing.x >> spacing.y >> spacing.z;
    if (key != "spacing") throw Error("FieldGrid::load: expected spacing");
    std::size_t n_electrodes = 0;
    is >> key >> n_electrodes;
    if (key != "electrodes") throw Error("FieldGrid::load: expected electrode count");

    FieldGrid grid(origin, spacing, dims);
    for (std::size_t e = 0; e < n_electrodes; ++e) {
        std::string name;
        is >> key >> name;
        if (key != "electrode") throw Error("FieldGrid::load: expected electrode header");
        std::vector<double> block(grid.samples_per_electrode());
        for (auto& v : block)
            if (!(is >> v)) throw Error("FieldGrid::load: truncated sample block");
        grid.add_electrode(name, std::move(block));
    }
    return grid;
}

FieldGrid FieldGrid::load_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("FieldGrid::load_file: cannot open " + path);
    return load(is);
}

namespace {
FieldGrid bare_layout(const std::vector<const FieldGrid*>& grids) {
    if (grids.empty()) throw std::invalid_argument("SuperposedField: no grids");
    return FieldGrid(grids.front()->origin(), grids.front()->spacing(), grids.front()->dims());
}
}  // namespace

SuperposedField::SuperposedField(const std::vector<const FieldGrid*>& grids,
                                 const std::vector<ElectrodeDrive>& drives,
                                 std::function<double(double)> blend, double omega)
    : combined_(bare_layout(grids)), blend_(std::move(blend)), omega_(omega) {
    for (const FieldGrid* g : grids)
        if (!grids.front()->same_layout(*g))
            throw GridMismatch("SuperposedField: grids disagree in origin/spacing/dims");

    const std::size_t n = combined_.samples_per_electrode();
    std::array<std::vector<double>, 4> acc;

    auto find_samples = [&](const std::string& name) -> const std::vector<double>* {
        for (const FieldGrid* g : grids) {
            const int i = g->electrode_index(name);
            if (i >= 0) return &g->electrode_samples(i);
        }
        return nullptr;
    };

    for (const ElectrodeDrive& d : drives) {
        if (d.layer != 0 && d.layer != 1)
            throw std::invalid_argument("SuperposedField: layer must be 0 or 1");
        const std::vector<double>* src = find_samples(d.electrode);
        if (!src)
            throw std::invalid_argument("SuperposedField: no electrode named " + d.electrode);
        const int ch = d.layer * 2 + (d.rf ? 1 : 0);
        if (acc[ch].empty()) acc[ch].assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) acc[ch][i] += d.volts * (*src)[i];
    }

    static const char* kChannelNames[4] = {"static0", "rf0", "static1", "rf1"};
    for (int ch = 0; ch < 4; ++ch)
        if (!acc[ch].empty())
            channel_[ch] = combined_.add_electrode(kChannelNames[ch], std::move(acc[ch]));
}

SampledField SuperposedField::sample(const Vec3& p, double t) const {
    const double f = blend_(t);
    const double c = std::cos(omega_ * t);
    const double w[4] = {1.0 - f, (1.0 - f) * c, f, f * c};
    SampledField out;
    for (int ch = 0; ch < 4; ++ch) {
        if (channel_[ch] < 0 || w[ch] == 0.0) continue;
        const SampledField s = combined_.sample(channel_[ch], p);
        out.potential += w[ch] * s.potential;
        out.gradient += w[ch] * s.gradient;
    }
    return out;
}

}  // namespace tlj
