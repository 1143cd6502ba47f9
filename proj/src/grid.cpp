#include "sdfkit/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace sdfkit {

namespace {

// Cell-count guard; keeps N * sizeof(double) well inside size_t and keeps
// squared index distances inside int64.
constexpr std::int64_t kMaxCells = std::int64_t(1) << 31;

} // namespace

GridSpec GridSpec::make(const std::vector<int>& dims, double spacing,
                        const std::vector<double>& origin) {
    if (dims.empty() || dims.size() > kMaxNdim)
        throw std::invalid_argument("GridSpec: ndim must be 1..3");
    GridSpec spec;
    spec.ndim = static_cast<int>(dims.size());
    for (int a = 0; a < spec.ndim; ++a) spec.dims[static_cast<std::size_t>(a)] = dims[static_cast<std::size_t>(a)];
    spec.spacing = spacing;
    if (!origin.empty()) {
        if (origin.size() != dims.size())
            throw std::invalid_argument("GridSpec: origin size must match dims size");
        for (int a = 0; a < spec.ndim; ++a) spec.origin[static_cast<std::size_t>(a)] = origin[static_cast<std::size_t>(a)];
    }
    spec.validate();
    return spec;
}

void GridSpec::validate() const {
    if (ndim < 1 || ndim > kMaxNdim) throw std::invalid_argument("GridSpec: ndim must be 1..3");
    if (!(spacing > 0.0) || !std::isfinite(spacing))
        throw std::invalid_argument("GridSpec: spacing must be positive and finite");
    std::int64_t n = 1;
    for (int a = 0; a < kMaxNdim; ++a) {
        if (dims[static_cast<std::size_t>(a)] < 1) throw std::invalid_argument("GridSpec: dims must be >= 1");
        if (a >= ndim && dims[static_cast<std::size_t>(a)] != 1)
            throw std::invalid_argument("GridSpec: unused axes must have dim 1");
        n *= dims[static_cast<std::size_t>(a)];
        if (n > kMaxCells) throw std::invalid_argument("GridSpec: cell count overflows the index type");
    }
    for (int a = 0; a < ndim; ++a)
        if (!std::isfinite(origin[static_cast<std::size_t>(a)]))
            throw std::invalid_argument("GridSpec: origin must be finite");
}

std::int64_t GridSpec::cell_count() const {
    std::int64_t n = 1;
    for (int a = 0; a < ndim; ++a) n *= dims[static_cast<std::size_t>(a)];
    return n;
}

std::array<std::int64_t, kMaxNdim> GridSpec::strides() const {
    std::array<std::int64_t, kMaxNdim> s{0, 0, 0};
    std::int64_t acc = 1;
    for (int a = ndim - 1; a >= 0; --a) {
        s[static_cast<std::size_t>(a)] = acc;
        acc *= dims[static_cast<std::size_t>(a)];
    }
    return s;
}

std::int64_t GridSpec::linear_index(const std::array<std::int64_t, kMaxNdim>& nd) const {
    std::int64_t idx = 0;
    for (int a = 0; a < ndim; ++a) idx = idx * dims[static_cast<std::size_t>(a)] + nd[static_cast<std::size_t>(a)];
    return idx;
}

std::array<std::int64_t, kMaxNdim> GridSpec::nd_index(std::int64_t linear) const {
    std::array<std::int64_t, kMaxNdim> nd{0, 0, 0};
    for (int a = ndim - 1; a >= 0; --a) {
        const std::int64_t d = dims[static_cast<std::size_t>(a)];
        nd[static_cast<std::size_t>(a)] = linear % d;
        linear /= d;
    }
    return nd;
}

ScalarField ScalarField::zeros(const GridSpec& spec) {
    spec.validate();
    return ScalarField{spec, std::vector<double>(static_cast<std::size_t>(spec.cell_count()), 0.0)};
}

BinaryField BinaryField::zeros(const GridSpec& spec) {
    spec.validate();
    return BinaryField{spec, std::vector<std::uint8_t>(static_cast<std::size_t>(spec.cell_count()), 0)};
}

ShapeParams ShapeParams::sphere(const std::vector<double>& center, double radius) {
    if (center.empty() || center.size() > kMaxNdim)
        throw std::invalid_argument("sphere: center must have 1..3 components");
    if (!(radius > 0.0)) throw std::invalid_argument("sphere: radius must be positive");
    ShapeParams s;
    s.kind = ShapeKind::sphere;
    for (std::size_t a = 0; a < center.size(); ++a) s.center[a] = center[a];
    s.radius = radius;
    return s;
}

ShapeParams ShapeParams::polygon(std::vector<std::array<double, 2>> vertices) {
    if (vertices.size() < 3) throw std::invalid_argument("polygon: needs at least 3 vertices");
    ShapeParams s;
    s.kind = ShapeKind::polygon;
    s.vertices = std::move(vertices);
    return s;
}

namespace {

int sphere_center_ndim(const ShapeParams& shape, int grid_ndim) {
    // The caller supplies a center with grid_ndim meaningful components;
    // trailing components must be zero (the unused-axis convention).
    for (int a = grid_ndim; a < kMaxNdim; ++a)
        if (shape.center[static_cast<std::size_t>(a)] != 0.0) return -1;
    return grid_ndim;
}

double sphere_phi_at(const GridSpec& spec, const ShapeParams& shape,
                     const std::array<std::int64_t, kMaxNdim>& nd) {
    double sq = 0.0;
    for (int a = 0; a < spec.ndim; ++a) {
        const double dx = spec.coordinate(a, nd[static_cast<std::size_t>(a)]) - shape.center[static_cast<std::size_t>(a)];
        sq += dx * dx;
    }
    return std::sqrt(sq) - shape.radius;
}

bool point_on_polygon_boundary(double px, double py, const std::vector<std::array<double, 2>>& vs) {
    const std::size_t n = vs.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = vs[i];
        const auto& b = vs[(i + 1) % n];
        const double cross = (b[0] - a[0]) * (py - a[1]) - (b[1] - a[1]) * (px - a[0]);
        if (cross != 0.0) continue;
        if (px < std::min(a[0], b[0]) || px > std::max(a[0], b[0])) continue;
        if (py < std::min(a[1], b[1]) || py > std::max(a[1], b[1])) continue;
        return true;
    }
    return false;
}

bool point_in_polygon_even_odd(double px, double py, const std::vector<std::array<double, 2>>& vs) {
    // Boundary points count as outside, mirroring the strict phi < 0 rule
    // used for spheres.
    if (point_on_polygon_boundary(px, py, vs)) return false;
    bool inside = false;
    const std::size_t n = vs.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = vs[i];
        const auto& b = vs[(i + 1) % n];
        if ((a[1] > py) == (b[1] > py)) continue;
        const double x_cross = a[0] + (b[0] - a[0]) * (py - a[1]) / (b[1] - a[1]);
        if (px < x_cross) inside = !inside;
    }
    return inside;
}

} // namespace

ScalarField sample_sphere_sdf(const GridSpec& spec, const ShapeParams& shape) {
    spec.validate();
    if (shape.kind != ShapeKind::sphere)
        throw std::invalid_argument("sample_sphere_sdf: shape must be a sphere");
    if (sphere_center_ndim(shape, spec.ndim) < 0)
        throw std::invalid_argument("sample_sphere_sdf: center dimensionality does not match grid");
    ScalarField out = ScalarField::zeros(spec);
    const std::int64_t n = spec.cell_count();
    for (std::int64_t i = 0; i < n; ++i)
        out[i] = sphere_phi_at(spec, shape, spec.nd_index(i));
    return out;
}

std::vector<ScalarField> sample_sphere_gradient(const GridSpec& spec, const ShapeParams& shape) {
    spec.validate();
    if (shape.kind != ShapeKind::sphere)
        throw std::invalid_argument("sample_sphere_gradient: shape must be a sphere");
    if (sphere_center_ndim(shape, spec.ndim) < 0)
        throw std::invalid_argument("sample_sphere_gradient: center dimensionality does not match grid");
    std::vector<ScalarField> grad;
    grad.reserve(static_cast<std::size_t>(spec.ndim));
    for (int a = 0; a < spec.ndim; ++a) grad.push_back(ScalarField::zeros(spec));
    const std::int64_t n = spec.cell_count();
    for (std::int64_t i = 0; i < n; ++i) {
        const auto nd = spec.nd_index(i);
        double sq = 0.0;
        std::array<double, kMaxNdim> dx{0.0, 0.0, 0.0};
        for (int a = 0; a < spec.ndim; ++a) {
            dx[static_cast<std::size_t>(a)] =
                spec.coordinate(a, nd[static_cast<std::size_t>(a)]) - shape.center[static_cast<std::size_t>(a)];
            sq += dx[static_cast<std::size_t>(a)] * dx[static_cast<std::size_t>(a)];
        }
        const double norm = std::sqrt(sq);
        for (int a = 0; a < spec.ndim; ++a)
            grad[static_cast<std::size_t>(a)][i] = (norm > 0.0) ? dx[static_cast<std::size_t>(a)] / norm : 0.0;
    }
    return grad;
}

BinaryField rasterize(const GridSpec& spec, const ShapeParams& shape) {
    spec.validate();
    if (shape.kind == ShapeKind::sphere) {
        // Strict interior test; identical to binarize(sample_sphere_sdf(...)).
        return binarize(sample_sphere_sdf(spec, shape));
    }
    if (spec.ndim != 2) throw std::invalid_argument("rasterize: polygons require a 2D grid");
    if (shape.vertices.size() < 3) throw std::invalid_argument("rasterize: polygon needs at least 3 vertices");
    BinaryField out = BinaryField::zeros(spec);
    const std::int64_t n = spec.cell_count();
    for (std::int64_t i = 0; i < n; ++i) {
        const auto nd = spec.nd_index(i);
        const double px = spec.coordinate(0, nd[0]);
        const double py = spec.coordinate(1, nd[1]);
        out[i] = point_in_polygon_even_odd(px, py, shape.vertices) ? 1 : 0;
    }
    return out;
}

BinaryField binarize(const ScalarField& phi) {
    BinaryField out = BinaryField::zeros(phi.spec);
    const std::int64_t n = phi.size();
    for (std::int64_t i = 0; i < n; ++i) out[i] = (phi[i] < 0.0) ? 1 : 0;
    return out;
}

} // namespace sdfkit
