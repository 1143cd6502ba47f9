#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sdfkit/errors.hpp"

namespace sdfkit {

inline constexpr int kMaxNdim = 3;

/// Geometry of a regular sample lattice: 1-3 axes, isotropic spacing.
/// The physical coordinate of index n along an axis is origin + spacing * n.
struct GridSpec {
    int ndim = 1;
    std::array<int, kMaxNdim> dims{1, 1, 1}; // axes >= ndim stay 1
    double spacing = 1.0;
    std::array<double, kMaxNdim> origin{0.0, 0.0, 0.0};

    static GridSpec make(const std::vector<int>& dims, double spacing,
                         const std::vector<double>& origin = {});

    void validate() const;

    std::int64_t cell_count() const;

    // Row-major strides, last axis fastest.
    std::array<std::int64_t, kMaxNdim> strides() const;

    double coordinate(int axis, std::int64_t index) const {
        return origin[static_cast<std::size_t>(axis)] + spacing * static_cast<double>(index);
    }

    std::int64_t linear_index(const std::array<std::int64_t, kMaxNdim>& nd) const;
    std::array<std::int64_t, kMaxNdim> nd_index(std::int64_t linear) const;

    bool operator==(const GridSpec&) const = default;
};

/// Dense real-valued grid. Values are row-major, last axis fastest.
struct ScalarField {
    GridSpec spec;
    std::vector<double> values;

    static ScalarField zeros(const GridSpec& spec);

    double& operator[](std::int64_t i) { return values[static_cast<std::size_t>(i)]; }
    double operator[](std::int64_t i) const { return values[static_cast<std::size_t>(i)]; }
    std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }
};

/// Dense {0,1} grid with the same layout as ScalarField.
struct BinaryField {
    GridSpec spec;
    std::vector<std::uint8_t> values;

    static BinaryField zeros(const GridSpec& spec);

    std::uint8_t& operator[](std::int64_t i) { return values[static_cast<std::size_t>(i)]; }
    std::uint8_t operator[](std::int64_t i) const { return values[static_cast<std::size_t>(i)]; }
    std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }
};

enum class ShapeKind { sphere, polygon };

/// Analytic shape in physical units: a sphere (any ndim) or a simple 2D
/// polygon with interior defined by the even-odd rule.
struct ShapeParams {
    ShapeKind kind = ShapeKind::sphere;
    std::array<double, kMaxNdim> center{0.0, 0.0, 0.0};
    double radius = 0.0;
    std::vector<std::array<double, 2>> vertices;

    static ShapeParams sphere(const std::vector<double>& center, double radius);
    static ShapeParams polygon(std::vector<std::array<double, 2>> vertices);
};

/// Samples ||x - x0||_2 - r at every cell center (plain |x - x0| - r in 1D).
ScalarField sample_sphere_sdf(const GridSpec& spec, const ShapeParams& shape);

/// Per-axis components of the analytic sphere gradient (x - x0)/||x - x0||,
/// with the undefined center cell set to zero.
std::vector<ScalarField> sample_sphere_gradient(const GridSpec& spec, const ShapeParams& shape);

/// Cell = 1 iff the cell center is strictly inside the shape.
BinaryField rasterize(const GridSpec& spec, const ShapeParams& shape);

/// Heaviside reconstruction I = H(-phi) with H(0) = 0, so phi = 0 maps to
/// background.
BinaryField binarize(const ScalarField& phi);

} // namespace sdfkit
