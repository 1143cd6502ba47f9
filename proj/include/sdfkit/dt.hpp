#pragma once

#include <vector>

#include "sdfkit/grid.hpp"

namespace sdfkit {

enum class MetricKind { euclidean, manhattan, chebyshev, chamfer };

/// Distance rule between lattice offsets. Chamfer paths step to axis
/// neighbors at the axial weight and to two-axis diagonal neighbors at the
/// diagonal weight; weights must satisfy 0 < axial <= diagonal <= 2*axial.
struct Metric {
    MetricKind kind = MetricKind::euclidean;
    double chamfer_axial = 1.0;
    double chamfer_diagonal = 1.4142135623730951;

    static Metric euclidean() { return Metric{MetricKind::euclidean, 1.0, 1.0}; }
    static Metric manhattan() { return Metric{MetricKind::manhattan, 1.0, 1.0}; }
    static Metric chebyshev() { return Metric{MetricKind::chebyshev, 1.0, 1.0}; }
    static Metric chamfer(double axial, double diagonal);

    void validate() const;

    /// g(z, 0) for a lattice offset z (in lattice units, no spacing applied).
    double level(const std::array<std::int64_t, kMaxNdim>& offset, int ndim) const;
};

enum class Target { foreground, background };

/// Per-cell minimum distance (in physical units) to the target set.
/// Euclidean distances are exact sample-to-sample values computed by a
/// separable lower-envelope scan over squared index distances; the other
/// metrics use a chamfer-style raster scan with the metric's step weights.
ScalarField distance_transform(const BinaryField& b, const Metric& metric, Target target);

/// Row-major linear index of one nearest target cell per cell, euclidean
/// metric, ties broken to the smallest linear index.
struct IndexField {
    GridSpec spec;
    std::vector<std::int64_t> values;
};
IndexField feature_transform(const BinaryField& b, Target target);

/// Signed distance transform, negative inside the foreground. The corrected
/// variant offsets by half a sample so the zero crossing falls between edge
/// samples and the output never equals zero:
///   corrected:   -h/2 + d(x, A) outside,  +h/2 - d(x, A^C) inside
///   uncorrected:        d(x, A) outside,        -d(x, A^C) inside
ScalarField signed_distance_transform(const BinaryField& b, const Metric& metric, bool corrected);

std::int64_t count_target(const BinaryField& b, Target target);

} // namespace sdfkit
