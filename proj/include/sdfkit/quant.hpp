#pragma once

#include <utility>
#include <vector>

#include "sdfkit/dt.hpp"
#include "sdfkit/grid.hpp"

namespace sdfkit {

/// The reachable values of a lattice distance transform, in lattice units:
/// every distinct l = g(z, 0) with z an integer offset, up to the cutoff.
struct LevelSet {
    Metric metric;
    double h = 1.0;
    double cutoff = 0.0;
    std::vector<double> levels; // sorted strictly ascending, starts at 0

    /// Distance from `value` (lattice units) to the nearest level.
    double nearest_residual(double value) const;
};

LevelSet enumerate_levels(const Metric& metric, int ndim, double l_max, double h = 1.0);

enum class Convention { raw, corrected_sdt };

/// Per-cell distance from the convention-shifted value |phi|/h (raw) or
/// (|phi| + h/2)/h (corrected) to the nearest reachable level. Cells whose
/// shifted value exceeds the cutoff are skipped and counted.
struct ResidualResult {
    double max_residual = 0.0;
    ScalarField residuals;
    std::int64_t skipped = 0;
};
ResidualResult quantization_residual(const ScalarField& phi, const LevelSet& levels,
                                     Convention convention);

/// Cell = 1 iff any face-neighbor carries a different feature-transform
/// label (labels and tie rule from feature_transform).
BinaryField voronoi_edges(const BinaryField& b, Target target = Target::foreground);

/// One (exact, quantized) pair per cell, row-major order.
std::vector<std::pair<double, double>> regression_pairs(const ScalarField& exact,
                                                        const ScalarField& quantized);

/// Cells where the central difference of `quantized` along `axis` is exactly
/// zero (bitwise) while the exact gradient component exceeds 0.1 in
/// magnitude.
struct CensusResult {
    std::int64_t count = 0;
    BinaryField mask;
};
CensusResult flat_gradient_census(const ScalarField& quantized,
                                  const ScalarField& exact_gradient_axis, int axis);

} // namespace sdfkit
