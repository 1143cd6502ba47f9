#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sdfkit/grid.hpp"

namespace sdfkit {

/// Amplitude-clipped uniform dither. The per-cell noise amplitude is
/// A = min(h/alpha, |phi|), which cannot flip any sign.
struct DitherParams {
    double alpha = 2.0; // must be > 1
    std::uint64_t seed = 0;
};

struct ReinitParams {
    int iterations = 1;          // >= 1
    double cfl = 0.3;            // dt = cfl * h, in (0,1)
    double sign_epsilon = 1e-9;  // clamp magnitude = sign_epsilon * h
    int log_every = 10;
};

struct ErrorReport {
    int iteration = 0;
    double e_R = 0.0;            // max |H(-phi) - I|, 0 or 1
    double e_MG = 0.0;           // (1/N) * l2 over cells of (||D phi|| - 1)
    std::optional<double> e_D;   // (1/N) * l2 over cells of ||D phi - grad||
};

/// phi_hat = phi + A(x) * u with u a deterministic per-cell draw in (-1,1):
/// the SplitMix64 finalizer of (seed XOR linear index) mapped through the
/// 53-bit mantissa. Identical (field, alpha, seed) triples give bit-identical
/// output.
ScalarField dither(const ScalarField& phi_q, double h, const DitherParams& params);

/// S = phi0 / sqrt(phi0^2 + h^2).
ScalarField smoothed_sign(const ScalarField& phi0, double h);

/// rhs = -S * (||grad phi||_godunov - 1) with WENO5 one-sided differences,
/// so that phi + dt*rhs moves the gradient magnitude toward 1.
ScalarField reinit_rhs(const ScalarField& phi, const ScalarField& sign_field, double h);

using IterationCallback = std::function<void(int iteration, const ScalarField& phi)>;

/// TVD-RK3 evolution of the reinitialization equation with the smoothed sign
/// frozen at iteration 0. After every full step, cells whose sign differs
/// from sign(phi0) are clamped back to sign(phi0) * sign_epsilon * h, so the
/// binarization never changes. Reports are appended at iteration 0 and every
/// log_every iterations; on_iteration (when set) fires at iteration 0 and
/// after every step.
ScalarField reinitialize(const ScalarField& phi0, const BinaryField& reference,
                         const std::vector<ScalarField>* exact_gradient,
                         const ReinitParams& params, std::vector<ErrorReport>& reports,
                         const IterationCallback& on_iteration = {});

/// The three convergence measures; gradients use central4 differences.
/// e_D is only filled when an exact gradient is supplied.
ErrorReport error_metrics(const ScalarField& phi, const BinaryField& reference,
                          const std::vector<ScalarField>* exact_gradient, int iteration = 0);

struct Histogram {
    std::vector<double> bin_edges; // bins + 1 ascending edges
    std::vector<std::int64_t> counts;
    std::int64_t sample_count = 0; // band cells kept (excludes singular cells)
    double mean = 0.0;
    double stddev = 0.0;
    double median = 0.0;
    double vmin = 0.0;
    double vmax = 0.0;
};

/// Histogram of curvature (2D) or mean curvature (3D) over the cells with
/// |phi| < band_halfwidth, singular-sentinel cells excluded; fixed-width bins
/// over [range_min, range_max], out-of-range samples clamped to the end bins.
Histogram curvature_band_histogram(const ScalarField& phi, double band_halfwidth, int bins,
                                   double range_min, double range_max);

} // namespace sdfkit
