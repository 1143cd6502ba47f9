#pragma once

#include <vector>

#include "sdfkit/grid.hpp"

namespace sdfkit {

enum class Scheme { forward1, backward1, central2, central4, weno5_minus, weno5_plus };
enum class WenoSide { minus, plus };

struct StencilSpec {
    Scheme scheme = Scheme::central2;
    int axis = 0;
};

/// Ghost cells required on each side of a line for the scheme.
int scheme_halo(Scheme scheme);

/// Regularization added to the WENO smoothness indicators.
inline constexpr double kWenoEpsilon = 1e-6;

/// Sentinel for curvature at cells with ||grad phi|| below the guard;
/// finite, recognizable, excluded from statistics.
inline constexpr double kCurvatureSingular = 1e30;
inline constexpr double kCurvatureGradFloor = 1e-8;

/// First-derivative stencil along one axis. Out-of-range reads come from 3
/// ghost cells per side filled by linear extrapolation with the one-sided
/// first difference at the edge.
ScalarField diff(const ScalarField& phi, const StencilSpec& spec);

/// (phi(x+h) - 2 phi(x) + phi(x-h)) / h^2 along `axis`.
ScalarField second_diff(const ScalarField& phi, int axis);

/// Central first difference along axis_a of the central first difference
/// along axis_b.
ScalarField mixed_diff(const ScalarField& phi, int axis_a, int axis_b);

/// Per-cell Euclidean norm of the per-axis differences under `scheme`.
ScalarField gradient_magnitude(const ScalarField& phi, Scheme scheme);

/// Sum of second differences over all axes.
ScalarField laplacian(const ScalarField& phi);

/// (py^2 pxx - 2 px py pxy + px^2 pyy) / (px^2 + py^2)^(3/2), first
/// derivatives central2. Cells with gradient below the floor get the
/// singular sentinel.
ScalarField curvature_2d(const ScalarField& phi);

/// div(grad phi / ||grad phi||) via the first/second-derivative expansion;
/// 2/rho on a sphere sampled at radius rho. Same singular guard.
ScalarField mean_curvature_3d(const ScalarField& phi);

/// Fifth-order WENO reconstruction of the one-sided first derivative.
ScalarField weno5(const ScalarField& phi, int axis, WenoSide side);

/// Upwind (Godunov) gradient magnitude from per-axis one-sided differences,
/// switched by the sign of `sign_field`:
///   sign > 0: per-axis max(max(a,0)^2, min(b,0)^2)
///   sign < 0: per-axis max(min(a,0)^2, max(b,0)^2)
///   sign = 0: 0
/// with a the backward (minus) and b the forward (plus) difference.
ScalarField godunov_gradmag(const std::vector<ScalarField>& minus_diffs,
                            const std::vector<ScalarField>& plus_diffs,
                            const ScalarField& sign_field);

} // namespace sdfkit
