#include "sdfkit/stencil.hpp"

#include <cmath>
#include <stdexcept>

namespace sdfkit {

namespace {

constexpr int kGhost = 3;

void check_axis(const GridSpec& spec, int axis) {
    if (axis < 0 || axis >= spec.ndim) throw std::invalid_argument("stencil: axis out of range");
}

void check_extent(const GridSpec& spec, int axis, int halo, const char* op) {
    if (spec.dims[static_cast<std::size_t>(axis)] < halo + 1)
        throw std::invalid_argument(std::string(op) + ": field too small along axis for the stencil");
}

// Copies one grid line into `buf` with kGhost linearly extrapolated cells on
// each side. buf[kGhost + i] is line cell i.
void load_line(const ScalarField& phi, std::int64_t base, std::int64_t stride, int extent,
               std::vector<double>& buf) {
    for (int i = 0; i < extent; ++i)
        buf[static_cast<std::size_t>(kGhost + i)] = phi[base + i * stride];
    const double left = buf[kGhost];
    const double right = buf[static_cast<std::size_t>(kGhost + extent - 1)];
    const double slope_left = extent > 1 ? buf[kGhost + 1] - buf[kGhost] : 0.0;
    const double slope_right =
        extent > 1 ? buf[static_cast<std::size_t>(kGhost + extent - 1)] - buf[static_cast<std::size_t>(kGhost + extent - 2)] : 0.0;
    for (int g = 1; g <= kGhost; ++g) {
        buf[static_cast<std::size_t>(kGhost - g)] = left - g * slope_left;
        buf[static_cast<std::size_t>(kGhost + extent - 1 + g)] = right + g * slope_right;
    }
}

double weno_combine(double v1, double v2, double v3, double v4, double v5) {
    const double s0 = (13.0 / 12.0) * (v1 - 2.0 * v2 + v3) * (v1 - 2.0 * v2 + v3) +
                      0.25 * (v1 - 4.0 * v2 + 3.0 * v3) * (v1 - 4.0 * v2 + 3.0 * v3);
    const double s1 = (13.0 / 12.0) * (v2 - 2.0 * v3 + v4) * (v2 - 2.0 * v3 + v4) +
                      0.25 * (v2 - v4) * (v2 - v4);
    const double s2 = (13.0 / 12.0) * (v3 - 2.0 * v4 + v5) * (v3 - 2.0 * v4 + v5) +
                      0.25 * (3.0 * v3 - 4.0 * v4 + v5) * (3.0 * v3 - 4.0 * v4 + v5);
    const double a0 = 0.1 / ((kWenoEpsilon + s0) * (kWenoEpsilon + s0));
    const double a1 = 0.6 / ((kWenoEpsilon + s1) * (kWenoEpsilon + s1));
    const double a2 = 0.3 / ((kWenoEpsilon + s2) * (kWenoEpsilon + s2));
    const double sum = a0 + a1 + a2;
    const double r0 = v1 / 3.0 - 7.0 * v2 / 6.0 + 11.0 * v3 / 6.0;
    const double r1 = -v2 / 6.0 + 5.0 * v3 / 6.0 + v4 / 3.0;
    const double r2 = v3 / 3.0 + 5.0 * v4 / 6.0 - v5 / 6.0;
    return (a0 * r0 + a1 * r1 + a2 * r2) / sum;
}

template <class PerCell>
ScalarField apply_along_axis(const ScalarField& phi, int axis, PerCell&& per_cell) {
    const GridSpec& spec = phi.spec;
    const auto strides = spec.strides();
    const int extent = spec.dims[static_cast<std::size_t>(axis)];
    const std::int64_t stride = strides[static_cast<std::size_t>(axis)];
    const std::int64_t n = spec.cell_count();
    const std::int64_t line_count = n / extent;

    ScalarField out = ScalarField::zeros(spec);
    std::vector<double> buf(static_cast<std::size_t>(extent + 2 * kGhost));
    for (std::int64_t line = 0; line < line_count; ++line) {
        std::int64_t base = 0;
        std::int64_t rest = line;
        for (int a = spec.ndim - 1; a >= 0; --a) {
            if (a == axis) continue;
            const std::int64_t dim = spec.dims[static_cast<std::size_t>(a)];
            base += (rest % dim) * strides[static_cast<std::size_t>(a)];
            rest /= dim;
        }
        load_line(phi, base, stride, extent, buf);
        for (int i = 0; i < extent; ++i)
            out[base + i * stride] = per_cell(buf.data() + kGhost + i);
    }
    return out;
}

} // namespace

int scheme_halo(Scheme scheme) {
    switch (scheme) {
        case Scheme::forward1:
        case Scheme::backward1:
        case Scheme::central2:
            return 1;
        case Scheme::central4:
            return 2;
        case Scheme::weno5_minus:
        case Scheme::weno5_plus:
            return 3;
    }
    return 1;
}

ScalarField diff(const ScalarField& phi, const StencilSpec& spec) {
    check_axis(phi.spec, spec.axis);
    check_extent(phi.spec, spec.axis, scheme_halo(spec.scheme), "diff");
    const double h = phi.spec.spacing;
    const double inv_h = 1.0 / h;
    switch (spec.scheme) {
        case Scheme::forward1:
            return apply_along_axis(phi, spec.axis, [inv_h](const double* p) { return (p[1] - p[0]) * inv_h; });
        case Scheme::backward1:
            return apply_along_axis(phi, spec.axis, [inv_h](const double* p) { return (p[0] - p[-1]) * inv_h; });
        case Scheme::central2:
            return apply_along_axis(phi, spec.axis,
                                    [inv_h](const double* p) { return (p[1] - p[-1]) * (0.5 * inv_h); });
        case Scheme::central4:
            return apply_along_axis(phi, spec.axis, [inv_h](const double* p) {
                return (-p[2] + 8.0 * p[1] - 8.0 * p[-1] + p[-2]) * (inv_h / 12.0);
            });
        case Scheme::weno5_minus:
            return apply_along_axis(phi, spec.axis, [inv_h](const double* p) {
                return weno_combine((p[-2] - p[-3]) * inv_h, (p[-1] - p[-2]) * inv_h, (p[0] - p[-1]) * inv_h,
                                    (p[1] - p[0]) * inv_h, (p[2] - p[1]) * inv_h);
            });
        case Scheme::weno5_plus:
            return apply_along_axis(phi, spec.axis, [inv_h](const double* p) {
                return weno_combine((p[3] - p[2]) * inv_h, (p[2] - p[1]) * inv_h, (p[1] - p[0]) * inv_h,
                                    (p[0] - p[-1]) * inv_h, (p[-1] - p[-2]) * inv_h);
            });
    }
    throw std::invalid_argument("diff: unknown scheme");
}

ScalarField second_diff(const ScalarField& phi, int axis) {
    check_axis(phi.spec, axis);
    check_extent(phi.spec, axis, 1, "second_diff");
    const double inv_h2 = 1.0 / (phi.spec.spacing * phi.spec.spacing);
    return apply_along_axis(phi, axis,
                            [inv_h2](const double* p) { return (p[1] - 2.0 * p[0] + p[-1]) * inv_h2; });
}

ScalarField mixed_diff(const ScalarField& phi, int axis_a, int axis_b) {
    check_axis(phi.spec, axis_a);
    check_axis(phi.spec, axis_b);
    return diff(diff(phi, {Scheme::central2, axis_b}), {Scheme::central2, axis_a});
}

ScalarField gradient_magnitude(const ScalarField& phi, Scheme scheme) {
    ScalarField out = ScalarField::zeros(phi.spec);
    for (int a = 0; a < phi.spec.ndim; ++a) {
        const ScalarField d = diff(phi, {scheme, a});
        for (std::int64_t i = 0; i < out.size(); ++i) out[i] += d[i] * d[i];
    }
    for (std::int64_t i = 0; i < out.size(); ++i) out[i] = std::sqrt(out[i]);
    return out;
}

ScalarField laplacian(const ScalarField& phi) {
    ScalarField out = ScalarField::zeros(phi.spec);
    for (int a = 0; a < phi.spec.ndim; ++a) {
        const ScalarField d = second_diff(phi, a);
        for (std::int64_t i = 0; i < out.size(); ++i) out[i] += d[i];
    }
    return out;
}

ScalarField curvature_2d(const ScalarField& phi) {
    if (phi.spec.ndim != 2) throw std::invalid_argument("curvature_2d: field must be 2D");
    const ScalarField px = diff(phi, {Scheme::central2, 0});
    const ScalarField py = diff(phi, {Scheme::central2, 1});
    const ScalarField pxx = second_diff(phi, 0);
    const ScalarField pyy = second_diff(phi, 1);
    const ScalarField pxy = mixed_diff(phi, 0, 1);
    ScalarField out = ScalarField::zeros(phi.spec);
    for (std::int64_t i = 0; i < out.size(); ++i) {
        const double g2 = px[i] * px[i] + py[i] * py[i];
        if (std::sqrt(g2) < kCurvatureGradFloor) {
            out[i] = kCurvatureSingular;
            continue;
        }
        out[i] = (py[i] * py[i] * pxx[i] - 2.0 * px[i] * py[i] * pxy[i] + px[i] * px[i] * pyy[i]) /
                 (g2 * std::sqrt(g2));
    }
    return out;
}

ScalarField mean_curvature_3d(const ScalarField& phi) {
    if (phi.spec.ndim != 3) throw std::invalid_argument("mean_curvature_3d: field must be 3D");
    const ScalarField px = diff(phi, {Scheme::central2, 0});
    const ScalarField py = diff(phi, {Scheme::central2, 1});
    const ScalarField pz = diff(phi, {Scheme::central2, 2});
    const ScalarField pxx = second_diff(phi, 0);
    const ScalarField pyy = second_diff(phi, 1);
    const ScalarField pzz = second_diff(phi, 2);
    const ScalarField pxy = mixed_diff(phi, 0, 1);
    const ScalarField pyz = mixed_diff(phi, 1, 2);
    const ScalarField pxz = mixed_diff(phi, 0, 2);
    ScalarField out = ScalarField::zeros(phi.spec);
    for (std::int64_t i = 0; i < out.size(); ++i) {
        const double gx = px[i], gy = py[i], gz = pz[i];
        const double g2 = gx * gx + gy * gy + gz * gz;
        if (std::sqrt(g2) < kCurvatureGradFloor) {
            out[i] = kCurvatureSingular;
            continue;
        }
        const double num = pxx[i] * (gy * gy + gz * gz) + pyy[i] * (gx * gx + gz * gz) +
                           pzz[i] * (gx * gx + gy * gy) -
                           2.0 * (gx * gy * pxy[i] + gy * gz * pyz[i] + gx * gz * pxz[i]);
        out[i] = num / (g2 * std::sqrt(g2));
    }
    return out;
}

ScalarField weno5(const ScalarField& phi, int axis, WenoSide side) {
    return diff(phi, {side == WenoSide::minus ? Scheme::weno5_minus : Scheme::weno5_plus, axis});
}

ScalarField godunov_gradmag(const std::vector<ScalarField>& minus_diffs,
                            const std::vector<ScalarField>& plus_diffs,
                            const ScalarField& sign_field) {
    const GridSpec& spec = sign_field.spec;
    if (minus_diffs.size() != static_cast<std::size_t>(spec.ndim) ||
        plus_diffs.size() != static_cast<std::size_t>(spec.ndim))
        throw std::invalid_argument("godunov_gradmag: need one minus/plus field per axis");
    for (int a = 0; a < spec.ndim; ++a)
        if (minus_diffs[static_cast<std::size_t>(a)].spec != spec || plus_diffs[static_cast<std::size_t>(a)].spec != spec)
            throw std::invalid_argument("godunov_gradmag: field specs must match");

    ScalarField out = ScalarField::zeros(spec);
    for (std::int64_t i = 0; i < out.size(); ++i) {
        const double s = sign_field[i];
        if (s == 0.0) continue;
        double sum = 0.0;
        for (int a = 0; a < spec.ndim; ++a) {
            const double m = minus_diffs[static_cast<std::size_t>(a)][i];
            const double p = plus_diffs[static_cast<std::size_t>(a)][i];
            double lo, hi;
            if (s > 0.0) {
                lo = std::max(m, 0.0);
                hi = std::min(p, 0.0);
            } else {
                lo = std::min(m, 0.0);
                hi = std::max(p, 0.0);
            }
            sum += std::max(lo * lo, hi * hi);
        }
        out[i] = std::sqrt(sum);
    }
    return out;
}

} // namespace sdfkit
