#include "sdfkit/dt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sdfkit {

namespace {

// Large-but-safe sentinel for "no target seen yet" in the squared-distance
// scans; headroom so sentinel + max squared index offset cannot overflow.
constexpr std::int64_t kFar2 = std::int64_t(4e17);

bool in_target(std::uint8_t v, Target t) {
    return t == Target::foreground ? v != 0 : v == 0;
}

// Exact 1D lower-envelope transform of squared distances:
//   d[p] = min_q ((p - q)^2 + f[q])
// Values stay in exact int64 arithmetic; the parabola intersection uses
// doubles, which cannot change an integer-valued minimum.
void edt_line(const std::vector<std::int64_t>& f, int n, std::vector<std::int64_t>& d,
              std::vector<int>& v, std::vector<double>& z) {
    int k = 0;
    v[0] = 0;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    auto intersect = [&](int q, int r) {
        const std::int64_t fq = f[static_cast<std::size_t>(q)] + std::int64_t(q) * q;
        const std::int64_t fr = f[static_cast<std::size_t>(r)] + std::int64_t(r) * r;
        return static_cast<double>(fq - fr) / (2.0 * static_cast<double>(q - r));
    };
    for (int q = 1; q < n; ++q) {
        double s = intersect(q, v[static_cast<std::size_t>(k)]);
        while (s <= z[static_cast<std::size_t>(k)]) {
            --k;
            s = intersect(q, v[static_cast<std::size_t>(k)]);
        }
        ++k;
        v[static_cast<std::size_t>(k)] = q;
        z[static_cast<std::size_t>(k)] = s;
        z[static_cast<std::size_t>(k) + 1] = std::numeric_limits<double>::infinity();
    }
    k = 0;
    for (int p = 0; p < n; ++p) {
        while (z[static_cast<std::size_t>(k) + 1] < static_cast<double>(p)) ++k;
        const int q = v[static_cast<std::size_t>(k)];
        d[static_cast<std::size_t>(p)] = std::int64_t(p - q) * (p - q) + f[static_cast<std::size_t>(q)];
    }
}

// Exact squared euclidean distance (in index units) to the target set.
std::vector<std::int64_t> squared_euclidean(const BinaryField& b, Target target) {
    const GridSpec& spec = b.spec;
    const std::int64_t n = spec.cell_count();
    std::vector<std::int64_t> d2(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        d2[static_cast<std::size_t>(i)] = in_target(b[i], target) ? 0 : kFar2;

    const auto strides = spec.strides();
    std::vector<std::int64_t> f, out;
    std::vector<int> v;
    std::vector<double> z;
    for (int axis = 0; axis < spec.ndim; ++axis) {
        const int extent = spec.dims[static_cast<std::size_t>(axis)];
        if (extent == 1) continue;
        const std::int64_t stride = strides[static_cast<std::size_t>(axis)];
        const std::int64_t line_count = n / extent;
        f.assign(static_cast<std::size_t>(extent), 0);
        out.assign(static_cast<std::size_t>(extent), 0);
        v.assign(static_cast<std::size_t>(extent), 0);
        z.assign(static_cast<std::size_t>(extent) + 1, 0.0);
        for (std::int64_t line = 0; line < line_count; ++line) {
            // Base linear index of this line: distribute `line` over the
            // non-axis dims.
            std::int64_t base = 0;
            std::int64_t rest = line;
            for (int a = spec.ndim - 1; a >= 0; --a) {
                if (a == axis) continue;
                const std::int64_t dim = spec.dims[static_cast<std::size_t>(a)];
                const std::int64_t coord = rest % dim;
                rest /= dim;
                base += coord * strides[static_cast<std::size_t>(a)];
            }
            for (int i = 0; i < extent; ++i) f[static_cast<std::size_t>(i)] = d2[static_cast<std::size_t>(base + i * stride)];
            edt_line(f, extent, out, v, z);
            for (int i = 0; i < extent; ++i) d2[static_cast<std::size_t>(base + i * stride)] = out[static_cast<std::size_t>(i)];
        }
    }
    return d2;
}

// Chamfer-style sequential scan. Mask offsets and weights come from the
// metric; runs forward+backward sweeps until stable (regular 2D masks settle
// after the first pair of sweeps).
struct MaskStep {
    std::array<std::int64_t, kMaxNdim> offset;
    double weight;
};

std::vector<MaskStep> scan_mask(const Metric& m, int ndim) {
    std::vector<MaskStep> steps;
    std::array<std::int64_t, kMaxNdim> off{0, 0, 0};
    const int lo = -1, hi = 1;
    auto push_all = [&](auto&& self, int axis) -> void {
        if (axis == ndim) {
            int nonzero = 0;
            for (int a = 0; a < ndim; ++a) nonzero += off[static_cast<std::size_t>(a)] != 0;
            if (nonzero == 0) return;
            double w = 0.0;
            switch (m.kind) {
                case MetricKind::manhattan:
                    if (nonzero != 1) return;
                    w = 1.0;
                    break;
                case MetricKind::chebyshev:
                    w = 1.0;
                    break;
                case MetricKind::chamfer:
                    if (nonzero == 1) w = m.chamfer_axial;
                    else if (nonzero == 2) w = m.chamfer_diagonal;
                    else return;
                    break;
                case MetricKind::euclidean:
                    return; // handled by the separable scan
            }
            steps.push_back(MaskStep{off, w});
            return;
        }
        for (int d = lo; d <= hi; ++d) {
            off[static_cast<std::size_t>(axis)] = d;
            self(self, axis + 1);
        }
        off[static_cast<std::size_t>(axis)] = 0;
    };
    push_all(push_all, 0);
    return steps;
}

std::vector<double> chamfer_scan(const BinaryField& b, const Metric& metric, Target target) {
    const GridSpec& spec = b.spec;
    const std::int64_t n = spec.cell_count();
    const auto strides = spec.strides();
    std::vector<double> dist(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        dist[static_cast<std::size_t>(i)] = in_target(b[i], target) ? 0.0 : std::numeric_limits<double>::infinity();

    const std::vector<MaskStep> steps = scan_mask(metric, spec.ndim);
    std::vector<MaskStep> forward, backward;
    for (const MaskStep& s : steps) {
        std::int64_t lin = 0;
        for (int a = 0; a < spec.ndim; ++a) lin += s.offset[static_cast<std::size_t>(a)] * strides[static_cast<std::size_t>(a)];
        (lin < 0 ? forward : backward).push_back(s);
    }

    auto relax = [&](std::int64_t i, const std::vector<MaskStep>& mask) {
        const auto nd = spec.nd_index(i);
        double best = dist[static_cast<std::size_t>(i)];
        for (const MaskStep& s : mask) {
            bool ok = true;
            std::int64_t j = i;
            for (int a = 0; a < spec.ndim; ++a) {
                const std::int64_t c = nd[static_cast<std::size_t>(a)] + s.offset[static_cast<std::size_t>(a)];
                if (c < 0 || c >= spec.dims[static_cast<std::size_t>(a)]) {
                    ok = false;
                    break;
                }
                j += s.offset[static_cast<std::size_t>(a)] * strides[static_cast<std::size_t>(a)];
            }
            if (!ok) continue;
            const double cand = dist[static_cast<std::size_t>(j)] + s.weight;
            if (cand < best) best = cand;
        }
        dist[static_cast<std::size_t>(i)] = best;
    };

    for (int sweep = 0; sweep < 8; ++sweep) {
        std::vector<double> before = dist;
        for (std::int64_t i = 0; i < n; ++i) relax(i, forward);
        for (std::int64_t i = n - 1; i >= 0; --i) relax(i, backward);
        if (dist == before) break;
    }
    return dist;
}

std::vector<double> unsigned_distance(const BinaryField& b, const Metric& metric, Target target) {
    if (count_target(b, target) == 0)
        throw EmptySetError("distance_transform: target set is empty");
    const std::int64_t n = b.spec.cell_count();
    std::vector<double> d(static_cast<std::size_t>(n));
    if (metric.kind == MetricKind::euclidean) {
        const std::vector<std::int64_t> d2 = squared_euclidean(b, target);
        for (std::int64_t i = 0; i < n; ++i)
            d[static_cast<std::size_t>(i)] = b.spec.spacing * std::sqrt(static_cast<double>(d2[static_cast<std::size_t>(i)]));
    } else {
        const std::vector<double> lattice = chamfer_scan(b, metric, target);
        for (std::int64_t i = 0; i < n; ++i)
            d[static_cast<std::size_t>(i)] = b.spec.spacing * lattice[static_cast<std::size_t>(i)];
    }
    return d;
}

} // namespace

Metric Metric::chamfer(double axial, double diagonal) {
    Metric m{MetricKind::chamfer, axial, diagonal};
    m.validate();
    return m;
}

void Metric::validate() const {
    if (kind != MetricKind::chamfer) return;
    if (!(chamfer_axial > 0.0) || !(chamfer_diagonal > 0.0))
        throw std::invalid_argument("Metric: chamfer weights must be positive");
    if (!(chamfer_axial <= chamfer_diagonal) || !(chamfer_diagonal <= 2.0 * chamfer_axial))
        throw std::invalid_argument("Metric: chamfer weights must satisfy axial <= diagonal <= 2*axial");
}

double Metric::level(const std::array<std::int64_t, kMaxNdim>& offset, int ndim) const {
    std::array<std::int64_t, kMaxNdim> m{0, 0, 0};
    for (int a = 0; a < ndim; ++a) m[static_cast<std::size_t>(a)] = std::llabs(offset[static_cast<std::size_t>(a)]);
    switch (kind) {
        case MetricKind::euclidean: {
            std::int64_t sq = 0;
            for (int a = 0; a < ndim; ++a) sq += m[static_cast<std::size_t>(a)] * m[static_cast<std::size_t>(a)];
            return std::sqrt(static_cast<double>(sq));
        }
        case MetricKind::manhattan: {
            std::int64_t s = 0;
            for (int a = 0; a < ndim; ++a) s += m[static_cast<std::size_t>(a)];
            return static_cast<double>(s);
        }
        case MetricKind::chebyshev: {
            std::int64_t mx = 0;
            for (int a = 0; a < ndim; ++a) mx = std::max(mx, m[static_cast<std::size_t>(a)]);
            return static_cast<double>(mx);
        }
        case MetricKind::chamfer: {
            // Minimum path cost with axial steps (weight a) and two-axis
            // diagonal steps (weight d), a <= d <= 2a: use as many diagonals
            // as the coordinate multiset allows.
            std::sort(m.begin(), m.end(), std::greater<>());
            const std::int64_t total = m[0] + m[1] + m[2];
            const std::int64_t rest = total - m[0];
            std::int64_t diagonals, axials;
            if (m[0] >= rest) {
                diagonals = rest;
                axials = m[0] - rest;
            } else {
                diagonals = total / 2;
                axials = total % 2;
            }
            return static_cast<double>(diagonals) * chamfer_diagonal +
                   static_cast<double>(axials) * chamfer_axial;
        }
    }
    return 0.0;
}

std::int64_t count_target(const BinaryField& b, Target target) {
    std::int64_t c = 0;
    for (std::uint8_t v : b.values) c += in_target(v, target) ? 1 : 0;
    return c;
}

ScalarField distance_transform(const BinaryField& b, const Metric& metric, Target target) {
    b.spec.validate();
    metric.validate();
    ScalarField out = ScalarField::zeros(b.spec);
    out.values = unsigned_distance(b, metric, target);
    return out;
}

IndexField feature_transform(const BinaryField& b, Target target) {
    const GridSpec& spec = b.spec;
    spec.validate();
    if (count_target(b, target) == 0)
        throw EmptySetError("feature_transform: target set is empty");

    const int last = spec.ndim - 1;
    const int cols = spec.dims[static_cast<std::size_t>(last)];
    const std::int64_t n = spec.cell_count();
    const std::int64_t line_count = n / cols;

    // Nearest target column within each line along the last axis, ties to
    // the smaller column (-1 when the line holds no target). Lines are
    // contiguous because the last axis has stride 1.
    std::vector<std::int64_t> nearest_col(static_cast<std::size_t>(n), -1);
    for (std::int64_t line = 0; line < line_count; ++line) {
        const std::int64_t base = line * cols;
        std::int64_t last_seen = -1;
        for (int j = 0; j < cols; ++j) {
            if (in_target(b[base + j], target)) last_seen = j;
            nearest_col[static_cast<std::size_t>(base + j)] = last_seen;
        }
        std::int64_t next_seen = -1;
        for (int j = cols - 1; j >= 0; --j) {
            if (in_target(b[base + j], target)) next_seen = j;
            const std::int64_t left = nearest_col[static_cast<std::size_t>(base + j)];
            if (next_seen >= 0) {
                if (left < 0 || next_seen - j < j - left)
                    nearest_col[static_cast<std::size_t>(base + j)] = next_seen;
                // equal distance keeps the smaller (left) column
            }
        }
    }

    // For each cell, scan candidate lines in ascending raster order; within a
    // line the nearest column above is optimal. Strictly smaller distance
    // wins; ties keep the earlier candidate, which is the smaller linear
    // index.
    IndexField out{spec, std::vector<std::int64_t>(static_cast<std::size_t>(n), -1)};
    std::vector<std::array<std::int64_t, kMaxNdim>> line_lead(static_cast<std::size_t>(line_count));
    for (std::int64_t line = 0; line < line_count; ++line) {
        std::array<std::int64_t, kMaxNdim> lead{0, 0, 0};
        std::int64_t rest = line;
        for (int a = last - 1; a >= 0; --a) {
            lead[static_cast<std::size_t>(a)] = rest % spec.dims[static_cast<std::size_t>(a)];
            rest /= spec.dims[static_cast<std::size_t>(a)];
        }
        line_lead[static_cast<std::size_t>(line)] = lead;
    }

    for (std::int64_t i = 0; i < n; ++i) {
        const auto nd = spec.nd_index(i);
        const std::int64_t j = nd[static_cast<std::size_t>(last)];
        std::int64_t best_d2 = std::numeric_limits<std::int64_t>::max();
        std::int64_t best_site = -1;
        for (std::int64_t line = 0; line < line_count; ++line) {
            const std::int64_t c = nearest_col[static_cast<std::size_t>(line * cols + j)];
            if (c < 0) continue;
            const auto& lead = line_lead[static_cast<std::size_t>(line)];
            std::int64_t d2 = (j - c) * (j - c);
            for (int a = 0; a < last; ++a) {
                const std::int64_t dd = nd[static_cast<std::size_t>(a)] - lead[static_cast<std::size_t>(a)];
                d2 += dd * dd;
            }
            if (d2 < best_d2) {
                best_d2 = d2;
                best_site = line * cols + c;
            }
        }
        out.values[static_cast<std::size_t>(i)] = best_site;
    }
    return out;
}

ScalarField signed_distance_transform(const BinaryField& b, const Metric& metric, bool corrected) {
    b.spec.validate();
    metric.validate();
    if (count_target(b, Target::foreground) == 0 || count_target(b, Target::background) == 0)
        throw EmptySetError("signed_distance_transform: needs non-empty foreground and background");

    const std::vector<double> d_fg = unsigned_distance(b, metric, Target::foreground);
    const std::vector<double> d_bg = unsigned_distance(b, metric, Target::background);
    const double half = 0.5 * b.spec.spacing;

    ScalarField out = ScalarField::zeros(b.spec);
    const std::int64_t n = b.spec.cell_count();
    for (std::int64_t i = 0; i < n; ++i) {
        if (b[i]) {
            const double d = d_bg[static_cast<std::size_t>(i)];
            out[i] = corrected ? half - d : -d;
        } else {
            const double d = d_fg[static_cast<std::size_t>(i)];
            out[i] = corrected ? -half + d : d;
        }
    }
    return out;
}

} // namespace sdfkit
