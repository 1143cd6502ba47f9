#include "sdfkit/reinit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sdfkit/stencil.hpp"

namespace sdfkit {

namespace {

std::uint64_t splitmix64_finalize(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

// Deterministic per-cell draw in the open interval (-1, 1); no sequential
// generator state, so results do not depend on evaluation order.
double uniform_open(std::uint64_t seed, std::int64_t linear_index) {
    const std::uint64_t mix = splitmix64_finalize(seed ^ static_cast<std::uint64_t>(linear_index));
    const double m = static_cast<double>(mix >> 11); // 53 bits
    return (m + 0.5) * (1.0 / 4503599627370496.0) - 1.0; // / 2^52
}

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

ErrorReport metrics_impl(const ScalarField& phi, const BinaryField& reference,
                         const std::vector<ScalarField>* exact_gradient, int iteration) {
    if (phi.spec != reference.spec) throw std::invalid_argument("error_metrics: field specs must match");
    const std::int64_t n = phi.size();

    ErrorReport report;
    report.iteration = iteration;

    const BinaryField recon = binarize(phi);
    double e_r = 0.0;
    for (std::int64_t i = 0; i < n; ++i)
        e_r = std::max(e_r, std::abs(static_cast<double>(recon[i]) - static_cast<double>(reference[i])));
    report.e_R = e_r;

    std::vector<ScalarField> grad;
    grad.reserve(static_cast<std::size_t>(phi.spec.ndim));
    for (int a = 0; a < phi.spec.ndim; ++a) grad.push_back(diff(phi, {Scheme::central4, a}));

    double mg_sum = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        double g2 = 0.0;
        for (int a = 0; a < phi.spec.ndim; ++a) {
            const double g = grad[static_cast<std::size_t>(a)][i];
            g2 += g * g;
        }
        const double dev = std::sqrt(g2) - 1.0;
        mg_sum += dev * dev;
    }
    report.e_MG = std::sqrt(mg_sum) / static_cast<double>(n);

    if (exact_gradient) {
        if (exact_gradient->size() != static_cast<std::size_t>(phi.spec.ndim))
            throw std::invalid_argument("error_metrics: exact gradient needs one field per axis");
        for (const ScalarField& g : *exact_gradient)
            if (g.spec != phi.spec) throw std::invalid_argument("error_metrics: field specs must match");
        double d_sum = 0.0;
        for (std::int64_t i = 0; i < n; ++i) {
            double cell = 0.0;
            for (int a = 0; a < phi.spec.ndim; ++a) {
                const double e = grad[static_cast<std::size_t>(a)][i] - (*exact_gradient)[static_cast<std::size_t>(a)][i];
                cell += e * e;
            }
            d_sum += cell;
        }
        report.e_D = std::sqrt(d_sum) / static_cast<double>(n);
    }
    return report;
}

} // namespace

ScalarField dither(const ScalarField& phi_q, double h, const DitherParams& params) {
    if (!(params.alpha > 1.0)) throw std::invalid_argument("dither: alpha must be > 1");
    if (h != phi_q.spec.spacing) throw std::invalid_argument("dither: spacing does not match the field");
    const double cap = h / params.alpha;
    ScalarField out = ScalarField::zeros(phi_q.spec);
    const std::int64_t n = phi_q.size();
    for (std::int64_t i = 0; i < n; ++i) {
        const double v = phi_q[i];
        if (v == 0.0)
            throw std::invalid_argument("dither: zero-valued cell violates the sign-preservation contract");
        const double amplitude = std::min(cap, std::abs(v));
        out[i] = v + amplitude * uniform_open(params.seed, i);
    }
    return out;
}

ScalarField smoothed_sign(const ScalarField& phi0, double h) {
    ScalarField out = ScalarField::zeros(phi0.spec);
    for (std::int64_t i = 0; i < phi0.size(); ++i)
        out[i] = phi0[i] / std::sqrt(phi0[i] * phi0[i] + h * h);
    return out;
}

ScalarField reinit_rhs(const ScalarField& phi, const ScalarField& sign_field, double h) {
    if (phi.spec != sign_field.spec) throw std::invalid_argument("reinit_rhs: field specs must match");
    if (h != phi.spec.spacing) throw std::invalid_argument("reinit_rhs: spacing does not match the field");
    std::vector<ScalarField> minus, plus;
    minus.reserve(static_cast<std::size_t>(phi.spec.ndim));
    plus.reserve(static_cast<std::size_t>(phi.spec.ndim));
    for (int a = 0; a < phi.spec.ndim; ++a) {
        minus.push_back(weno5(phi, a, WenoSide::minus));
        plus.push_back(weno5(phi, a, WenoSide::plus));
    }
    ScalarField rhs = godunov_gradmag(minus, plus, sign_field);
    for (std::int64_t i = 0; i < rhs.size(); ++i) rhs[i] = -sign_field[i] * (rhs[i] - 1.0);
    return rhs;
}

ScalarField reinitialize(const ScalarField& phi0, const BinaryField& reference,
                         const std::vector<ScalarField>* exact_gradient,
                         const ReinitParams& params, std::vector<ErrorReport>& reports,
                         const IterationCallback& on_iteration) {
    if (params.iterations < 1) throw std::invalid_argument("reinitialize: iterations must be >= 1");
    if (!(params.cfl > 0.0) || !(params.cfl < 1.0))
        throw std::invalid_argument("reinitialize: cfl must be in (0,1)");
    if (params.log_every < 1) throw std::invalid_argument("reinitialize: log_every must be >= 1");
    if (phi0.spec != reference.spec) throw std::invalid_argument("reinitialize: field specs must match");
    {
        const BinaryField recon = binarize(phi0);
        for (std::int64_t i = 0; i < recon.size(); ++i)
            if (recon[i] != reference[i])
                throw std::invalid_argument("reinitialize: input does not represent the reference set");
    }

    const double h = phi0.spec.spacing;
    const double dt = params.cfl * h;
    const double clamp = params.sign_epsilon * h;
    const ScalarField sign = smoothed_sign(phi0, h);
    const std::int64_t n = phi0.size();

    ScalarField phi = phi0;
    reports.push_back(metrics_impl(phi, reference, exact_gradient, 0));
    if (on_iteration) on_iteration(0, phi);

    for (int iter = 1; iter <= params.iterations; ++iter) {
        // TVD-RK3: stage combinations 1, 1/4:3/4, 1/3:2/3.
        ScalarField k1 = reinit_rhs(phi, sign, h);
        ScalarField stage1 = ScalarField::zeros(phi.spec);
        for (std::int64_t i = 0; i < n; ++i) stage1[i] = phi[i] + dt * k1[i];

        ScalarField k2 = reinit_rhs(stage1, sign, h);
        ScalarField stage2 = ScalarField::zeros(phi.spec);
        for (std::int64_t i = 0; i < n; ++i)
            stage2[i] = 0.75 * phi[i] + 0.25 * (stage1[i] + dt * k2[i]);

        ScalarField k3 = reinit_rhs(stage2, sign, h);
        for (std::int64_t i = 0; i < n; ++i)
            phi[i] = (1.0 / 3.0) * phi[i] + (2.0 / 3.0) * (stage2[i] + dt * k3[i]);

        for (std::int64_t i = 0; i < n; ++i) {
            if (!std::isfinite(phi[i]))
                throw NumericalFailure("reinitialize: non-finite value", iter);
            const int s0 = sign_of(phi0[i]);
            if (sign_of(phi[i]) != s0) phi[i] = s0 * clamp;
        }

        if (iter % params.log_every == 0 || iter == params.iterations)
            reports.push_back(metrics_impl(phi, reference, exact_gradient, iter));
        if (on_iteration) on_iteration(iter, phi);
    }
    return phi;
}

ErrorReport error_metrics(const ScalarField& phi, const BinaryField& reference,
                          const std::vector<ScalarField>* exact_gradient, int iteration) {
    return metrics_impl(phi, reference, exact_gradient, iteration);
}

Histogram curvature_band_histogram(const ScalarField& phi, double band_halfwidth, int bins,
                                   double range_min, double range_max) {
    if (phi.spec.ndim < 2) throw std::invalid_argument("curvature_band_histogram: needs a 2D or 3D field");
    if (bins < 1 || !(range_max > range_min))
        throw std::invalid_argument("curvature_band_histogram: bad bin layout");

    const ScalarField kappa = phi.spec.ndim == 2 ? curvature_2d(phi) : mean_curvature_3d(phi);
    std::vector<double> samples;
    for (std::int64_t i = 0; i < phi.size(); ++i) {
        if (!(std::abs(phi[i]) < band_halfwidth)) continue;
        if (kappa[i] == kCurvatureSingular) continue;
        samples.push_back(kappa[i]);
    }
    if (samples.empty()) throw EmptyBandError("curvature_band_histogram: band selects no cells");

    Histogram hist;
    hist.sample_count = static_cast<std::int64_t>(samples.size());
    hist.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
    const double width = (range_max - range_min) / bins;
    for (int k = 0; k <= bins; ++k) hist.bin_edges[static_cast<std::size_t>(k)] = range_min + width * k;
    hist.counts.assign(static_cast<std::size_t>(bins), 0);

    double sum = 0.0;
    for (double v : samples) {
        sum += v;
        int bin = static_cast<int>(std::floor((v - range_min) / width));
        bin = std::clamp(bin, 0, bins - 1);
        ++hist.counts[static_cast<std::size_t>(bin)];
    }
    hist.mean = sum / static_cast<double>(samples.size());
    double var = 0.0;
    for (double v : samples) var += (v - hist.mean) * (v - hist.mean);
    hist.stddev = std::sqrt(var / static_cast<double>(samples.size()));

    std::sort(samples.begin(), samples.end());
    const std::size_t m = samples.size();
    hist.median = (m % 2 == 1) ? samples[m / 2] : 0.5 * (samples[m / 2 - 1] + samples[m / 2]);
    hist.vmin = samples.front();
    hist.vmax = samples.back();
    return hist;
}

} // namespace sdfkit
