// Built with -ffast-math (and -march=native when available) so the strip
// loops below vectorize, including the libm calls. Each random quantity is
// produced by exactly one code path in this translation unit; callers compare
// against the scalar reference implementations within rounding tolerances.

#include "kernels.hpp"

#include <algorithm>
#include <cmath>

namespace tailest::kernel {

namespace {

constexpr int kStrip = 2048;

// One strip of unit exponentials E = -log(U) from a running stream.
inline void fill_exponentials(rng::Stream& stream, int m, double* out) {
    for (int i = 0; i < m; ++i) out[i] = stream.next_uniform();
    for (int i = 0; i < m; ++i) out[i] = -std::log(out[i]);
}

// sum_{j=n..1} w[j-1] * (E_j - 1), strip-buffered, descending j.
inline double weighted_centered_sum(const double* w, std::uint64_t n,
                                    rng::Stream stream) {
    double ebuf[kStrip];
    double acc = 0.0;
    for (std::uint64_t hi = n; hi > 0;) {
        const int m = static_cast<int>(std::min<std::uint64_t>(hi, kStrip));
        fill_exponentials(stream, m, ebuf);
        const double* wrow = w + hi - 1;
        for (int i = 0; i < m; ++i) acc += wrow[-i] * (ebuf[i] - 1.0);
        hi -= static_cast<std::uint64_t>(m);
    }
    return acc;
}

} // namespace

std::vector<double> power_weights(std::uint64_t n, double exponent) {
    std::vector<double> w(n);
    for (std::uint64_t j = 1; j <= n; ++j)
        w[j - 1] = std::pow(static_cast<double>(j), exponent);
    return w;
}

void limit_law_batch(std::span<const double> weights, double inv_sqrt_norm,
                     std::uint64_t seed, rng::StreamLabel label,
                     std::uint64_t index0, std::span<double> out, bool parallel) {
    const std::int64_t b = static_cast<std::int64_t>(out.size());
    const std::uint64_t n = weights.size();
    const double* w = weights.data();
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t i = 0; i < b; ++i) {
        const auto stream = rng::substream(seed, label, index0 + static_cast<std::uint64_t>(i));
        out[static_cast<std::size_t>(i)] =
            inv_sqrt_norm * weighted_centered_sum(w, n, stream);
    }
}

void mixture_batch(std::uint64_t n_terms, std::uint64_t seed,
                   std::uint64_t index0, std::span<double> out, bool parallel) {
    const std::int64_t b = static_cast<std::int64_t>(out.size());

    // log j table shared across draws; per-draw weights are exp((tau-1) log j).
    std::vector<double> logj(n_terms);
    for (std::uint64_t j = 1; j <= n_terms; ++j)
        logj[j - 1] = std::log(static_cast<double>(j));

#pragma omp parallel if (parallel)
    {
        std::vector<double> wbuf(n_terms);
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < b; ++i) {
            auto stream = rng::substream(seed, rng::StreamLabel::limit_law,
                                         index0 + static_cast<std::uint64_t>(i));
            const double tau = 0.5 * stream.next_uniform();
            const double e = tau - 1.0;
            double norm = 0.0;
            for (std::uint64_t j = 0; j < n_terms; ++j) {
                const double w = std::exp(e * logj[j]);
                wbuf[j] = w;
                norm += w * w; // = partial zeta(2(1-tau), N), summed ascending j
            }
            out[static_cast<std::size_t>(i)] =
                weighted_centered_sum(wbuf.data(), n_terms, stream) / std::sqrt(norm);
        }
    }
}

void smallest_uniforms(std::uint64_t seed, rng::StreamLabel label,
                       std::uint64_t n, std::span<double> out_ascending,
                       std::vector<double>& workbuf) {
    workbuf.resize(n);
    for (std::uint64_t i = 0; i < n; ++i)
        workbuf[i] = rng::substream(seed, label, i).next_uniform();
    const std::size_t m = out_ascending.size();
    std::nth_element(workbuf.begin(), workbuf.begin() + static_cast<std::ptrdiff_t>(m - 1),
                     workbuf.end());
    std::partial_sort_copy(workbuf.begin(), workbuf.begin() + static_cast<std::ptrdiff_t>(m),
                           out_ascending.begin(), out_ascending.end());
}

} // namespace tailest::kernel
