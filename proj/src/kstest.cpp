#include "tailest/kstest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "tailest/errors.hpp"

namespace tailest::stats {

double kolmogorov_sf(double z) {
    if (z <= 1e-8) return 1.0;
    if (z < 1.18) {
        // P(K <= z) = sqrt(2 pi)/z * sum_{m>=1} exp(-(2m-1)^2 pi^2 / (8 z^2))
        const double v = std::numbers::pi * std::numbers::pi / (8.0 * z * z);
        double cdf = 0.0;
        for (int m = 1;; ++m) {
            const double term = std::exp(-static_cast<double>(2 * m - 1) *
                                         static_cast<double>(2 * m - 1) * v);
            cdf += term;
            if (term < 1e-10) break;
        }
        cdf *= std::sqrt(2.0 * std::numbers::pi) / z;
        return std::clamp(1.0 - cdf, 0.0, 1.0);
    }
    // P(K > z) = 2 sum_{m>=1} (-1)^{m-1} exp(-2 m^2 z^2)
    double sf = 0.0;
    double sign = 1.0;
    for (int m = 1;; ++m) {
        const double term = std::exp(-2.0 * static_cast<double>(m) *
                                     static_cast<double>(m) * z * z);
        sf += sign * term;
        if (term < 1e-10) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sf, 0.0, 1.0);
}

KsResult ks_one_sample(std::span<const double> draws,
                       const std::function<double(double)>& cdf) {
    if (draws.empty()) throw domain_error("ks_one_sample: empty input");
    std::vector<double> x(draws.begin(), draws.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
        d = std::max(d, f - static_cast<double>(i) / n);
    }
    return {d, kolmogorov_sf(std::sqrt(n) * d)};
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw domain_error("ks_two_sample: empty input");
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double na = static_cast<double>(x.size());
    const double nb = static_cast<double>(y.size());
    std::size_t ia = 0, ib = 0;
    double diff = 0.0, d = 0.0;
    while (ia < x.size() && ib < y.size()) {
        // Advance past ties in lockstep so equal values never contribute.
        const double v = std::min(x[ia], y[ib]);
        while (ia < x.size() && x[ia] == v) {
            diff += 1.0 / na;
            ++ia;
        }
        while (ib < y.size() && y[ib] == v) {
            diff -= 1.0 / nb;
            ++ib;
        }
        d = std::max(d, std::abs(diff));
    }
    const double z = d * std::sqrt(na * nb / (na + nb));
    return {d, kolmogorov_sf(z)};
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

} // namespace tailest::stats
