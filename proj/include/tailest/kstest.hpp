#pragma once

#include <functional>
#include <span>

namespace tailest::stats {

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Survival function of the Kolmogorov distribution, P(K > z). Uses the
/// alternating series for large z and the theta-dual series for small z;
/// both truncated once terms drop below 1e-10.
double kolmogorov_sf(double z);

/// One-sample Kolmogorov-Smirnov test of draws against a continuous cdf.
/// p-value from the asymptotic Kolmogorov distribution at z = sqrt(n) * D.
KsResult ks_one_sample(std::span<const double> draws,
                       const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov test; z = sqrt(nm/(n+m)) * D.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Standard normal cdf.
double normal_cdf(double x);

} // namespace tailest::stats
