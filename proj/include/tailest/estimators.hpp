#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tailest/sample.hpp"

namespace tailest::estimators {

/// The simulation sections' default fraction: ceil(n^0.75).
std::size_t default_k(std::size_t n);

/// Generalized Hill statistic
///   T_n(tau) = k^{-tau} sum_{j=1..k} j^tau (log X_{n-j+1,n} - log X_{n-j,n}),
/// tau in (0,1], 1 <= k <= n-1. Nonnegative; invariant under scaling the data.
double t_tau(const Sample& sample, double tau, std::size_t k);

/// Hill estimator (1/k) sum_{j<=k} (log X_{n-j+1,n} - log X_{n-k,n}).
/// Equals T_n(1) by Abel summation.
double hill(const Sample& sample, std::size_t k);

/// Pickands estimator log{(X_{n-k,n}-X_{n-2k,n})/(X_{n-2k,n}-X_{n-4k,n})}/log 2.
/// Requires 4k < n; throws degenerate_error on a zero or nonpositive ratio.
double pickands(const Sample& sample, std::size_t k);

/// Lo estimator L_n(k) = sqrt(L_n^2(k)),
///   L_n^2(k) = k^{-1} sum_j sum_{i>=j} j g(i,j) D_j D_i,  g(i,j)=1/2 iff i=j,
/// computed in O(k) through suffix sums of the log spacings D_j.
double lo(const Sample& sample, std::size_t k);

/// de Haan-Resnick estimator T_n(0)/log k = (log X_{n,n} - log X_{n-k,n})/log k.
/// Requires k >= 2.
double dehaan_resnick(const Sample& sample, std::size_t k);

/// Interpolated family (a/2 + (1-a)/a_n(1/2)) T_n(1/2), a in (0,1); both
/// endpoints are consistent normalizations of T_n(1/2).
double half_family(const Sample& sample, std::size_t k, double a);

/// (a_n/sigma_n)(T_n(tau)/a_n - gamma_ref) with exact finite-n normalizers.
double studentize(const Sample& sample, double tau, std::size_t k, double gamma_ref);

struct ReportCell {
    double tau = 0.0;
    std::size_t k = 0;
    double t_n = 0.0;
    double normalized = 0.0;
    std::optional<double> studentized;
    std::string error; // empty when the cell evaluated cleanly
};

struct EstimatorReport {
    std::size_t n = 0;
    std::optional<double> gamma_ref;
    std::vector<ReportCell> cells; // row-major over taus x ks
};

/// Evaluates the T_n family over the cartesian (tau, k) grid. Per-cell
/// failures are recorded in the cell instead of aborting the sweep.
EstimatorReport sweep(const Sample& sample, std::span<const double> taus,
                      std::span<const std::size_t> ks,
                      std::optional<double> gamma_ref = std::nullopt);

namespace detail {

// Cores on a span of descending log order statistics (y needs k+1 entries).
// The Monte Carlo engines call these on top-order-statistic buffers; keeping a
// single implementation makes the fast path bit-identical to the Sample path.
double t_tau_logdesc(std::span<const double> y, double tau, std::size_t k);
double t0_logdesc(std::span<const double> y, std::size_t k);
double lo_logdesc(std::span<const double> y, std::size_t k);
double studentize_logdesc(std::span<const double> y, double tau, std::size_t k,
                          double gamma_ref);

} // namespace detail

} // namespace tailest::estimators
