#pragma once

#include <cstdint>

namespace tailest::series {

/// Riemann zeta evaluation with a certified absolute error bound.
struct ZetaValue {
    double s = 0.0;
    double value = 0.0;
    double abs_error_bound = 0.0;
};

/// Exact finite-k normalizing constants of the generalized Hill process:
///   a_n(tau)     = k^{-tau} sum_{j=1..k} j^{tau-1}
///   sigma_n(tau) = sqrt( k^{-2 tau} sum_{j=1..k} j^{2(tau-1)} )
/// k_tau_sigma = k^tau * sigma_n stays bounded for tau < 1/2 and is the scale
/// the limit law lives on.
struct NormalizingConstants {
    std::uint64_t k = 0;
    double tau = 0.0;
    double a_n = 0.0;
    double sigma_n = 0.0;
    double k_tau_sigma = 0.0;
};

/// zeta(s) for s > 1 via partial sum plus Euler-Maclaurin tail correction.
/// The returned abs_error_bound is the magnitude of the first omitted
/// Euler-Maclaurin term plus a rounding allowance; it does not exceed
/// target_abs_error. Throws domain_error for s <= 1 + 1e-9, nonpositive
/// target, or a target below what double precision can certify (~1e-13).
ZetaValue zeta(double s, double target_abs_error);

/// Partial zeta zeta(s, m) = sum_{j=1..m} j^{-s}, summed smallest term first.
/// Defined for any s > 0 (the sum is finite regardless of convergence).
double partial_zeta(double s, std::uint64_t m);

/// S(k, tau) = k^{-tau} sum_{j=1..k} j^{-tau}, tau > 0.
double s_sum(std::uint64_t k, double tau);

/// Exact direct-summation normalizers for tau in (0, 1], k >= 1.
NormalizingConstants normalizers(std::uint64_t k, double tau);

/// Classical sandwich derived from
///   zeta(s) = s/(s-1) - s * int_1^inf (x - [x]) x^{-s-1} dx,
/// namely s/(s-1) - 1 < zeta(s) < s/(s-1). Used as a cheap validity check.
inline double zeta_lower_bound(double s) { return s / (s - 1.0) - 1.0; }
inline double zeta_upper_bound(double s) { return s / (s - 1.0); }

} // namespace tailest::series
