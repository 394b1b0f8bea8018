#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace tailest::limitlaw {

/// Truncated limit law
///   L(tau, N) = zeta_norm^{-1/2} sum_{j=1..N} j^{tau-1} (E_j - 1)
/// with E_j i.i.d. unit exponentials. With the default normalization
/// zeta_norm = zeta(2(1-tau), N) every truncated draw has variance exactly 1.
struct LimitLawSpec {
    double tau;
    std::uint64_t truncation_n;
    double zeta_norm;

    /// Default zeta_norm = partial zeta at 2(1-tau). Throws domain_error
    /// unless tau in (0, 1/2) and truncation_n >= 1.
    explicit LimitLawSpec(double tau, std::uint64_t truncation_n = 10000);
    LimitLawSpec(double tau, std::uint64_t truncation_n, double zeta_norm);
};

/// Seeded draws plus sorted-order accessors. `spec` is empty for the
/// uniform-tau mixture. Identical (spec, B, seed) reproduce identical draws
/// bit for bit, independent of thread count.
struct LimitLawSample {
    std::optional<LimitLawSpec> spec; // nullopt marks the mixture
    std::uint64_t truncation_n = 0;
    std::uint64_t seed = 0;
    std::vector<double> draws;        // draw i comes from substream (seed, limit_law, i)
    std::vector<double> sorted;
};

LimitLawSample sample_limit_law(const LimitLawSpec& spec, std::uint64_t b,
                                std::uint64_t seed);

/// Per draw: an independent tau ~ Uniform(0, 1/2), then one L(tau, N) variate.
LimitLawSample sample_limit_law_mixture(std::uint64_t b, std::uint64_t seed,
                                        std::uint64_t truncation_n = 10000);

/// Fraction of draws <= u (right-continuous step function).
double empirical_cdf(const LimitLawSample& sample, double u);

/// Left-continuous generalized inverse: smallest draw with edf >= p.
double empirical_quantile(const LimitLawSample& sample, double p);

/// Characteristic function of the limit law,
///   psi(t) = exp( sum_{n>=2} (it)^n/n zeta(n(1-tau)) zeta(2(1-tau))^{-n/2} ),
/// valid on |t| < 2(1-tau); the series is truncated once the dominating
/// geometric remainder bound (ratio |t|/(2(1-tau))) falls below tol.
std::complex<double> cf_psi_infinity(double tau, double t, double tol);

/// Zeta-cumulant moments: kappa_m = (m-1)! zeta(m(1-tau)) zeta(2(1-tau))^{-m/2}.
struct Moments {
    double mean;
    double variance;
    double third;
    double fourth;
    double skewness;
    double excess_kurtosis;
};
Moments moments(double tau);

/// One draw of V*_k(tau) = (k^tau sigma_n)^{-1} sum_{j<=k} j^{tau-1}(E_j - 1),
/// tau in (0, 1/2]; standard-normal in the limit at tau = 1/2.
double sample_v_star(double tau, std::uint64_t k, std::uint64_t seed);

/// R independent V* draws; draw r uses substream (seed, v_star, r).
std::vector<double> sample_v_star_batch(double tau, std::uint64_t k,
                                        std::uint64_t r, std::uint64_t seed);

namespace reference {

// Plain scalar implementations kept as the oracle for the vectorized kernels;
// they agree with the fast path to rounding (tests pin the tolerance).
double limit_law_draw(const LimitLawSpec& spec, std::uint64_t seed,
                      std::uint64_t index);
double v_star_draw(double tau, std::uint64_t k, std::uint64_t seed,
                   std::uint64_t index);

} // namespace reference

} // namespace tailest::limitlaw
