#include "tailest/limitlaw.hpp"

#include <algorithm>
#include <cmath>

#include "kernels.hpp"
#include "tailest/errors.hpp"
#include "tailest/rng.hpp"
#include "tailest/series.hpp"

namespace tailest::limitlaw {

namespace {

void check_mixture_free_tau(double tau) {
    if (!(tau > 0.0) || !(tau < 0.5))
        throw domain_error("limit law: requires tau in (0, 1/2)");
}

LimitLawSample finalize(LimitLawSample s) {
    s.sorted = s.draws;
    std::sort(s.sorted.begin(), s.sorted.end());
    return s;
}

} // namespace

LimitLawSpec::LimitLawSpec(double tau_, std::uint64_t truncation_n_)
    : tau(tau_), truncation_n(truncation_n_),
      zeta_norm(0.0) {
    check_mixture_free_tau(tau);
    if (truncation_n < 1) throw domain_error("LimitLawSpec: truncation_n >= 1");
    zeta_norm = series::partial_zeta(2.0 * (1.0 - tau), truncation_n);
}

LimitLawSpec::LimitLawSpec(double tau_, std::uint64_t truncation_n_, double zeta_norm_)
    : tau(tau_), truncation_n(truncation_n_), zeta_norm(zeta_norm_) {
    check_mixture_free_tau(tau);
    if (truncation_n < 1) throw domain_error("LimitLawSpec: truncation_n >= 1");
    if (!(zeta_norm > 0.0)) throw domain_error("LimitLawSpec: zeta_norm > 0");
}

LimitLawSample sample_limit_law(const LimitLawSpec& spec, std::uint64_t b,
                                std::uint64_t seed) {
    if (b < 1) throw domain_error("sample_limit_law: requires B >= 1");
    LimitLawSample s;
    s.spec = spec;
    s.truncation_n = spec.truncation_n;
    s.seed = seed;
    s.draws.resize(b);
    const auto weights = kernel::power_weights(spec.truncation_n, spec.tau - 1.0);
    kernel::limit_law_batch(weights, 1.0 / std::sqrt(spec.zeta_norm), seed,
                            rng::StreamLabel::limit_law, 0, s.draws, true);
    return finalize(std::move(s));
}

LimitLawSample sample_limit_law_mixture(std::uint64_t b, std::uint64_t seed,
                                        std::uint64_t truncation_n) {
    if (b < 1) throw domain_error("sample_limit_law_mixture: requires B >= 1");
    if (truncation_n < 1) throw domain_error("sample_limit_law_mixture: N >= 1");
    LimitLawSample s;
    s.truncation_n = truncation_n;
    s.seed = seed;
    s.draws.resize(b);
    kernel::mixture_batch(truncation_n, seed, 0, s.draws, true);
    return finalize(std::move(s));
}

double empirical_cdf(const LimitLawSample& sample, double u) {
    if (sample.sorted.empty()) throw domain_error("empirical_cdf: empty sample");
    const auto it = std::upper_bound(sample.sorted.begin(), sample.sorted.end(), u);
    return static_cast<double>(it - sample.sorted.begin()) /
           static_cast<double>(sample.sorted.size());
}

double empirical_quantile(const LimitLawSample& sample, double p) {
    if (sample.sorted.empty()) throw domain_error("empirical_quantile: empty sample");
    if (!(p > 0.0) || !(p < 1.0))
        throw domain_error("empirical_quantile: requires p in (0, 1)");
    const double b = static_cast<double>(sample.sorted.size());
    auto idx = static_cast<std::uint64_t>(std::ceil(p * b));
    idx = std::clamp<std::uint64_t>(idx, 1, sample.sorted.size());
    return sample.sorted[idx - 1];
}

std::complex<double> cf_psi_infinity(double tau, double t, double tol) {
    check_mixture_free_tau(tau);
    if (!(tol > 0.0)) throw domain_error("cf_psi_infinity: tol > 0");
    const double radius = 2.0 * (1.0 - tau);
    if (!(std::abs(t) < radius))
        throw domain_error("cf_psi_infinity: |t| must be < 2(1-tau)");
    if (t == 0.0) return {1.0, 0.0};

    const double zeta2 = series::zeta(radius, 1e-13).value;
    const double rho = std::abs(t) / radius;
    const std::complex<double> it{0.0, t};
    std::complex<double> phi{0.0, 0.0};
    std::complex<double> it_pow = it; // (it)^{n-1} entering the loop at n
    for (int n = 2; n <= 2048; ++n) {
        it_pow *= it;
        const double zn = n * (1.0 - tau) > 60.0
                              ? 1.0 + std::pow(2.0, -n * (1.0 - tau))
                              : series::zeta(n * (1.0 - tau), 1e-13).value;
        const std::complex<double> term =
            it_pow / static_cast<double>(n) * zn *
            std::pow(zeta2, -0.5 * static_cast<double>(n));
        phi += term;
        // Dominating geometric remainder: 2(1-2 tau) rho^{n+1} / (1 - rho).
        // Terms must have entered their decaying regime as well before we
        // trust the bound.
        const double remainder =
            2.0 * (1.0 - 2.0 * tau) * std::pow(rho, n + 1) / (1.0 - rho);
        if (remainder < tol && std::abs(term) < tol && n >= 8)
            return std::exp(phi);
    }
    throw domain_error("cf_psi_infinity: series did not meet tol within 2048 terms");
}

Moments moments(double tau) {
    check_mixture_free_tau(tau);
    // kappa_m = (m-1)! zeta(m(1-tau)) zeta(2(1-tau))^{-m/2}; unit-exponential
    // cumulants propagated through the weighted series.
    const double z2 = series::zeta(2.0 * (1.0 - tau), 1e-13).value;
    const double z3 = series::zeta(3.0 * (1.0 - tau), 1e-13).value;
    const double z4 = series::zeta(4.0 * (1.0 - tau), 1e-13).value;
    Moments m;
    m.mean = 0.0;
    m.variance = 1.0;
    m.third = 2.0 * z3 / std::pow(z2, 1.5);
    m.fourth = 3.0 + 6.0 * z4 / (z2 * z2);
    m.skewness = m.third;
    m.excess_kurtosis = m.fourth - 3.0;
    return m;
}

double sample_v_star(double tau, std::uint64_t k, std::uint64_t seed) {
    return sample_v_star_batch(tau, k, 1, seed)[0];
}

std::vector<double> sample_v_star_batch(double tau, std::uint64_t k,
                                        std::uint64_t r, std::uint64_t seed) {
    if (!(tau > 0.0) || tau > 0.5)
        throw domain_error("sample_v_star: requires tau in (0, 1/2]");
    if (k < 1) throw domain_error("sample_v_star: requires k >= 1");
    std::vector<double> out(r);
    const auto weights = kernel::power_weights(k, tau - 1.0);
    // k^tau sigma_n = sqrt(sum_j j^{2(tau-1)}): exact finite-k normalizer.
    const double norm = series::partial_zeta(2.0 * (1.0 - tau), k);
    kernel::limit_law_batch(weights, 1.0 / std::sqrt(norm), seed,
                            rng::StreamLabel::v_star, 0, out, true);
    return out;
}

namespace reference {

double limit_law_draw(const LimitLawSpec& spec, std::uint64_t seed,
                      std::uint64_t index) {
    auto stream = rng::substream(seed, rng::StreamLabel::limit_law, index);
    double acc = 0.0;
    for (std::uint64_t j = spec.truncation_n; j >= 1; --j)
        acc += std::pow(static_cast<double>(j), spec.tau - 1.0) *
               (stream.next_exponential() - 1.0);
    return acc / std::sqrt(spec.zeta_norm);
}

double v_star_draw(double tau, std::uint64_t k, std::uint64_t seed,
                   std::uint64_t index) {
    auto stream = rng::substream(seed, rng::StreamLabel::v_star, index);
    double acc = 0.0;
    for (std::uint64_t j = k; j >= 1; --j)
        acc += std::pow(static_cast<double>(j), tau - 1.0) *
               (stream.next_exponential() - 1.0);
    return acc / std::sqrt(series::partial_zeta(2.0 * (1.0 - tau), k));
}

} // namespace reference

} // namespace tailest::limitlaw
