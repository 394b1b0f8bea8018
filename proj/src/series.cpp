#include "tailest/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tailest/errors.hpp"

namespace tailest::series {

namespace {

// First omitted Euler-Maclaurin term for f(x) = x^{-s} truncated after the
// B_2 correction: |B_4/4!| * |f'''(M)| = s(s+1)(s+2)/720 * M^{-s-3}.
double em_next_term(double s, double m) {
    return s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(m, -s - 3.0);
}

} // namespace

ZetaValue zeta(double s, double target_abs_error) {
    if (!(s > 1.0 + 1e-9))
        throw domain_error("zeta: requires s > 1 (series diverges at s <= 1)");
    if (!(target_abs_error > 0.0))
        throw domain_error("zeta: target_abs_error must be positive");
    if (target_abs_error < 1e-13)
        throw domain_error("zeta: target below double-precision certification (~1e-13)");

    // Smallest M with em_next_term(s, M) <= target/2, floored for safety.
    const double c = s * (s + 1.0) * (s + 2.0) / 720.0;
    double m_real = std::pow(2.0 * c / target_abs_error, 1.0 / (s + 3.0));
    const std::uint64_t m = std::clamp<std::uint64_t>(
        static_cast<std::uint64_t>(std::ceil(m_real)) + 1, 8, 4'000'000);

    double value = partial_zeta(s, m);
    const double md = static_cast<double>(m);
    value += std::pow(md, 1.0 - s) / (s - 1.0);
    value -= 0.5 * std::pow(md, -s);
    value += s / 12.0 * std::pow(md, -s - 1.0);

    const double fp_slack = 8.0 * std::numeric_limits<double>::epsilon() * value;
    return ZetaValue{s, value, em_next_term(s, md) + fp_slack};
}

double partial_zeta(double s, std::uint64_t m) {
    if (!(s > 0.0)) throw domain_error("partial_zeta: requires s > 0");
    if (m < 1) throw domain_error("partial_zeta: requires m >= 1");
    double acc = 0.0;
    for (std::uint64_t j = m; j >= 1; --j)
        acc += std::pow(static_cast<double>(j), -s);
    return acc;
}

double s_sum(std::uint64_t k, double tau) {
    if (k < 1) throw domain_error("s_sum: requires k >= 1");
    if (!(tau > 0.0)) throw domain_error("s_sum: requires tau > 0");
    return std::pow(static_cast<double>(k), -tau) * partial_zeta(tau, k);
}

NormalizingConstants normalizers(std::uint64_t k, double tau) {
    if (!(tau > 0.0) || tau > 1.0)
        throw domain_error("normalizers: requires tau in (0, 1]");
    if (k < 1) throw domain_error("normalizers: requires k >= 1");

    // Exponents tau-1 and 2(tau-1) are <= 0: terms decrease in j, so the
    // descending-j sums accumulate smallest first.
    double sum_a = 0.0;
    double sum_s2 = 0.0;
    for (std::uint64_t j = k; j >= 1; --j) {
        const double jd = static_cast<double>(j);
        sum_a += std::pow(jd, tau - 1.0);
        sum_s2 += std::pow(jd, 2.0 * (tau - 1.0));
    }
    const double k_pow_tau = std::pow(static_cast<double>(k), tau);
    NormalizingConstants nc;
    nc.k = k;
    nc.tau = tau;
    nc.a_n = sum_a / k_pow_tau;
    nc.sigma_n = std::sqrt(sum_s2) / k_pow_tau;
    nc.k_tau_sigma = k_pow_tau * nc.sigma_n;
    return nc;
}

} // namespace tailest::series
