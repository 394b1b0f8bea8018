#include "tailest/estimators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tailest/errors.hpp"
#include "tailest/series.hpp"

namespace tailest::estimators {

namespace {

void check_k_range(std::size_t k, std::size_t n) {
    if (k < 1 || k + 1 > n)
        throw range_error("estimator: requires 1 <= k <= n-1");
}

void check_tau(double tau) {
    if (!(tau > 0.0) || tau > 1.0)
        throw domain_error("estimator: requires tau in (0, 1]");
}

} // namespace

std::size_t default_k(std::size_t n) {
    return static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), 0.75)));
}

namespace detail {

double t_tau_logdesc(std::span<const double> y, double tau, std::size_t k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j)
        acc += std::pow(static_cast<double>(j), tau) * (y[j - 1] - y[j]);
    return acc * std::pow(static_cast<double>(k), -tau);
}

double t0_logdesc(std::span<const double> y, std::size_t k) {
    return y[0] - y[k]; // telescoped sum of the top-k log spacings
}

double lo_logdesc(std::span<const double> y, std::size_t k) {
    // L^2 = k^{-1} sum_j j D_j (S_j - D_j/2) with S_j = sum_{i=j..k} D_i.
    double suffix = 0.0;
    double acc = 0.0;
    for (std::size_t j = k; j >= 1; --j) {
        const double d = y[j - 1] - y[j];
        suffix += d;
        acc += static_cast<double>(j) * d * (suffix - 0.5 * d);
    }
    acc /= static_cast<double>(k);
    return std::sqrt(acc < 0.0 ? 0.0 : acc);
}

double studentize_logdesc(std::span<const double> y, double tau, std::size_t k,
                          double gamma_ref) {
    const auto nc = series::normalizers(k, tau);
    const double t = t_tau_logdesc(y, tau, k);
    return nc.a_n / nc.sigma_n * (t / nc.a_n - gamma_ref);
}

} // namespace detail

double t_tau(const Sample& sample, double tau, std::size_t k) {
    check_tau(tau);
    check_k_range(k, sample.size());
    return detail::t_tau_logdesc(sample.log_order_stats_desc(), tau, k);
}

double hill(const Sample& sample, std::size_t k) {
    check_k_range(k, sample.size());
    const auto y = sample.log_order_stats_desc();
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += y[j - 1] - y[k];
    return acc / static_cast<double>(k);
}

double pickands(const Sample& sample, std::size_t k) {
    if (k < 1) throw range_error("pickands: requires k >= 1");
    if (4 * k + 1 > sample.size())
        throw range_error("pickands: requires 4k < n (reads X_{n-4k,n})");
    const double upper = sample.top(k + 1) - sample.top(2 * k + 1);
    const double lower = sample.top(2 * k + 1) - sample.top(4 * k + 1);
    if (lower == 0.0)
        throw degenerate_error("pickands: zero spacing X_{n-2k,n} - X_{n-4k,n}");
    const double ratio = upper / lower;
    if (!(ratio > 0.0))
        throw degenerate_error("pickands: nonpositive spacing ratio");
    return std::log(ratio) / std::numbers::ln2;
}

double lo(const Sample& sample, std::size_t k) {
    check_k_range(k, sample.size());
    return detail::lo_logdesc(sample.log_order_stats_desc(), k);
}

double dehaan_resnick(const Sample& sample, std::size_t k) {
    if (k < 2) throw range_error("dehaan_resnick: requires k >= 2");
    check_k_range(k, sample.size());
    const auto y = sample.log_order_stats_desc();
    return detail::t0_logdesc(y, k) / std::log(static_cast<double>(k));
}

double half_family(const Sample& sample, std::size_t k, double a) {
    if (!(a > 0.0) || !(a < 1.0))
        throw domain_error("half_family: requires a in (0, 1)");
    check_k_range(k, sample.size());
    const auto nc = series::normalizers(k, 0.5);
    const double t = detail::t_tau_logdesc(sample.log_order_stats_desc(), 0.5, k);
    return (a * 0.5 + (1.0 - a) / nc.a_n) * t;
}

double studentize(const Sample& sample, double tau, std::size_t k, double gamma_ref) {
    check_tau(tau);
    check_k_range(k, sample.size());
    if (!(gamma_ref > 0.0))
        throw domain_error("studentize: requires gamma_ref > 0");
    return detail::studentize_logdesc(sample.log_order_stats_desc(), tau, k, gamma_ref);
}

EstimatorReport sweep(const Sample& sample, std::span<const double> taus,
                      std::span<const std::size_t> ks,
                      std::optional<double> gamma_ref) {
    EstimatorReport report;
    report.n = sample.size();
    report.gamma_ref = gamma_ref;
    report.cells.resize(taus.size() * ks.size());

    // Cells are independent; indexed writes keep the result identical for any
    // parallelism degree.
#pragma omp parallel for collapse(2) schedule(static)
    for (std::size_t ti = 0; ti < taus.size(); ++ti) {
        for (std::size_t ki = 0; ki < ks.size(); ++ki) {
            ReportCell& cell = report.cells[ti * ks.size() + ki];
            cell.tau = taus[ti];
            cell.k = ks[ki];
            try {
                cell.t_n = t_tau(sample, cell.tau, cell.k);
                const auto nc = series::normalizers(cell.k, cell.tau);
                cell.normalized = cell.t_n / nc.a_n;
                if (gamma_ref)
                    cell.studentized =
                        nc.a_n / nc.sigma_n * (cell.normalized - *gamma_ref);
            } catch (const std::exception& e) {
                cell.error = e.what();
            }
        }
    }
    return report;
}

} // namespace tailest::estimators
