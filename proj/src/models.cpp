#include "tailest/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tailest/errors.hpp"
#include "tailest/rng.hpp"
#include "tailest/series.hpp"

namespace tailest::models {

namespace {

const std::function<double(double)> kZeroFn = [](double) { return 0.0; };

void check_u_grid_monotone(const TailModel& model) {
    // 4096 log-spaced points on [1e-9, 1 - 1e-9].
    constexpr int kPoints = 4096;
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kPoints; ++i) {
        const double lo = std::log(1e-9);
        const double hi = std::log(1.0 - 1e-9);
        const double u = std::exp(lo + (hi - lo) * i / (kPoints - 1));
        const double q = model.quantile_tail(u);
        if (!(q > 0.0) || !std::isfinite(q))
            throw construction_error(model.name + ": quantile_tail not positive on (0,1)");
        if (q > prev * (1.0 + 1e-12))
            throw construction_error(model.name + ": quantile_tail not non-increasing");
        prev = q;
    }
}

} // namespace

TailModel pareto_model(double gamma) {
    if (!(gamma > 0.0)) throw domain_error("pareto_model: requires gamma > 0");
    TailModel m;
    m.name = "pareto";
    m.gamma = gamma;
    m.params = {{"gamma", gamma}};
    m.quantile_tail = [gamma](double u) { return std::pow(u, -gamma); };
    m.p_fn = kZeroFn;
    m.b_fn = kZeroFn;
    return m;
}

TailModel hall_model(double gamma, double eta, double c4) {
    if (!(gamma > 0.0)) throw domain_error("hall_model: requires gamma > 0");
    if (!(eta > 0.0)) throw domain_error("hall_model: requires eta > 0");
    TailModel m;
    m.name = "hall";
    m.gamma = gamma;
    m.params = {{"gamma", gamma}, {"eta", eta}, {"c4", c4}};
    const double ex = eta * gamma;
    m.quantile_tail = [gamma, c4, ex](double u) {
        return std::pow(u, -gamma) * (1.0 + c4 * std::pow(u, ex));
    };
    m.p_fn = kZeroFn;
    m.b_fn = [c4, ex](double u) {
        const double p = c4 * std::pow(u, ex);
        return -ex * p / (1.0 + p);
    };
    check_u_grid_monotone(m);
    return m;
}

TailModel gumbel_weibull_model(double beta) {
    if (!(beta > 0.0)) throw domain_error("gumbel_weibull_model: requires beta > 0");
    if (beta == 1.0)
        throw domain_error("gumbel_weibull_model: beta = 1 is exactly Pareto "
                           "(Frechet domain), not a Gumbel-domain instance");
    TailModel m;
    m.name = "gumbel_weibull";
    m.gamma = 0.0;
    m.params = {{"beta", beta}};
    const double a = 1.0 / beta;
    m.quantile_tail = [a](double u) { return std::exp(std::pow(-std::log(u), a)); };
    m.s_fn = [a](double u) { return a * std::pow(-std::log(u), a - 1.0); };
    m.p_fn = kZeroFn;
    // From s(u) = c(1+p(u)) exp(int_u^1 b/t dt) with p = 0: b = -u s'/s.
    m.b_fn = [a](double u) { return (a - 1.0) / (-std::log(u)); };
    return m;
}

Sample sample(const TailModel& model, std::size_t n, std::uint64_t seed) {
    if (n < 2) throw domain_error("models::sample: requires n >= 2");
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng::substream(seed, rng::StreamLabel::model_sample, i)
                             .next_uniform();
        values[i] = model.quantile_tail(u);
    }
    return Sample(std::move(values));
}

ConditionReport check_conditions(const TailModel& model, double tau, double lambda,
                                 std::span<const std::pair<std::size_t, std::size_t>> schedule) {
    if (!(lambda > 1.0)) throw domain_error("check_conditions: requires lambda > 1");
    if (!(tau > 0.0) || tau > 0.5)
        throw domain_error("check_conditions: requires tau in (0, 1/2]");
    if (!model.p_fn || !model.b_fn)
        throw domain_error("check_conditions: model lacks p_fn/b_fn metadata");

    ConditionReport report;
    report.lambda = lambda;
    report.tau = tau;
    report.rows.reserve(schedule.size());
    for (const auto& [n, k] : schedule) {
        if (k + 1 > n) throw range_error("check_conditions: schedule needs k <= n-1");
        ConditionRow row;
        row.n = n;
        row.k = k;

        const double u_hi =
            std::min(lambda * static_cast<double>(k) / static_cast<double>(n),
                     1.0 - 1e-12);
        constexpr int kGrid = 10000;
        const double lo = std::log(u_hi) + std::log(1e-8);
        const double hi = std::log(u_hi);
        for (int i = 0; i < kGrid; ++i) {
            const double u = std::exp(lo + (hi - lo) * i / (kGrid - 1));
            row.g1 = std::max(row.g1, std::abs(model.p_fn(u)));
            row.g2 = std::max(row.g2, std::abs(model.b_fn(u)));
        }
        row.d = std::max(row.g1, row.g2 * std::log(static_cast<double>(k)));

        double sum_tau = 0.0, sum_tau_m1 = 0.0;
        for (std::size_t j = k; j >= 1; --j) {
            sum_tau += std::pow(static_cast<double>(j), tau);
            sum_tau_m1 += std::pow(static_cast<double>(j), tau - 1.0);
        }
        const double scale = 1.0 / series::normalizers(k, tau).k_tau_sigma;
        row.c1_lhs = row.g1 * scale * sum_tau;
        row.c2_lhs = row.g2 * scale * sum_tau_m1;
        row.c3_lhs = row.d * scale * sum_tau_m1;
        report.rows.push_back(row);
    }
    std::sort(report.rows.begin(), report.rows.end(),
              [](const ConditionRow& a, const ConditionRow& b) { return a.n < b.n; });

    auto decreasing = [&](double ConditionRow::* field) {
        for (std::size_t i = 1; i < report.rows.size(); ++i)
            if (report.rows[i].*field > report.rows[i - 1].*field + 1e-15) return false;
        return !report.rows.empty();
    };
    report.c1_decreasing = decreasing(&ConditionRow::c1_lhs);
    report.c2_decreasing = decreasing(&ConditionRow::c2_lhs);
    report.c3_decreasing = decreasing(&ConditionRow::c3_lhs);
    return report;
}

std::pair<double, double> malmquist_pair(std::size_t n, std::size_t k, double tau,
                                         std::uint64_t seed) {
    if (k < 1 || k + 1 > n) throw range_error("malmquist_pair: requires 1 <= k <= n-1");
    if (!(tau > 0.0)) throw domain_error("malmquist_pair: requires tau > 0");

    // U_{j,n} = S_j / S_{n+1} with S_j partial sums of i.i.d. exponentials;
    // the ratios U_{j+1,n}/U_{j,n} = S_{j+1}/S_j need only the first k+1 sums.
    auto lhs_stream = rng::substream(seed, rng::StreamLabel::malmquist_lhs, 0);
    double s_prev = lhs_stream.next_exponential();
    double lhs = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
        const double s_next = s_prev + lhs_stream.next_exponential();
        lhs += std::pow(static_cast<double>(j), tau) * std::log(s_next / s_prev);
        s_prev = s_next;
    }
    lhs *= std::pow(static_cast<double>(k), -tau);

    auto rhs_stream = rng::substream(seed, rng::StreamLabel::malmquist_rhs, 0);
    double rhs = 0.0;
    for (std::size_t j = 1; j <= k; ++j)
        rhs += std::pow(static_cast<double>(j), tau - 1.0) * rhs_stream.next_exponential();
    rhs *= std::pow(static_cast<double>(k), -tau);

    return {lhs, rhs};
}

double gev_cdf(double gamma, double x) {
    if (std::abs(gamma) < 1e-8) return std::exp(-std::exp(-x));
    const double z = 1.0 + gamma * x;
    if (z <= 0.0) return gamma > 0.0 ? 0.0 : 1.0;
    return std::exp(-std::pow(z, -1.0 / gamma));
}

namespace detail {

double upper_incomplete_gamma(double a, double x) {
    if (!(a > 0.0) || x < 0.0)
        throw domain_error("upper_incomplete_gamma: requires a > 0, x >= 0");
    const double g = std::tgamma(a);
    if (x == 0.0) return g;
    if (x < a + 1.0) {
        // Lower series: P(a,x) = x^a e^{-x} sum_k x^k / (a (a+1) ... (a+k)).
        double term = 1.0 / a;
        double sum = term;
        for (int k = 1; k < 500; ++k) {
            term *= x / (a + k);
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-16) break;
        }
        return g - sum * std::exp(-x + a * std::log(x));
    }
    // Lentz continued fraction for Q(a,x).
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x)) * h;
}

double dehaan_exact_s(double beta, double u) {
    const double a = 1.0 / beta;
    return a * upper_incomplete_gamma(a, -std::log(u)) / u;
}

double dehaan_exact_d(double beta) {
    const double a = 1.0 / beta;
    return a * std::tgamma(a);
}

} // namespace detail

} // namespace tailest::models
