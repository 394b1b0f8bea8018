// Acceptance suite: one check per shipped claim, each printed as a PASS/FAIL
// line with the measured values and its runtime. Runs everything by default;
// pass a number 1..10 to run a single criterion. Exit code is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <omp.h>

#include "tailest/estimators.hpp"
#include "tailest/experiments.hpp"
#include "tailest/kstest.hpp"
#include "tailest/limitlaw.hpp"
#include "tailest/models.hpp"
#include "tailest/rng.hpp"
#include "tailest/series.hpp"

using namespace tailest;
namespace ex = tailest::experiments;
namespace ll = tailest::limitlaw;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Check {
    bool ok = true;
    void expect(bool cond, const char* fmt, ...) {
        va_list args;
        va_start(args, fmt);
        std::printf("    [%s] ", cond ? "ok" : "FAIL");
        std::vprintf(fmt, args);
        std::printf("\n");
        va_end(args);
        ok = ok && cond;
    }
};

double runtime_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --------------------------------------------------------------------------
// 1. zeta accuracy and the classical sandwich

bool criterion1() {
    Check c;
    const double z2 = series::zeta(2.0, 1e-10).value;
    const double z4 = series::zeta(4.0, 1e-10).value;
    const double pi = std::numbers::pi;
    c.expect(std::abs(z2 - pi * pi / 6.0) <= 1e-10, "zeta(2) = %.12f vs pi^2/6 (1e-10)", z2);
    c.expect(std::abs(z4 - std::pow(pi, 4) / 90.0) <= 1e-10,
             "zeta(4) = %.12f vs pi^4/90 (1e-10)", z4);

    auto stream = rng::Stream(kSeed);
    bool sandwich = true;
    for (int i = 0; i < 50; ++i) {
        const double s = 1.01 + 18.99 * stream.next_uniform();
        const double v = series::zeta(s, 1e-12).value;
        sandwich = sandwich && v >= series::zeta_lower_bound(s) &&
                   v <= series::zeta_upper_bound(s);
    }
    c.expect(sandwich, "sandwich s/(s-1)-1 <= zeta(s) <= s/(s-1) on 50 random s in (1.01,20]");
    return c.ok;
}

// --------------------------------------------------------------------------
// 2. Table 1 reproduction (edf of the truncated limit law)

bool criterion2() {
    const std::vector<double> taus = {0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.48};
    const std::vector<double> pts = {-1.96, 0.0, 1.96};
    // Tabulated reference values; rows are F(-1.96), F(0), F(1.96), the last
    // column is the uniform-tau mixture.
    const double table[3][10] = {
        {0.004, 0.0035, 0.006, 0.007, 0.009, 0.0137, 0.016, 0.0166, 0.018, 0.067},
        {0.5572, 0.557, 0.549, 0.544, 0.538, 0.54, 0.524, 0.501, 0.524, 0.537},
        {0.9530, 0.9558, 0.9545, 0.9623, 0.961, 0.965, 0.971, 0.9842, 0.966, 0.913}};

    const auto rows = ex::run_table1(taus, true, 10000, 10000, pts, kSeed);
    Check c;
    for (std::size_t col = 0; col < rows.size(); ++col)
        for (std::size_t p = 0; p < pts.size(); ++p) {
            const double got = rows[col].edf[p];
            const double want = table[p][col];
            c.expect(std::abs(got - want) <= 0.02, "col %-5s F(%+.2f): %.4f vs %.4f",
                     rows[col].column.c_str(), pts[p], got, want);
        }
    return c.ok;
}

// --------------------------------------------------------------------------
// 3. Table 2 reproduction (estimator comparison at n = 300)

bool criterion3() {
    ex::ExperimentConfig cfg;
    cfg.model = models::pareto_model(0.5);
    cfg.n = 300;
    cfg.k_rule = ex::KRule::power(0.75);
    cfg.replications = 500;
    cfg.master_seed = kSeed;
    for (const char* e : {"t_tau_normalized:0.5", "hill", "pickands", "lo"})
        cfg.estimators.push_back(ex::parse_estimator(e));
    const auto res = ex::run_table2(cfg);

    const double mean_t = res.aggregates.at("t_tau_normalized:0.5").mean;
    const double mean_hill = res.aggregates.at("hill").mean;
    const double mean_pick = res.aggregates.at("pickands").mean;
    const double mean_lo = res.aggregates.at("lo").mean;
    const double mse_t = res.aggregates.at("t_tau_normalized:0.5").mse;
    const double mse_hill = res.aggregates.at("hill").mse;
    const double mse_pick = res.aggregates.at("pickands").mse;
    const double mse_lo = res.aggregates.at("lo").mse;

    Check c;
    c.expect(std::abs(mean_t - 0.5047) <= 0.04, "mean T*(1/2) = %.4f vs 0.5047", mean_t);
    c.expect(std::abs(mean_hill - 0.5008) <= 0.04, "mean hill    = %.4f vs 0.5008", mean_hill);
    c.expect(std::abs(mean_pick - 0.4992) <= 0.04, "mean pickands= %.4f vs 0.4992", mean_pick);
    c.expect(std::abs(mean_lo - 0.4733) <= 0.04, "mean lo      = %.4f vs 0.4733", mean_lo);
    c.expect(mse_hill <= mse_t && mse_t <= mse_lo && mse_lo <= mse_pick,
             "MSE ordering hill <= T* <= lo <= pickands: %.5f, %.5f, %.5f, %.5f",
             mse_hill, mse_t, mse_lo, mse_pick);
    c.expect(mse_hill >= 0.001 && mse_hill <= 0.006, "hill MSE = %.5f in [0.001, 0.006]",
             mse_hill);
    return c.ok;
}

// --------------------------------------------------------------------------
// 4. V*(1/2) at k = 1e5: one-sample KS against the standard normal

bool criterion4() {
    const auto draws = ll::sample_v_star_batch(0.5, 100000, 10000, kSeed);
    const auto ks =
        stats::ks_one_sample(draws, [](double x) { return stats::normal_cdf(x); });
    Check c;
    c.expect(ks.p_value > 0.01, "KS = %.5f, p = %.4f > 0.01", ks.statistic, ks.p_value);
    return c.ok;
}

// --------------------------------------------------------------------------
// 5. V*(0.3) at k = 1e4 vs L(0.3, N = 1e4): two-sample KS

bool criterion5() {
    const auto v = ll::sample_v_star_batch(0.3, 10000, 10000, kSeed);
    const auto law = ll::sample_limit_law(ll::LimitLawSpec(0.3, 10000), 10000, kSeed);
    const auto ks = stats::ks_two_sample(v, law.draws);
    Check c;
    c.expect(ks.p_value > 0.01, "KS = %.5f, p = %.4f > 0.01", ks.statistic, ks.p_value);
    return c.ok;
}

// --------------------------------------------------------------------------
// 6. Frechet-branch studentized statistic vs gamma L(0.3)

bool criterion6() {
    const auto model = models::pareto_model(1.0);
    const auto rec = ex::run_limit_agreement(model, 0.3, 100000, ex::KRule::power(0.6),
                                             10000, 10000, kSeed);
    Check c;
    c.expect(rec.p_value > 0.01, "k = %zu, KS = %.5f, p = %.4f > 0.01", rec.k,
             rec.statistic, rec.p_value);
    return c.ok;
}

// --------------------------------------------------------------------------
// 7. Gumbel-branch exact-centering statistic vs the standard normal

bool criterion7() {
    const auto model = models::gumbel_weibull_model(2.0);
    const std::size_t n = 1000000, r = 1000;
    const auto krule = ex::KRule::power(0.6);
    const auto draws = ex::gumbel_centered_batch(model, n, krule(n), 0.5, r, kSeed);
    double mean = 0.0, sq = 0.0;
    for (const double d : draws) {
        mean += d;
        sq += d * d;
    }
    mean /= static_cast<double>(r);
    const double sd = std::sqrt(sq / static_cast<double>(r) - mean * mean);
    const auto ks =
        stats::ks_one_sample(draws, [](double x) { return stats::normal_cdf(x); });
    Check c;
    c.expect(ks.p_value > 0.01,
             "k = %zu, KS = %.4f, p = %.3g > 0.01 (sample mean %+.3f, sd %.3f)",
             krule(n), ks.statistic, ks.p_value, mean, sd);
    return c.ok;
}

// --------------------------------------------------------------------------
// 8. Moment formulas: sample skewness/kurtosis of 1e6 truncated draws

bool criterion8() {
    Check c;
    for (const double tau : {0.1, 0.3}) {
        const auto sample = ll::sample_limit_law(ll::LimitLawSpec(tau, 10000), 1000000,
                                                 rng::mix64(kSeed + (tau == 0.1)));
        double m1 = 0.0;
        for (const double d : sample.draws) m1 += d;
        m1 /= static_cast<double>(sample.draws.size());
        double m2 = 0.0, m3 = 0.0, m4 = 0.0;
        for (const double d : sample.draws) {
            const double x = d - m1;
            const double x2 = x * x;
            m2 += x2;
            m3 += x2 * x;
            m4 += x2 * x2;
        }
        const double b = static_cast<double>(sample.draws.size());
        m2 /= b;
        m3 /= b;
        m4 /= b;
        const double skew = m3 / std::pow(m2, 1.5);
        const double kurt = m4 / (m2 * m2);
        const auto mom = ll::moments(tau);
        c.expect(std::abs(skew - mom.third) <= 0.03,
                 "tau %.1f skewness %.4f vs 2 zeta(3(1-tau))/zeta(2(1-tau))^{3/2} = %.4f",
                 tau, skew, mom.third);
        c.expect(std::abs(kurt - mom.fourth) <= 0.1,
                 "tau %.1f kurtosis %.4f vs 3 + 6 zeta(4(1-tau))/zeta(2(1-tau))^2 = %.4f",
                 tau, kurt, mom.fourth);
    }
    return c.ok;
}

// --------------------------------------------------------------------------
// 9. Characteristic function vs the empirical cf

bool criterion9() {
    const double tau = 0.3;
    const auto sample = ll::sample_limit_law(ll::LimitLawSpec(tau, 10000), 100000, kSeed);
    Check c;
    for (const double t : {0.25, 0.5, 1.0}) {
        std::complex<double> emp{0.0, 0.0};
        for (const double d : sample.draws)
            emp += std::complex<double>(std::cos(t * d), std::sin(t * d));
        emp /= static_cast<double>(sample.draws.size());
        const auto psi = ll::cf_psi_infinity(tau, t, 1e-10);
        c.expect(std::abs(psi - emp) <= 0.02, "t = %.2f: |psi - empirical| = %.4f <= 0.02",
                 t, std::abs(psi - emp));
    }
    return c.ok;
}

// --------------------------------------------------------------------------
// 10. Property suites

double lo_quadratic(const Sample& s, std::size_t k) {
    const auto y = s.log_order_stats_desc();
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j)
        for (std::size_t i = j; i <= k; ++i)
            acc += static_cast<double>(j) * ((i == j) ? 0.5 : 1.0) * (y[j - 1] - y[j]) *
                   (y[i - 1] - y[i]);
    return std::sqrt(acc / static_cast<double>(k));
}

template <typename F>
double simpson(F f, double a, double b, int panels) {
    const double h = (b - a) / (2 * panels);
    double acc = f(a) + f(b);
    for (int i = 1; i < 2 * panels; ++i) acc += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return acc * h / 3.0;
}

bool criterion10() {
    Check c;

    // Abel identity and scale invariance on random samples.
    {
        bool abel = true, scale = true;
        for (int rep = 0; rep < 200; ++rep) {
            auto stream = rng::Stream(900 + rep);
            std::vector<double> v(8 + rep % 40);
            for (auto& x : v) x = 0.2 + 8.0 * stream.next_uniform();
            const Sample s(v);
            const double cmul = std::exp(4.0 * (stream.next_uniform() - 0.5));
            for (auto& x : v) x *= cmul;
            const Sample sc(v);
            for (std::size_t k = 1; k + 1 <= s.size(); ++k) {
                const double h = estimators::hill(s, k);
                const double t = estimators::t_tau(s, 1.0, k);
                abel = abel && std::abs(h - t) <= 1e-12 * (1.0 + std::abs(h));
            }
            const std::size_t k = s.size() / 2;
            auto close = [](double a, double b) {
                return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a));
            };
            scale = scale &&
                    close(estimators::t_tau(s, 0.5, k), estimators::t_tau(sc, 0.5, k)) &&
                    close(estimators::hill(s, k), estimators::hill(sc, k)) &&
                    close(estimators::lo(s, k), estimators::lo(sc, k)) &&
                    close(estimators::dehaan_resnick(s, std::max<std::size_t>(k, 2)),
                          estimators::dehaan_resnick(sc, std::max<std::size_t>(k, 2))) &&
                    close(estimators::half_family(s, k, 0.4),
                          estimators::half_family(sc, k, 0.4));
        }
        c.expect(abel, "Abel identity hill == t_tau(1) on 200 random samples (1e-12)");
        c.expect(scale, "scale invariance of all estimators (1e-12)");
    }

    // Lo O(k) rewrite vs the quadratic definition.
    {
        bool ok = true;
        for (int rep = 0; rep < 100; ++rep) {
            auto stream = rng::Stream(1700 + rep);
            std::vector<double> v(10 + rep % 60);
            for (auto& x : v) x = 0.2 + 5.0 * stream.next_uniform();
            const Sample s(v);
            const std::size_t k = 1 + rep % (s.size() - 1);
            const double fast = estimators::lo(s, k);
            const double slow = lo_quadratic(s, k);
            ok = ok && std::abs(fast - slow) <= 1e-10 * (1.0 + slow);
        }
        c.expect(ok, "lo O(k) suffix rewrite == O(k^2) definition on 100 samples (1e-10)");
    }

    // Malmquist equality in distribution.
    {
        constexpr int reps = 10000;
        std::vector<double> lhs(reps), rhs(reps);
        for (int r = 0; r < reps; ++r) {
            const auto [l, rr] =
                models::malmquist_pair(4000, 400, 0.4, rng::replication_seed(kSeed, r));
            lhs[r] = l;
            rhs[r] = rr;
        }
        const auto ks = stats::ks_two_sample(lhs, rhs);
        c.expect(ks.p_value > 0.01, "malmquist two-sample KS p = %.4f > 0.01", ks.p_value);
    }

    // Representation round trips.
    {
        const auto hall = models::hall_model(0.5, 2.0, 0.5);
        bool ok = true;
        for (const double u : {1e-8, 1e-5, 1e-3, 0.05, 0.5}) {
            const double integral =
                simpson([&](double x) { return hall.b_fn(std::exp(-x)); }, 0.0,
                        -std::log(u), 4000);
            const double recon = std::log(1.5) - 0.5 * std::log(u) + integral;
            const double expected = std::log(hall.quantile_tail(u));
            ok = ok && std::abs(recon - expected) <= 1e-8 * (1.0 + std::abs(expected));
        }
        c.expect(ok, "Karamata round trip for the hall model (1e-8 relative)");

        bool gok = true;
        for (const double beta : {2.0, 3.0}) {
            const double d_star = models::detail::dehaan_exact_d(beta);
            // x = y^beta on [0,1] removes the x^{a-1} endpoint singularity of
            // the integrand's derivative.
            const auto f = [&](double x) {
                return models::detail::dehaan_exact_s(beta, std::exp(-x));
            };
            const auto integral_to = [&](double v) {
                const double cc = std::min(v, 1.0);
                double acc = simpson(
                    [&](double y) {
                        return f(std::pow(y, beta)) * beta * std::pow(y, beta - 1.0);
                    },
                    0.0, std::pow(cc, 1.0 / beta), 6000);
                if (v > 1.0) acc += simpson(f, 1.0, v, 6000);
                return acc;
            };
            for (const double u : {1e-8, 1e-5, 1e-3, 0.05, 0.5}) {
                const double recon = d_star - models::detail::dehaan_exact_s(beta, u) +
                                     integral_to(-std::log(u));
                const double expected = std::pow(-std::log(u), 1.0 / beta);
                gok = gok && std::abs(recon - expected) <= 1e-6 * (1.0 + std::abs(expected));
            }
        }
        c.expect(gok, "de Haan round trip for the gumbel_weibull model (1e-6 relative)");
    }

    // S(k,tau) asymptotic-ratio convergence.
    {
        const std::vector<std::uint64_t> ks = {100, 1000, 10000, 100000, 1000000};
        auto monotone = [&](double tau, std::function<double(std::uint64_t)> asym,
                            double final_gap) {
            double prev = std::numeric_limits<double>::infinity();
            for (const auto k : ks) {
                const double gap = std::abs(series::s_sum(k, tau) / asym(k) - 1.0);
                if (gap > prev + 1e-9) return false;
                prev = gap;
            }
            return prev < final_gap;
        };
        const double z2 = std::numbers::pi * std::numbers::pi / 6.0;
        // The tau = 1 correction decays like 1/log k, leaving ~0.042 at 1e6.
        const bool ok =
            monotone(2.0, [&](std::uint64_t k) { return z2 * std::pow((double)k, -2.0); },
                     1e-5) &&
            monotone(1.0, [](std::uint64_t k) { return std::log((double)k) / (double)k; },
                     0.05) &&
            monotone(0.5, [](std::uint64_t) { return 2.0; }, 1e-2) &&
            monotone(0.3, [](std::uint64_t k) { return std::pow((double)k, 0.4) / 0.7; },
                     1e-2);
        c.expect(ok, "S(k,tau) asymptotic ratios converge to 1 monotonically along k = 1e2..1e6");
    }

    // Determinism under varying thread counts.
    {
        const ll::LimitLawSpec spec(0.3, 500);
        const auto base = ll::sample_limit_law(spec, 400, kSeed);
        const auto vbase = ll::sample_v_star_batch(0.4, 500, 200, kSeed);
        ex::ExperimentConfig cfg;
        cfg.model = models::pareto_model(0.5);
        cfg.n = 300;
        cfg.k_rule = ex::KRule::power(0.75);
        cfg.replications = 50;
        cfg.master_seed = kSeed;
        cfg.estimators = {ex::parse_estimator("hill"), ex::parse_estimator("lo")};
        const std::string tbase = ex::run_table2(cfg).replications_csv();

        bool ok = true;
        const int saved = omp_get_max_threads();
        for (const int t : {1, 2, 4}) {
            omp_set_num_threads(t);
            ok = ok && ll::sample_limit_law(spec, 400, kSeed).draws == base.draws;
            ok = ok && ll::sample_v_star_batch(0.4, 500, 200, kSeed) == vbase;
            ok = ok && ex::run_table2(cfg).replications_csv() == tbase;
        }
        omp_set_num_threads(saved);
        c.expect(ok, "byte-identical campaign outputs for 1, 2 and 4 threads");
    }

    return c.ok;
}

} // namespace

int main(int argc, char** argv) {
    struct Criterion {
        const char* title;
        double budget_s;
        bool (*run)();
    };
    const std::vector<Criterion> criteria = {
        {"zeta accuracy and sandwich", 1.0, criterion1},
        {"limit-law edf table", 30.0, criterion2},
        {"estimator comparison table", 60.0, criterion3},
        {"V*(1/2) normal limit", 60.0, criterion4},
        {"V*(0.3) non-normal limit", 60.0, criterion5},
        {"Frechet-branch studentized limit", 300.0, criterion6},
        {"Gumbel-branch exact centering", 300.0, criterion7},
        {"limit-law moment formulas", 60.0, criterion8},
        {"characteristic function", 30.0, criterion9},
        {"property suites", 120.0, criterion10},
    };

    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only != 0 && static_cast<int>(i + 1) != only) continue;
        std::printf("criterion %zu: %s\n", i + 1, criteria[i].title);
        const auto t0 = std::chrono::steady_clock::now();
        const bool ok = criteria[i].run();
        const double secs = runtime_s(t0);
        const bool in_budget = secs < criteria[i].budget_s;
        if (!in_budget)
            std::printf("    [FAIL] runtime %.1f s exceeds budget %.0f s\n", secs,
                        criteria[i].budget_s);
        std::printf("criterion %zu: %s (%.1f s)\n", i + 1,
                    ok && in_budget ? "PASS" : "FAIL", secs);
        if (!(ok && in_budget)) ++failures;
    }
    if (only == 0) std::printf("acceptance: %d of 10 criteria failed\n", failures);
    return failures;
}
