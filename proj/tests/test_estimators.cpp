#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "tailest/errors.hpp"
#include "tailest/estimators.hpp"
#include "tailest/rng.hpp"
#include "tailest/sample.hpp"
#include "tailest/series.hpp"

using namespace tailest;
namespace est = tailest::estimators;

namespace {

const double kE = std::numbers::e;

Sample three_point() { return Sample({kE, kE * kE, std::pow(kE, 4.0)}); }

Sample random_sample(std::uint64_t seed, std::size_t n) {
    auto stream = rng::Stream(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = 0.1 + 10.0 * stream.next_uniform();
    return Sample(std::move(v));
}

// O(k^2) double-loop definition of the Lo statistic, kept independent of the
// suffix-sum implementation.
double lo_quadratic(const Sample& s, std::size_t k) {
    const auto y = s.log_order_stats_desc();
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
        const double dj = y[j - 1] - y[j];
        for (std::size_t i = j; i <= k; ++i) {
            const double di = y[i - 1] - y[i];
            const double g = (i == j) ? 0.5 : 1.0;
            acc += static_cast<double>(j) * g * dj * di;
        }
    }
    return std::sqrt(acc / static_cast<double>(k));
}

} // namespace

TEST_CASE("Sample validates input and caches descending log order stats") {
    CHECK_THROWS_AS(Sample({1.0}), domain_error);
    CHECK_THROWS_AS(Sample({1.0, -2.0}), domain_error);
    CHECK_THROWS_AS(Sample({1.0, 0.0}), domain_error);
    CHECK_THROWS_AS(Sample({1.0, std::numeric_limits<double>::infinity()}), domain_error);

    const auto s = random_sample(11, 40);
    const auto y = s.log_order_stats_desc();
    REQUIRE(y.size() == 40);
    for (std::size_t i = 1; i < y.size(); ++i) CHECK(y[i - 1] >= y[i]);
}

TEST_CASE("permuting the input leaves the order statistics unchanged") {
    auto stream = rng::Stream(5);
    std::vector<double> v(64);
    for (auto& x : v) x = 0.5 + 3.0 * stream.next_uniform();
    const Sample s1(v);
    std::reverse(v.begin(), v.end());
    std::swap(v[3], v[40]);
    const Sample s2(v);
    const auto y1 = s1.log_order_stats_desc();
    const auto y2 = s2.log_order_stats_desc();
    for (std::size_t i = 0; i < y1.size(); ++i) CHECK(y1[i] == y2[i]);
}

TEST_CASE("t_tau on the three-point sample") {
    const auto s = three_point();
    CHECK(est::t_tau(s, 1.0, 2) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(est::t_tau(s, 1.0, 0), range_error);
    CHECK_THROWS_AS(est::t_tau(s, 1.0, 3), range_error);
    CHECK_THROWS_AS(est::t_tau(s, 0.0, 2), domain_error);
    CHECK_THROWS_AS(est::t_tau(s, 1.2, 2), domain_error);
}

TEST_CASE("equal observations give zero statistics everywhere") {
    const Sample s(std::vector<double>(12, 3.7));
    for (const double tau : {0.2, 0.5, 1.0})
        for (const std::size_t k : {1, 5, 11})
            CHECK(est::t_tau(s, tau, k) == 0.0);
    CHECK(est::hill(s, 5) == 0.0);
    CHECK(est::lo(s, 5) == 0.0);
    CHECK(est::dehaan_resnick(s, 5) == 0.0);
}

TEST_CASE("hill equals t_tau(1) by Abel summation on random samples") {
    for (int rep = 0; rep < 200; ++rep) {
        const auto s = random_sample(1000 + rep, 5 + rep % 56);
        for (std::size_t k = 1; k + 1 <= s.size(); ++k) {
            const double h = est::hill(s, k);
            const double t = est::t_tau(s, 1.0, k);
            CHECK(h == doctest::Approx(t).epsilon(1e-12));
            CHECK(t >= 0.0);
            CHECK(est::lo(s, k) >= 0.0);
        }
    }
}

TEST_CASE("hill on the three-point sample") {
    CHECK(est::hill(three_point(), 2) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("scale invariance of the log-spacing estimators") {
    auto stream = rng::Stream(31);
    for (int rep = 0; rep < 50; ++rep) {
        const auto s = random_sample(40 + rep, 30);
        const double c = std::exp(6.0 * (stream.next_uniform() - 0.5));
        std::vector<double> scaled = s.values();
        for (auto& x : scaled) x *= c;
        const Sample sc(scaled);
        const std::size_t k = 7;
        CHECK(est::t_tau(sc, 0.4, k) ==
              doctest::Approx(est::t_tau(s, 0.4, k)).epsilon(1e-12));
        CHECK(est::hill(sc, k) == doctest::Approx(est::hill(s, k)).epsilon(1e-12));
        CHECK(est::lo(sc, k) == doctest::Approx(est::lo(s, k)).epsilon(1e-12));
        CHECK(est::dehaan_resnick(sc, k) ==
              doctest::Approx(est::dehaan_resnick(s, k)).epsilon(1e-12));
        CHECK(est::half_family(sc, k, 0.3) ==
              doctest::Approx(est::half_family(s, k, 0.3)).epsilon(1e-12));
        CHECK(est::pickands(sc, 7) == doctest::Approx(est::pickands(s, 7)).epsilon(1e-12));
    }
}

TEST_CASE("pickands on crafted spacing ratios") {
    // Descending values with X_{n-k}-X_{n-2k} = 2 (X_{n-2k}-X_{n-4k}), k = 2.
    const Sample s2({10, 9, 4, 3, 2, 1.5, 1.4, 1.2, 1});
    CHECK(est::pickands(s2, 2) == doctest::Approx(1.0).epsilon(1e-12));

    // Ratio 1 gives 0.
    const Sample s0({10, 9, 3, 2.5, 2, 1.8, 1.5, 1.2, 1});
    CHECK(est::pickands(s0, 2) == doctest::Approx(0.0).epsilon(1e-12));

    // Zero denominator spacing: X_{n-2k,n} == X_{n-4k,n}.
    const Sample sd({10, 9, 4, 3, 2, 2, 2, 2, 2});
    CHECK_THROWS_AS(est::pickands(sd, 2), degenerate_error);

    // Zero numerator spacing -> nonpositive ratio.
    const Sample sn({10, 9, 4, 4, 4, 1.5, 1.4, 1.2, 1});
    CHECK_THROWS_AS(est::pickands(sn, 2), degenerate_error);

    CHECK_THROWS_AS(est::pickands(s2, 3), range_error); // 4k >= n
}

TEST_CASE("lo single-spacing example and the quadratic cross-check") {
    const Sample pairs({kE, std::pow(kE, 3.0)});
    CHECK(est::lo(pairs, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    for (int rep = 0; rep < 100; ++rep) {
        const auto s = random_sample(900 + rep, 8 + rep % 40);
        const std::size_t k = 1 + rep % (s.size() - 1);
        CHECK(est::lo(s, k) == doctest::Approx(lo_quadratic(s, k)).epsilon(1e-10));
    }
}

TEST_CASE("dehaan_resnick on the three-point sample") {
    CHECK(est::dehaan_resnick(three_point(), 2) ==
          doctest::Approx(3.0 / std::numbers::ln2).epsilon(1e-12));
    CHECK_THROWS_AS(est::dehaan_resnick(three_point(), 1), range_error);
}

TEST_CASE("half_family endpoints collapse to the two normalizations") {
    const auto s = random_sample(77, 60);
    const std::size_t k = 20;
    const double t = est::t_tau(s, 0.5, k);
    const double a_n = series::normalizers(k, 0.5).a_n;
    CHECK(est::half_family(s, k, 1e-12) == doctest::Approx(t / a_n).epsilon(1e-9));
    CHECK(est::half_family(s, k, 1.0 - 1e-12) == doctest::Approx(0.5 * t).epsilon(1e-9));
    CHECK_THROWS_AS(est::half_family(s, k, 0.0), domain_error);
    CHECK_THROWS_AS(est::half_family(s, k, 1.0), domain_error);
}

TEST_CASE("studentize is zero at the exactly-centered reference") {
    const auto s = random_sample(123, 50);
    const std::size_t k = 12;
    const double tau = 0.4;
    const auto nc = series::normalizers(k, tau);
    const double gamma_ref = est::t_tau(s, tau, k) / nc.a_n;
    CHECK(est::studentize(s, tau, k, gamma_ref) == 0.0);

    // Matches the explicit formula.
    const double manual =
        nc.a_n / nc.sigma_n * (est::t_tau(s, tau, k) / nc.a_n - 0.3);
    CHECK(est::studentize(s, tau, k, 0.3) == doctest::Approx(manual).epsilon(1e-14));
}

TEST_CASE("t_tau is continuous in tau") {
    for (int rep = 0; rep < 20; ++rep) {
        const auto s = random_sample(300 + rep, 40);
        auto stream = rng::Stream(rep);
        const double tau = 0.05 + 0.9 * stream.next_uniform();
        const double t0 = est::t_tau(s, tau, 15);
        const double t1 = est::t_tau(s, tau + 1e-9, 15);
        CHECK(std::abs(t1 - t0) <= 1e-6 * (1.0 + std::abs(t0)));
    }
}

TEST_CASE("sweep covers the grid, matches scalar calls, and records errors") {
    const auto s = random_sample(42, 30);
    const std::vector<double> taus = {0.3, 0.5};
    const std::vector<std::size_t> ks = {10, 20};
    const auto rep = est::sweep(s, taus, ks, 0.5);
    REQUIRE(rep.cells.size() == 4);
    for (const auto& cell : rep.cells) {
        CHECK(cell.error.empty());
        CHECK(cell.t_n == est::t_tau(s, cell.tau, cell.k));
        const double a_n = series::normalizers(cell.k, cell.tau).a_n;
        CHECK(cell.normalized == cell.t_n / a_n);
        REQUIRE(cell.studentized.has_value());
        CHECK(*cell.studentized ==
              doctest::Approx(est::studentize(s, cell.tau, cell.k, 0.5)).epsilon(1e-14));
    }

    // Single cell sweep equals the scalar call.
    const auto single = est::sweep(s, std::vector<double>{0.5},
                                   std::vector<std::size_t>{10}, std::nullopt);
    REQUIRE(single.cells.size() == 1);
    CHECK(single.cells[0].t_n == est::t_tau(s, 0.5, 10));
    CHECK_FALSE(single.cells[0].studentized.has_value());

    // Bad cells are marked, good cells survive.
    const auto mixed = est::sweep(s, std::vector<double>{0.5},
                                  std::vector<std::size_t>{10, 30}, std::nullopt);
    CHECK(mixed.cells[0].error.empty());
    CHECK_FALSE(mixed.cells[1].error.empty());
}

TEST_CASE("default k rule") {
    CHECK(est::default_k(300) == 73);
    CHECK(est::default_k(100000) == 5624);
}
