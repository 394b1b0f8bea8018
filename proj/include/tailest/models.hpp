#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tailest/sample.hpp"

namespace tailest::models {

/// A samplable distribution defined by its tail quantile function
/// quantile_tail(u) = F^{-1}(1-u) plus the slowly varying metadata (p, b, s)
/// used by the condition checks and exact-centering statistics.
struct TailModel {
    std::string name;
    double gamma = 0.0; // extreme value index; 0 means Gumbel domain
    std::function<double(double)> quantile_tail;
    std::function<double(double)> p_fn;
    std::function<double(double)> b_fn;
    std::function<double(double)> s_fn; // Gumbel auxiliary function, else empty
    std::map<std::string, double> params;
};

/// Strict Pareto: quantile_tail(u) = u^{-gamma}; p = b = 0.
TailModel pareto_model(double gamma);

/// Hall perturbation: quantile_tail(u) = u^{-gamma} (1 + c4 u^{eta gamma});
/// b(u) = -eta gamma c4 u^{eta gamma} / (1 + c4 u^{eta gamma}), p = 0.
/// Positivity and monotonicity are checked on a grid at construction.
TailModel hall_model(double gamma, double eta, double c4);

/// Gumbel-domain law with Y = log X of Weibull type:
/// quantile_tail(u) = exp((-log u)^{1/beta}), s(u) = (1/beta)(-log u)^{1/beta-1},
/// gamma = 0. beta = 1 is rejected (that law is exactly Pareto, Frechet domain).
TailModel gumbel_weibull_model(double beta);

/// Inverse-transform sample: X_i = quantile_tail(U_i) with U_i from
/// per-index substreams of (seed, model_sample). Deterministic.
Sample sample(const TailModel& model, std::size_t n, std::uint64_t seed);

struct ConditionRow {
    std::size_t n = 0;
    std::size_t k = 0;
    double g1 = 0.0;     // sup |p| on (0, lambda k/n]
    double g2 = 0.0;     // sup |b| on (0, lambda k/n]
    double d = 0.0;      // max(g1, g2 log k)
    double c1_lhs = 0.0; // g1 (sigma_n k^tau)^{-1} sum j^tau
    double c2_lhs = 0.0; // g2 (sigma_n k^tau)^{-1} sum j^{tau-1}
    double c3_lhs = 0.0; // d  (sigma_n k^tau)^{-1} sum j^{tau-1}
};

struct ConditionReport {
    double lambda = 0.0;
    double tau = 0.0;
    std::vector<ConditionRow> rows; // ordered by increasing n
    bool c1_decreasing = false;
    bool c2_decreasing = false;
    bool c3_decreasing = false;
};

/// Evaluates the three condition left-hand sides over a (n, k) schedule.
/// Sups are approximated on a 10^4-point log-spaced grid; for the built-in
/// models |p| and |b| are monotone, so the grid endpoint is exact.
ConditionReport check_conditions(const TailModel& model, double tau, double lambda,
                                 std::span<const std::pair<std::size_t, std::size_t>> schedule);

/// One draw of the two sides of the Malmquist identity:
///   lhs = k^{-tau} sum j^tau log(U_{j+1,n}/U_{j,n})   (uniform order statistics)
///   rhs = k^{-tau} sum j^{tau-1} E_j                  (independent exponentials)
/// Equal in distribution, not pointwise. The order-statistic ratios come from
/// the exponential-spacings construction (the normalizing total cancels).
std::pair<double, double> malmquist_pair(std::size_t n, std::size_t k, double tau,
                                         std::uint64_t seed);

/// Generalized extreme value df: exp(-(1+gamma x)^{-1/gamma}) on 1+gamma x > 0,
/// with the Gumbel limit exp(-e^{-x}) used when |gamma| < 1e-8.
double gev_cdf(double gamma, double x);

namespace detail {

/// Upper incomplete gamma Gamma(a, x), a > 0, x >= 0.
double upper_incomplete_gamma(double a, double x);

/// The auxiliary pair (s*, d*) for which the Gumbel-domain representation
///   G^{-1}(1-u) = d* - s*(u) + int_u^1 s*(t)/t dt
/// reproduces gumbel_weibull_model's log-quantile exactly:
///   s*(u) = (1/beta) Gamma(1/beta, -log u) / u,  d* = (1/beta) Gamma(1/beta).
/// The exposed s_fn is its u -> 0 asymptotic form.
double dehaan_exact_s(double beta, double u);
double dehaan_exact_d(double beta);

} // namespace detail

} // namespace tailest::models
