#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tailest/kstest.hpp"
#include "tailest/models.hpp"

namespace tailest::experiments {

using stats::ks_one_sample;
using stats::ks_two_sample;
using stats::KsResult;

/// k as a function of n: either a fixed count or ceil(n^p) parsed from
/// expressions like "n^0.75" / "ceil(n^0.75)" / "73".
class KRule {
public:
    KRule() = default;
    static KRule parse(const std::string& expr);
    static KRule power(double p);
    static KRule fixed(std::size_t k);

    std::size_t operator()(std::size_t n) const;
    const std::string& text() const { return text_; }

private:
    std::string text_ = "n^0.75";
    double power_ = 0.75;
    std::optional<std::size_t> fixed_;
};

enum class EstimatorKind { t_tau_normalized, hill, pickands, lo, dehaan_resnick, half_family };

struct EstimatorChoice {
    EstimatorKind kind = EstimatorKind::hill;
    double tau = 0.5; // t_tau_normalized only
    double a = 0.5;   // half_family only
    std::string label() const;
};

/// Parses labels like "hill", "t_tau_normalized:0.5", "half_family:0.25".
EstimatorChoice parse_estimator(const std::string& text);

struct ExperimentConfig {
    models::TailModel model;
    std::size_t n = 300;
    KRule k_rule;
    std::vector<EstimatorChoice> estimators;
    std::size_t replications = 500;
    std::uint64_t master_seed = 42;
};

struct ReplicationRecord {
    std::size_t rep = 0;
    std::uint64_t seed = 0;
    std::string estimator;
    double value = 0.0;
    bool ok = true;
    std::string error;
};

struct Aggregate {
    double mean = 0.0;
    double bias = 0.0;
    double mse = 0.0;
    std::size_t included = 0;
    std::size_t excluded = 0;
};

struct TestRecord {
    std::string name;
    std::size_t n = 0;
    std::size_t k = 0;
    double tau = 0.0;
    std::size_t replications = 0;
    double statistic = 0.0;
    double p_value = 0.0;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::size_t k = 0;
    std::vector<ReplicationRecord> per_replication; // sorted by (rep, estimator order)
    std::map<std::string, Aggregate> aggregates;
    std::vector<TestRecord> tests;

    std::string replications_csv() const;
    std::string aggregates_csv() const;
    std::string tests_csv() const;
};

/// Per replication: draw a model sample of size n, evaluate the configured
/// estimators at k = k_rule(n). Replications run in parallel; records and
/// aggregates do not depend on the worker count. Estimator failures
/// (e.g. Pickands degeneracy) are recorded and excluded from aggregates.
ExperimentResult run_table2(const ExperimentConfig& config);

struct EdfTableRow {
    std::string column; // tau value or "unif"
    std::vector<double> edf;
};

/// Empirical cdf of the truncated limit law at the evaluation points, one row
/// per tau plus optionally the uniform mixture.
std::vector<EdfTableRow> run_table1(std::span<const double> taus, bool include_mixture,
                                    std::uint64_t b, std::uint64_t truncation_n,
                                    std::span<const double> eval_points,
                                    std::uint64_t seed);
std::string table1_csv(const std::vector<EdfTableRow>& rows,
                       std::span<const double> eval_points);

/// R replications of the studentized statistic at tau = 1/2 against
/// Normal(0, gamma^2), one-sample KS. Requires model.gamma > 0 and R >= 10.
TestRecord run_normality_check(const models::TailModel& model, std::size_t n,
                               const KRule& k_rule, std::size_t r, std::uint64_t seed);

/// Two-sample KS between studentized statistics (divided by gamma) at
/// tau in (0, 1/2) and draws of the truncated limit law. tau = 1/2 belongs to
/// run_normality_check and is rejected here.
TestRecord run_limit_agreement(const models::TailModel& model, double tau,
                               std::size_t n, const KRule& k_rule, std::size_t r,
                               std::uint64_t truncation_n, std::uint64_t seed);

/// Gumbel-branch exact-centering statistic
///   (s(k/n) sigma_n)^{-1} (T_n(tau) - a_n(tau) s(k/n))
/// against the standard normal. Requires a model with s_fn (gamma = 0).
TestRecord run_gumbel_centering_check(const models::TailModel& model, double tau,
                                      std::size_t n, const KRule& k_rule,
                                      std::size_t r, std::uint64_t seed);

/// Batch of studentized statistics, one per replication, computed through the
/// top-order-statistics fast path. Bit-identical to building the full Sample
/// and calling estimators::studentize with the same per-replication seed.
std::vector<double> studentized_batch(const models::TailModel& model, std::size_t n,
                                      std::size_t k, double tau, double gamma_ref,
                                      std::size_t r, std::uint64_t seed,
                                      bool parallel = true);

/// Same fast path for the Gumbel-branch centered statistic.
std::vector<double> gumbel_centered_batch(const models::TailModel& model, std::size_t n,
                                          std::size_t k, double tau, std::size_t r,
                                          std::uint64_t seed, bool parallel = true);

namespace reference {

/// Full-sample serial path (models::sample + estimators) used to validate the
/// batch kernels; identical bits for the same replication seed.
double studentized_one(const models::TailModel& model, std::size_t n, std::size_t k,
                       double tau, double gamma_ref, std::uint64_t rep_seed);

} // namespace reference

} // namespace tailest::experiments
