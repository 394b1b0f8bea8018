#include "tailest/experiments.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "kernels.hpp"
#include "tailest/csv.hpp"
#include "tailest/errors.hpp"
#include "tailest/estimators.hpp"
#include "tailest/limitlaw.hpp"
#include "tailest/rng.hpp"
#include "tailest/series.hpp"

namespace tailest::experiments {

// ---------------------------------------------------------------------------
// KRule

KRule KRule::parse(const std::string& expr) {
    std::string s;
    for (char c : expr)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.starts_with("ceil(") && s.ends_with(")"))
        s = s.substr(5, s.size() - 6);
    KRule rule;
    rule.text_ = s;
    if (s.starts_with("n^")) {
        std::size_t pos = 0;
        const double p = std::stod(s.substr(2), &pos);
        if (pos + 2 != s.size() || !(p > 0.0) || p >= 1.0)
            throw domain_error("k_rule: expected n^p with p in (0,1), got '" + expr + "'");
        rule.power_ = p;
        return rule;
    }
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size() || v < 1)
        throw domain_error("k_rule: expected 'n^p' or a positive integer, got '" + expr + "'");
    rule.fixed_ = static_cast<std::size_t>(v);
    return rule;
}

KRule KRule::power(double p) {
    KRule rule;
    rule.power_ = p;
    rule.text_ = "n^" + csv::format(p);
    return rule;
}

KRule KRule::fixed(std::size_t k) {
    KRule rule;
    rule.fixed_ = k;
    rule.text_ = std::to_string(k);
    return rule;
}

std::size_t KRule::operator()(std::size_t n) const {
    if (fixed_) return *fixed_;
    return static_cast<std::size_t>(
        std::ceil(std::pow(static_cast<double>(n), power_)));
}

// ---------------------------------------------------------------------------
// Estimator choices

std::string EstimatorChoice::label() const {
    switch (kind) {
        case EstimatorKind::t_tau_normalized:
            return "t_tau_normalized:" + csv::format(tau);
        case EstimatorKind::hill: return "hill";
        case EstimatorKind::pickands: return "pickands";
        case EstimatorKind::lo: return "lo";
        case EstimatorKind::dehaan_resnick: return "dr";
        case EstimatorKind::half_family:
            return "half_family:" + csv::format(a);
    }
    return "?";
}

EstimatorChoice parse_estimator(const std::string& text) {
    std::string name = text;
    std::optional<double> param;
    if (const auto colon = text.find(':'); colon != std::string::npos) {
        name = text.substr(0, colon);
        param = std::stod(text.substr(colon + 1));
    }
    EstimatorChoice c;
    if (name == "t_tau_normalized") {
        c.kind = EstimatorKind::t_tau_normalized;
        c.tau = param.value_or(0.5);
    } else if (name == "hill") {
        c.kind = EstimatorKind::hill;
    } else if (name == "pickands") {
        c.kind = EstimatorKind::pickands;
    } else if (name == "lo") {
        c.kind = EstimatorKind::lo;
    } else if (name == "dr" || name == "dehaan_resnick") {
        c.kind = EstimatorKind::dehaan_resnick;
    } else if (name == "half_family") {
        c.kind = EstimatorKind::half_family;
        c.a = param.value_or(0.5);
    } else {
        throw domain_error("unknown estimator '" + text + "'");
    }
    return c;
}

namespace {

double evaluate(const EstimatorChoice& choice, const Sample& sample, std::size_t k) {
    switch (choice.kind) {
        case EstimatorKind::t_tau_normalized:
            return estimators::t_tau(sample, choice.tau, k) /
                   series::normalizers(k, choice.tau).a_n;
        case EstimatorKind::hill: return estimators::hill(sample, k);
        case EstimatorKind::pickands: return estimators::pickands(sample, k);
        case EstimatorKind::lo: return estimators::lo(sample, k);
        case EstimatorKind::dehaan_resnick: return estimators::dehaan_resnick(sample, k);
        case EstimatorKind::half_family: return estimators::half_family(sample, k, choice.a);
    }
    throw domain_error("unknown estimator kind");
}

} // namespace

// ---------------------------------------------------------------------------
// Table 2 campaign

ExperimentResult run_table2(const ExperimentConfig& config) {
    if (config.replications < 1)
        throw domain_error("run_table2: requires replications >= 1");
    if (config.estimators.empty())
        throw domain_error("run_table2: no estimators configured");
    const std::size_t k = config.k_rule(config.n);
    if (k + 1 > config.n) throw range_error("run_table2: k_rule(n) must be <= n-1");

    ExperimentResult result;
    result.config = config;
    result.k = k;
    const std::size_t ne = config.estimators.size();
    result.per_replication.resize(config.replications * ne);

    const std::int64_t reps = static_cast<std::int64_t>(config.replications);
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < reps; ++r) {
        const std::uint64_t rep_seed =
            rng::replication_seed(config.master_seed, static_cast<std::uint64_t>(r));
        const Sample sample = models::sample(config.model, config.n, rep_seed);
        for (std::size_t e = 0; e < ne; ++e) {
            ReplicationRecord& rec =
                result.per_replication[static_cast<std::size_t>(r) * ne + e];
            rec.rep = static_cast<std::size_t>(r);
            rec.seed = rep_seed;
            rec.estimator = config.estimators[e].label();
            try {
                rec.value = evaluate(config.estimators[e], sample, k);
            } catch (const std::exception& ex) {
                rec.ok = false;
                rec.error = ex.what();
            }
        }
    }

    for (const auto& choice : config.estimators) {
        Aggregate agg;
        double sum = 0.0, sq = 0.0;
        const std::string label = choice.label();
        for (const auto& rec : result.per_replication) {
            if (rec.estimator != label) continue;
            if (!rec.ok) {
                ++agg.excluded;
                continue;
            }
            ++agg.included;
            sum += rec.value;
            const double err = rec.value - config.model.gamma;
            sq += err * err;
        }
        if (agg.included > 0) {
            agg.mean = sum / static_cast<double>(agg.included);
            agg.bias = agg.mean - config.model.gamma;
            agg.mse = sq / static_cast<double>(agg.included);
        }
        result.aggregates[label] = agg;
    }
    return result;
}

std::string ExperimentResult::replications_csv() const {
    csv::Writer w;
    w.header({"replication", "seed", "estimator", "value", "status"});
    for (const auto& rec : per_replication)
        w.row(std::uint64_t{rec.rep}, rec.seed, rec.estimator,
              rec.ok ? csv::format(rec.value) : std::string{},
              rec.ok ? std::string{"ok"} : "excluded: " + rec.error);
    return w.str();
}

std::string ExperimentResult::aggregates_csv() const {
    csv::Writer w;
    w.header({"estimator", "mean", "bias", "mse", "included", "excluded"});
    for (const auto& [label, agg] : aggregates)
        w.row(label, agg.mean, agg.bias, agg.mse, std::uint64_t{agg.included},
              std::uint64_t{agg.excluded});
    return w.str();
}

std::string ExperimentResult::tests_csv() const {
    csv::Writer w;
    w.header({"name", "n", "k", "tau", "replications", "statistic", "p_value"});
    for (const auto& t : tests)
        w.row(t.name, std::uint64_t{t.n}, std::uint64_t{t.k}, t.tau,
              std::uint64_t{t.replications}, t.statistic, t.p_value);
    return w.str();
}

// ---------------------------------------------------------------------------
// Table 1

std::vector<EdfTableRow> run_table1(std::span<const double> taus, bool include_mixture,
                                    std::uint64_t b, std::uint64_t truncation_n,
                                    std::span<const double> eval_points,
                                    std::uint64_t seed) {
    std::vector<EdfTableRow> rows;
    std::size_t col = 0;
    for (const double tau : taus) {
        const std::uint64_t col_seed = rng::mix64(seed + rng::kGolden * (col++ + 1));
        const auto sample = limitlaw::sample_limit_law(
            limitlaw::LimitLawSpec(tau, truncation_n), b, col_seed);
        EdfTableRow row;
        row.column = csv::format(tau);
        for (const double u : eval_points)
            row.edf.push_back(limitlaw::empirical_cdf(sample, u));
        rows.push_back(std::move(row));
    }
    if (include_mixture) {
        const std::uint64_t col_seed = rng::mix64(seed + rng::kGolden * (col + 1));
        const auto sample = limitlaw::sample_limit_law_mixture(b, col_seed, truncation_n);
        EdfTableRow row;
        row.column = "unif";
        for (const double u : eval_points)
            row.edf.push_back(limitlaw::empirical_cdf(sample, u));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string table1_csv(const std::vector<EdfTableRow>& rows,
                       std::span<const double> eval_points) {
    csv::Writer w;
    w.header({"column", "point", "edf"});
    for (const auto& row : rows)
        for (std::size_t i = 0; i < eval_points.size(); ++i)
            w.row(row.column, eval_points[i], row.edf[i]);
    return w.str();
}

// ---------------------------------------------------------------------------
// Studentized batches through the top-order-statistics path

namespace {

// Descending log order statistics of the top (k+1) sample values for one
// replication. The uniforms match models::sample bit for bit, so the result
// equals the full-sample path exactly.
void top_log_order_stats(const models::TailModel& model, std::size_t n, std::size_t k,
                         std::uint64_t rep_seed, std::vector<double>& u_asc,
                         std::vector<double>& y_desc, std::vector<double>& workbuf) {
    u_asc.resize(k + 1);
    y_desc.resize(k + 1);
    kernel::smallest_uniforms(rep_seed, rng::StreamLabel::model_sample, n, u_asc,
                              workbuf);
    for (std::size_t j = 0; j <= k; ++j)
        y_desc[j] = std::log(model.quantile_tail(u_asc[j]));
}

} // namespace

std::vector<double> studentized_batch(const models::TailModel& model, std::size_t n,
                                      std::size_t k, double tau, double gamma_ref,
                                      std::size_t r, std::uint64_t seed,
                                      bool parallel) {
    if (k < 1 || k + 1 > n) throw range_error("studentized_batch: requires 1 <= k <= n-1");
    std::vector<double> out(r);
    const std::int64_t reps = static_cast<std::int64_t>(r);
#pragma omp parallel if (parallel)
    {
        std::vector<double> u_asc, y_desc, workbuf;
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < reps; ++i) {
            const std::uint64_t rep_seed =
                rng::replication_seed(seed, static_cast<std::uint64_t>(i));
            top_log_order_stats(model, n, k, rep_seed, u_asc, y_desc, workbuf);
            out[static_cast<std::size_t>(i)] =
                estimators::detail::studentize_logdesc(y_desc, tau, k, gamma_ref);
        }
    }
    return out;
}

std::vector<double> gumbel_centered_batch(const models::TailModel& model, std::size_t n,
                                          std::size_t k, double tau, std::size_t r,
                                          std::uint64_t seed, bool parallel) {
    if (!model.s_fn)
        throw domain_error("gumbel_centered_batch: model has no auxiliary s_fn");
    if (k < 1 || k + 1 > n) throw range_error("gumbel_centered_batch: requires 1 <= k <= n-1");
    const double s_kn = model.s_fn(static_cast<double>(k) / static_cast<double>(n));
    const auto nc = series::normalizers(k, tau);
    std::vector<double> out(r);
    const std::int64_t reps = static_cast<std::int64_t>(r);
#pragma omp parallel if (parallel)
    {
        std::vector<double> u_asc, y_desc, workbuf;
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < reps; ++i) {
            const std::uint64_t rep_seed =
                rng::replication_seed(seed, static_cast<std::uint64_t>(i));
            top_log_order_stats(model, n, k, rep_seed, u_asc, y_desc, workbuf);
            const double t = estimators::detail::t_tau_logdesc(y_desc, tau, k);
            out[static_cast<std::size_t>(i)] =
                (t - nc.a_n * s_kn) / (nc.sigma_n * s_kn);
        }
    }
    return out;
}

namespace reference {

double studentized_one(const models::TailModel& model, std::size_t n, std::size_t k,
                       double tau, double gamma_ref, std::uint64_t rep_seed) {
    const Sample sample = models::sample(model, n, rep_seed);
    return estimators::studentize(sample, tau, k, gamma_ref);
}

} // namespace reference

// ---------------------------------------------------------------------------
// Distributional checks

TestRecord run_normality_check(const models::TailModel& model, std::size_t n,
                               const KRule& k_rule, std::size_t r, std::uint64_t seed) {
    if (!(model.gamma > 0.0))
        throw domain_error("run_normality_check: requires model.gamma > 0");
    if (r < 10) throw domain_error("run_normality_check: requires R >= 10");
    const std::size_t k = k_rule(n);
    const auto stats_vec =
        studentized_batch(model, n, k, 0.5, model.gamma, r, seed);
    const double gamma = model.gamma;
    const auto ks = stats::ks_one_sample(
        stats_vec, [gamma](double x) { return stats::normal_cdf(x / gamma); });
    return {"normality_tau_half", n, k, 0.5, r, ks.statistic, ks.p_value};
}

TestRecord run_limit_agreement(const models::TailModel& model, double tau,
                               std::size_t n, const KRule& k_rule, std::size_t r,
                               std::uint64_t truncation_n, std::uint64_t seed) {
    if (!(model.gamma > 0.0))
        throw domain_error("run_limit_agreement: requires model.gamma > 0");
    if (!(tau > 0.0) || !(tau < 0.5))
        throw domain_error("run_limit_agreement: tau must be in (0, 1/2); "
                           "tau = 1/2 belongs to run_normality_check");
    if (r < 10) throw domain_error("run_limit_agreement: requires R >= 10");
    const std::size_t k = k_rule(n);

    auto stats_vec = studentized_batch(model, n, k, tau, model.gamma, r, seed);
    for (double& v : stats_vec) v /= model.gamma;

    // Limit-law comparison draws come from a disjoint stream label.
    std::vector<double> law_draws(r);
    const auto weights = kernel::power_weights(truncation_n, tau - 1.0);
    const double norm = series::partial_zeta(2.0 * (1.0 - tau), truncation_n);
    kernel::limit_law_batch(weights, 1.0 / std::sqrt(norm), seed,
                            rng::StreamLabel::experiment_limit, 0, law_draws, true);

    const auto ks = stats::ks_two_sample(stats_vec, law_draws);
    return {"limit_agreement", n, k, tau, r, ks.statistic, ks.p_value};
}

TestRecord run_gumbel_centering_check(const models::TailModel& model, double tau,
                                      std::size_t n, const KRule& k_rule,
                                      std::size_t r, std::uint64_t seed) {
    if (r < 10) throw domain_error("run_gumbel_centering_check: requires R >= 10");
    const std::size_t k = k_rule(n);
    const auto stats_vec = gumbel_centered_batch(model, n, k, tau, r, seed);
    const auto ks = stats::ks_one_sample(
        stats_vec, [](double x) { return stats::normal_cdf(x); });
    return {"gumbel_centering", n, k, tau, r, ks.statistic, ks.p_value};
}

} // namespace tailest::experiments
