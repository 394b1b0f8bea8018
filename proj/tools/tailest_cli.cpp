// Command-line front end: estimator sweeps on ingested data, limit-law
// tables, zeta evaluation, condition checks and seeded experiment campaigns.
//
// Exit codes: 0 success, 2 unparsable input (file or config), 3 domain error
// (invalid values or parameters), 4 more than half of a campaign's
// replications were excluded.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tailest/csv.hpp"
#include "tailest/errors.hpp"
#include "tailest/estimators.hpp"
#include "tailest/experiments.hpp"
#include "tailest/limitlaw.hpp"
#include "tailest/models.hpp"
#include "tailest/series.hpp"

namespace {

constexpr std::uint64_t kBuiltinSeed = 42;

struct CliParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("TAILEST_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw CliParseError("TAILEST_SEED is not an integer: " + std::string(env));
        }
    }
    return kBuiltinSeed;
}

// Every run logs the fully resolved configuration next to its outputs (or to
// stderr when writing to stdout).
void log_resolved(const std::vector<std::pair<std::string, std::string>>& kv,
                  const std::string& out_path) {
    std::string text;
    for (const auto& [k, v] : kv) text += k + " = " + v + "\n";
    if (out_path.empty()) {
        std::cerr << "# resolved config\n";
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) std::cerr << "# " << line << "\n";
        return;
    }
    std::string path = out_path;
    if (const auto dot = path.rfind(".csv"); dot != std::string::npos && dot == path.size() - 4)
        path = path.substr(0, dot);
    std::ofstream out(path + ".resolved.cfg", std::ios::binary);
    out << text;
}

void emit(const std::string& body, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw CliParseError("cannot open output file " + out_path);
    out << body;
}

std::vector<double> read_sample_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliParseError("cannot open input file " + path);
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    std::size_t first_bad_value_line = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string trimmed;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c)) || !trimmed.empty())
                trimmed += c;
        while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
            trimmed.pop_back();
        if (trimmed.empty() || trimmed[0] == '#') continue;
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(trimmed, &pos);
        } catch (const std::exception&) {
            throw CliParseError(path + ":" + std::to_string(line_no) +
                                ": not a number: '" + trimmed + "'");
        }
        if (pos != trimmed.size())
            throw CliParseError(path + ":" + std::to_string(line_no) +
                                ": trailing junk after number: '" + trimmed + "'");
        if (!(v > 0.0) && first_bad_value_line == 0) first_bad_value_line = line_no;
        values.push_back(v);
    }
    if (values.size() < 2)
        throw CliParseError(path + ": needs at least 2 observations, found " +
                            std::to_string(values.size()));
    if (first_bad_value_line != 0)
        throw tailest::domain_error(path + ":" + std::to_string(first_bad_value_line) +
                                    ": nonpositive value rejected");
    return values;
}

tailest::models::TailModel build_model(const std::string& name, double gamma,
                                       double eta, double c4, double beta) {
    using namespace tailest::models;
    if (name == "pareto") return pareto_model(gamma);
    if (name == "hall") return hall_model(gamma, eta, c4);
    if (name == "gumbel_weibull") return gumbel_weibull_model(beta);
    throw CliParseError("unknown model '" + name +
                        "' (expected pareto, hall or gumbel_weibull)");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliParseError("cannot open config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CliParseError(path + ":" + std::to_string(line_no) +
                                ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        static const std::vector<std::string> known = {
            "model", "gamma", "eta", "c4", "beta", "n",
            "k_rule", "estimators", "reps", "seed", "out"};
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw CliParseError(path + ":" + std::to_string(line_no) +
                                ": unknown key '" + key + "'");
        kv[key] = value;
    }
    return kv;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) parts.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) parts.push_back(cur);
    return parts;
}

// ---------------------------------------------------------------------------

int cmd_estimate(const std::string& input, std::vector<double> taus,
                 std::vector<std::size_t> ks, std::optional<double> gamma_ref,
                 const std::string& out) {
    const auto values = read_sample_file(input);
    const tailest::Sample sample(values);
    const std::size_t n = sample.size();
    if (taus.empty()) taus = {0.5, 1.0};
    if (ks.empty()) {
        auto kf = [n](double p) {
            return static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), p)));
        };
        ks = {kf(0.6), kf(0.75), kf(0.9)};
        ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    }

    const auto report = tailest::estimators::sweep(sample, taus, ks, gamma_ref);
    tailest::csv::Writer w;
    w.header({"tau", "k", "t_tau", "normalized", "studentized", "error"});
    for (const auto& cell : report.cells) {
        if (!cell.error.empty()) {
            w.row(cell.tau, std::uint64_t{cell.k}, "", "", "", cell.error);
            continue;
        }
        w.row(cell.tau, std::uint64_t{cell.k}, cell.t_n, cell.normalized,
              cell.studentized ? tailest::csv::format(*cell.studentized) : std::string{},
              std::string{});
    }

    std::vector<std::pair<std::string, std::string>> kv = {
        {"command", "estimate"}, {"input", input}, {"n", std::to_string(n)}};
    for (double t : taus) kv.emplace_back("tau", tailest::csv::format(t));
    for (auto k : ks) kv.emplace_back("k", std::to_string(k));
    if (gamma_ref) kv.emplace_back("gamma_ref", tailest::csv::format(*gamma_ref));
    kv.emplace_back("out", out.empty() ? "<stdout>" : out);
    log_resolved(kv, out);
    emit(w.str(), out);
    return 0;
}

int cmd_simulate_limit(std::optional<double> tau, bool mixture, std::uint64_t b,
                       std::uint64_t n_trunc, std::uint64_t seed,
                       std::vector<double> points, const std::string& out) {
    if (points.empty()) points = {-1.96, 0.0, 1.96};
    if (mixture == tau.has_value())
        throw CliParseError("simulate-limit: pass exactly one of --tau or --mixture");

    std::vector<double> taus;
    if (tau) taus.push_back(*tau);
    const auto rows = tailest::experiments::run_table1(taus, mixture, b, n_trunc,
                                                       points, seed);
    std::vector<std::pair<std::string, std::string>> kv = {
        {"command", "simulate-limit"},
        {"column", mixture ? "unif" : tailest::csv::format(*tau)},
        {"B", std::to_string(b)},
        {"N", std::to_string(n_trunc)},
        {"seed", std::to_string(seed)},
        {"out", out.empty() ? "<stdout>" : out}};
    log_resolved(kv, out);
    emit(tailest::experiments::table1_csv(rows, points), out);
    return 0;
}

int cmd_zeta(double s, double tol) {
    const auto z = tailest::series::zeta(s, tol);
    std::cout << tailest::csv::format(z.value) << "\n";
    return 0;
}

int cmd_check_conditions(const std::string& model_name, double gamma, double eta,
                         double c4, double beta, double tau, double lambda,
                         const std::string& schedule_text, const std::string& out) {
    const auto model = build_model(model_name, gamma, eta, c4, beta);
    std::vector<std::pair<std::size_t, std::size_t>> schedule;
    for (const auto& item : split_list(schedule_text)) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw CliParseError("schedule entries must be n:k, got '" + item + "'");
        schedule.emplace_back(std::stoull(item.substr(0, colon)),
                              std::stoull(item.substr(colon + 1)));
    }
    if (schedule.empty()) throw CliParseError("schedule is empty");

    const auto report = tailest::models::check_conditions(model, tau, lambda, schedule);
    tailest::csv::Writer w;
    w.header({"n", "k", "g1", "g2", "d", "c1_lhs", "c2_lhs", "c3_lhs"});
    for (const auto& row : report.rows)
        w.row(std::uint64_t{row.n}, std::uint64_t{row.k}, row.g1, row.g2, row.d,
              row.c1_lhs, row.c2_lhs, row.c3_lhs);

    std::vector<std::pair<std::string, std::string>> kv = {
        {"command", "check-conditions"}, {"model", model_name},
        {"tau", tailest::csv::format(tau)}, {"lambda", tailest::csv::format(lambda)},
        {"schedule", schedule_text}, {"out", out.empty() ? "<stdout>" : out}};
    log_resolved(kv, out);
    emit(w.str(), out);
    return 0;
}

struct ExperimentFlags {
    std::string config_path;
    std::optional<std::string> model;
    std::optional<double> gamma, eta, c4, beta;
    std::optional<std::size_t> n, reps;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> k_rule, out;
};

int cmd_experiment(const ExperimentFlags& flags) {
    const auto file = read_config_file(flags.config_path);
    auto pick_str = [&](const std::optional<std::string>& flag, const char* key,
                        const std::string& fallback) {
        if (flag) return *flag;
        if (auto it = file.find(key); it != file.end()) return it->second;
        return fallback;
    };
    auto pick_d = [&](const std::optional<double>& flag, const char* key, double fallback) {
        if (flag) return *flag;
        if (auto it = file.find(key); it != file.end()) return std::stod(it->second);
        return fallback;
    };

    const std::string model_name = pick_str(flags.model, "model", "pareto");
    const double gamma = pick_d(flags.gamma, "gamma", 1.0);
    const double eta = pick_d(flags.eta, "eta", 1.0);
    const double c4 = pick_d(flags.c4, "c4", 1.0);
    const double beta = pick_d(flags.beta, "beta", 2.0);

    tailest::experiments::ExperimentConfig config;
    config.model = build_model(model_name, gamma, eta, c4, beta);
    config.n = flags.n ? *flags.n
               : file.contains("n") ? std::stoull(file.at("n")) : 300;
    config.k_rule = tailest::experiments::KRule::parse(pick_str(flags.k_rule, "k_rule", "n^0.75"));
    config.replications = flags.reps ? *flags.reps
                          : file.contains("reps") ? std::stoull(file.at("reps")) : 500;
    config.master_seed = flags.seed ? *flags.seed
                         : file.contains("seed") ? std::stoull(file.at("seed"))
                                                 : default_seed();
    const std::string est_text =
        pick_str(std::nullopt, "estimators", "t_tau_normalized:0.5,hill,pickands,lo");
    for (const auto& item : split_list(est_text))
        config.estimators.push_back(tailest::experiments::parse_estimator(item));

    const std::string prefix = pick_str(flags.out, "out", "experiment");

    const auto result = tailest::experiments::run_table2(config);

    std::vector<std::pair<std::string, std::string>> kv = {
        {"command", "experiment"}, {"config", flags.config_path},
        {"model", model_name}, {"gamma", tailest::csv::format(gamma)}};
    if (model_name == "hall") {
        kv.emplace_back("eta", tailest::csv::format(eta));
        kv.emplace_back("c4", tailest::csv::format(c4));
    }
    if (model_name == "gumbel_weibull") kv.emplace_back("beta", tailest::csv::format(beta));
    kv.emplace_back("n", std::to_string(config.n));
    kv.emplace_back("k_rule", config.k_rule.text());
    kv.emplace_back("k", std::to_string(result.k));
    kv.emplace_back("estimators", est_text);
    kv.emplace_back("reps", std::to_string(config.replications));
    kv.emplace_back("seed", std::to_string(config.master_seed));
    kv.emplace_back("out", prefix);
    log_resolved(kv, prefix + ".csv");

    emit(result.replications_csv(), prefix + "_replications.csv");
    emit(result.aggregates_csv(), prefix + "_aggregates.csv");
    std::cout << result.aggregates_csv();

    for (const auto& [label, agg] : result.aggregates) {
        if (agg.excluded * 2 > config.replications) {
            std::cerr << "error: estimator " << label << " excluded "
                      << agg.excluded << "/" << config.replications
                      << " replications\n";
            return 4;
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tailest - tail-index estimation via generalized Hill processes"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "print help for all subcommands");

    // estimate
    auto* est = app.add_subcommand("estimate", "estimator sweep over a data file");
    std::string est_input, est_out;
    std::vector<double> est_taus;
    std::vector<std::size_t> est_ks;
    double est_gamma = 0.0;
    est->add_option("--input", est_input, "one positive observation per line; '#' comments")
        ->required();
    est->add_option("--tau", est_taus, "tau grid in (0,1] (default 0.5,1)")->delimiter(',');
    est->add_option("--k", est_ks,
                    "k grid (default ceil(n^0.6), ceil(n^0.75), ceil(n^0.9))")
        ->delimiter(',');
    auto* est_g = est->add_option("--gamma", est_gamma, "reference gamma: adds studentized column");
    est->add_option("--out", est_out, "output CSV path (default stdout)");

    // simulate-limit
    auto* sim = app.add_subcommand("simulate-limit",
                                   "empirical cdf table of the truncated limit law");
    double sim_tau = 0.3;
    bool sim_mixture = false;
    std::uint64_t sim_b = 10000, sim_n = 10000;
    std::uint64_t sim_seed = 0;
    bool sim_seed_set = false;
    std::vector<double> sim_points;
    std::string sim_out;
    auto* sim_tau_opt = sim->add_option("--tau", sim_tau, "tau in (0, 1/2)");
    sim->add_flag("--mixture", sim_mixture, "uniform-tau mixture instead of fixed tau");
    sim->add_option("--B", sim_b, "number of draws (default 10000)");
    sim->add_option("--N", sim_n, "series truncation (default 10000)");
    sim->add_option("--seed", sim_seed, "master seed")->each([&](const std::string&) {
        sim_seed_set = true;
    });
    sim->add_option("--points", sim_points, "edf evaluation points (default -1.96,0,1.96)")
        ->delimiter(',');
    sim->add_option("--out", sim_out, "output CSV path (default stdout)");

    // zeta
    auto* zet = app.add_subcommand("zeta", "evaluate the Riemann zeta function");
    double zeta_s = 2.0, zeta_tol = 1e-10;
    zet->add_option("--s", zeta_s, "argument s > 1")->required();
    zet->add_option("--tol", zeta_tol, "absolute error target (default 1e-10)");

    // check-conditions
    auto* chk = app.add_subcommand("check-conditions",
                                   "evaluate conditions (C1)-(C3) over a schedule");
    std::string chk_model = "pareto", chk_schedule, chk_out;
    double chk_gamma = 1.0, chk_eta = 1.0, chk_c4 = 1.0, chk_beta = 2.0;
    double chk_tau = 0.5, chk_lambda = 1.5;
    chk->add_option("--model", chk_model, "pareto | hall | gumbel_weibull");
    chk->add_option("--gamma", chk_gamma, "extreme value index (pareto/hall)");
    chk->add_option("--eta", chk_eta, "hall perturbation exponent");
    chk->add_option("--c4", chk_c4, "hall perturbation amplitude");
    chk->add_option("--beta", chk_beta, "gumbel_weibull shape");
    chk->add_option("--tau", chk_tau, "tau in (0, 1/2]");
    chk->add_option("--lambda", chk_lambda, "sup-window factor (> 1)");
    chk->add_option("--schedule", chk_schedule, "comma list of n:k pairs")->required();
    chk->add_option("--out", chk_out, "output CSV path (default stdout)");

    // experiment
    auto* exp = app.add_subcommand("experiment", "seeded Monte Carlo campaign from a config file");
    ExperimentFlags exp_flags;
    std::string exp_model, exp_krule, exp_out;
    double exp_gamma = 0, exp_eta = 0, exp_c4 = 0, exp_beta = 0;
    std::size_t exp_n = 0, exp_reps = 0;
    std::uint64_t exp_seed = 0;
    exp->add_option("--config", exp_flags.config_path, "key = value config file")->required();
    auto* exp_model_o = exp->add_option("--model", exp_model, "override: model name");
    auto* exp_gamma_o = exp->add_option("--gamma", exp_gamma, "override: gamma");
    auto* exp_eta_o = exp->add_option("--eta", exp_eta, "override: hall eta");
    auto* exp_c4_o = exp->add_option("--c4", exp_c4, "override: hall c4");
    auto* exp_beta_o = exp->add_option("--beta", exp_beta, "override: gumbel_weibull beta");
    auto* exp_n_o = exp->add_option("--n", exp_n, "override: sample size");
    auto* exp_reps_o = exp->add_option("--reps", exp_reps, "override: replications");
    auto* exp_seed_o = exp->add_option("--seed", exp_seed, "override: master seed");
    auto* exp_krule_o = exp->add_option("--k-rule", exp_krule, "override: k rule, e.g. n^0.75");
    auto* exp_out_o = exp->add_option("--out", exp_out, "override: output prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (est->parsed())
            return cmd_estimate(est_input, est_taus, est_ks,
                                *est_g ? std::optional<double>(est_gamma) : std::nullopt,
                                est_out);
        if (sim->parsed())
            return cmd_simulate_limit(*sim_tau_opt ? std::optional<double>(sim_tau)
                                                   : std::nullopt,
                                      sim_mixture, sim_b, sim_n,
                                      sim_seed_set ? sim_seed : default_seed(),
                                      sim_points, sim_out);
        if (zet->parsed()) return cmd_zeta(zeta_s, zeta_tol);
        if (chk->parsed())
            return cmd_check_conditions(chk_model, chk_gamma, chk_eta, chk_c4, chk_beta,
                                        chk_tau, chk_lambda, chk_schedule, chk_out);
        if (exp->parsed()) {
            if (*exp_model_o) exp_flags.model = exp_model;
            if (*exp_gamma_o) exp_flags.gamma = exp_gamma;
            if (*exp_eta_o) exp_flags.eta = exp_eta;
            if (*exp_c4_o) exp_flags.c4 = exp_c4;
            if (*exp_beta_o) exp_flags.beta = exp_beta;
            if (*exp_n_o) exp_flags.n = exp_n;
            if (*exp_reps_o) exp_flags.reps = exp_reps;
            if (*exp_seed_o) exp_flags.seed = exp_seed;
            if (*exp_krule_o) exp_flags.k_rule = exp_krule;
            if (*exp_out_o) exp_flags.out = exp_out;
            return cmd_experiment(exp_flags);
        }
    } catch (const CliParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tailest::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const tailest::range_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const tailest::construction_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const tailest::degenerate_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
