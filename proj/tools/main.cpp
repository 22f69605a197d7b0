// rvhedge: VIX option pricing, hedging backtests and forward variance tools.
//
// Exit codes: 0 success, 1 computation/data error (JSON diagnostic on
// stderr), 2 usage error.

#include "rvhedge/backtest.hpp"
#include "rvhedge/estimators.hpp"
#include "rvhedge/io.hpp"
#include "rvhedge/models.hpp"
#include "rvhedge/replication.hpp"
#include "rvhedge/simulator.hpp"
#include "rvhedge/stats.hpp"
#include "rvhedge/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace rvhedge;

namespace {

// Round to the 12-significant-digit grid before serialising so JSON output
// matches the CSV convention and replays byte for byte.
double jnum(double x) { return std::stod(format_double(x)); }

json stats_block(const StatsSummary& s) {
    return json{{"n", s.n}, {"mean", jnum(s.mean)}, {"std", jnum(s.std_dev)},
                {"rmse", jnum(s.rmse)}};
}

json suite_block(const SuiteResult& suite) {
    json j;
    j["n_episodes"] = suite.records.size();
    j["n_failures"] = suite.failures.size();
    j["hedged"] = stats_block(suite.hedged);
    j["unhedged"] = stats_block(suite.unhedged);
    j["reduction_factor"] = jnum(suite.reduction);
    return j;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

// Flags whose value is a file path; made absolute inside the manifest so a
// replay does not depend on the working directory.
const std::vector<std::string> kPathFlags = {"--vix", "--fvs", "--grid", "--payoff-file"};

json make_manifest(const std::string& command, const std::vector<std::string>& args,
                   const fs::path& out_dir) {
    std::vector<std::string> recorded = args;
    for (std::size_t i = 0; i + 1 < recorded.size(); ++i)
        for (const auto& flag : kPathFlags)
            if (recorded[i] == flag) recorded[i + 1] = fs::absolute(recorded[i + 1]).string();
    json j;
    j["tool"] = "rvhedge";
    j["version"] = kVersion;
    j["command"] = command;
    j["args"] = recorded;
    j["out_dir"] = fs::absolute(out_dir).string();
    return j;
}

struct SuiteInputs {
    DatedSeries vix;
    ForwardVarianceStore fvs;
    std::vector<Date> starts;
};

SuiteInputs load_suite_inputs(const std::string& vix_path, const std::string& fvs_path,
                              const std::string& from, const std::string& to,
                              const BacktestConfig& cfg) {
    SuiteInputs in;
    auto vix = ingest_vix_csv(vix_path);
    print_warnings(vix.warnings);
    in.vix = std::move(vix.series);
    auto fvs = ingest_fvs_csv(fvs_path);
    print_warnings(fvs.warnings);
    in.fvs = std::move(fvs.store);

    const std::size_t window = static_cast<std::size_t>(cfg.estimation_window);
    if (in.vix.size() <= window)
        throw std::runtime_error("vix series shorter than the estimation window");
    Date lo = from.empty() ? in.vix.date(window) : parse_date(from);
    Date hi = to.empty() ? in.vix.date(in.vix.size() - 1) : parse_date(to);
    for (std::size_t i = 0; i < in.vix.size(); ++i) {
        const Date d = in.vix.date(i);
        if (d >= lo && d <= hi) in.starts.push_back(d);
    }
    if (in.starts.empty()) throw std::runtime_error("no start dates in the requested range");
    return in;
}

void write_records_csv(const fs::path& path, const std::vector<const SuiteResult*>& suites) {
    std::string text = "start_date,model,pnl_hedged,pnl_unhedged\n";
    for (const auto* suite : suites)
        for (const auto& r : suite->records)
            text += format_date(r.start) + "," + to_string(r.model) + "," +
                    format_double(r.pnl_hedged) + "," + format_double(r.pnl_unhedged) + "\n";
    write_text(path, text);
}

int dispatch(const std::vector<std::string>& args);

// -------------------------------------------------------------------------
// Subcommand workers. Each returns the summary payload written to
// summary.json next to its CSV outputs.

json run_estimate_hurst(const std::string& vix_path, int lags_max, const fs::path& out_dir) {
    auto ingest = ingest_vix_csv(vix_path);
    print_warnings(ingest.warnings);
    const DatedSeries& series = ingest.series;

    std::vector<int> lags(lags_max);
    for (int i = 0; i < lags_max; ++i) lags[i] = i + 1;
    const HurstFit fit = estimate_hurst(series, lags);
    const double sigma = estimate_sigma_rfsv(series, fit.hurst, 1);

    std::string csv = "delta_days,m2,fit_m2\n";
    for (int lag : fit.lags_used) {
        const double m2 = m_q_delta(series, 2.0, lag);
        const double fitted = std::exp(fit.intercept + 2.0 * fit.hurst * std::log(double(lag)));
        csv += std::to_string(lag) + "," + format_double(m2) + "," + format_double(fitted) + "\n";
    }
    write_text(out_dir / "hurst_fit.csv", csv);

    json j;
    j["n_obs"] = series.size();
    j["hurst"] = jnum(fit.hurst);
    j["intercept"] = jnum(fit.intercept);
    j["r_squared"] = jnum(fit.r_squared);
    j["sigma"] = jnum(sigma);
    j["lags_used"] = fit.lags_used;
    // Same fit on each half of the sample, a stability diagnostic.
    const std::size_t half = series.size() / 2;
    for (const auto& [name, sub] :
         {std::pair<const char*, DatedSeries>{"first_half", series.slice(0, half)},
          {"second_half", series.slice(half, series.size())}}) {
        try {
            const HurstFit f = estimate_hurst(sub, lags);
            j[name] = json{{"hurst", jnum(f.hurst)}, {"r_squared", jnum(f.r_squared)}};
        } catch (const std::exception& e) {
            j[name] = json{{"error", e.what()}};
        }
    }
    return j;
}

json run_backtest_cmd(const SuiteInputs& in, const BacktestConfig& cfg, const fs::path& out_dir) {
    const SuiteResult suite = run_backtest_suite(in.vix, in.fvs, in.starts, cfg);
    write_records_csv(out_dir / "records.csv", {&suite});
    json j;
    j["model"] = to_string(cfg.model);
    j[to_string(cfg.model)] = suite_block(suite);
    return j;
}

json run_compare_cmd(const SuiteInputs& in, BacktestConfig cfg, const fs::path& out_dir) {
    std::vector<SuiteResult> suites;
    json j;
    for (ModelKind kind :
         {ModelKind::BlackScholes, ModelKind::Cir, ModelKind::Rfsv}) {
        cfg.model = kind;
        suites.push_back(run_backtest_suite(in.vix, in.fvs, in.starts, cfg));
        j[to_string(kind)] = suite_block(suites.back());
    }
    write_records_csv(out_dir / "records.csv",
                      {&suites[0], &suites[1], &suites[2]});
    return j;
}

json run_sweep_cmd(const SuiteInputs& in, const BacktestConfig& cfg, double h_from, double h_to,
                   double h_step, const fs::path& out_dir) {
    if (!(h_step > 0.0) || !(h_to >= h_from)) throw std::runtime_error("bad hurst grid");
    std::vector<double> hs;
    for (double h = h_from; h <= h_to + 1e-12; h += h_step) hs.push_back(h);
    const auto points = hurst_sweep(in.vix, in.fvs, in.starts, cfg, hs);

    std::string csv = "hurst,rmse_hedged\n";
    double best_h = points.front().first, best_rmse = points.front().second;
    for (const auto& [h, rmse] : points) {
        csv += format_double(h) + "," + format_double(rmse) + "\n";
        if (rmse < best_rmse) {
            best_rmse = rmse;
            best_h = h;
        }
    }
    write_text(out_dir / "hurst_rmse.csv", csv);

    json j;
    j["n_points"] = points.size();
    j["argmin_hurst"] = jnum(best_h);
    j["min_rmse"] = jnum(best_rmse);
    return j;
}

json run_synthesize_cmd(const FbmParams& params, double c_level, int days,
                        const BacktestConfig& cfg, std::uint64_t seed,
                        const std::string& first_date, const fs::path& out_dir) {
    const SyntheticDataset ds = generate_synthetic_dataset(
        params, c_level, days, cfg, seed,
        first_date.empty() ? parse_date("2012-01-10") : parse_date(first_date));
    write_vix_csv(out_dir / "vix.csv", ds.vix);
    write_fvs_csv(out_dir / "fvs.csv", ds.forward_variance);
    json j;
    j["n_days"] = ds.vix.size();
    j["n_forward_quotes"] = ds.forward_variance.size();
    j["first_date"] = format_date(ds.vix.date(0));
    j["last_date"] = format_date(ds.vix.date(ds.vix.size() - 1));
    return j;
}

json run_simulate_ueq(const KernelSpec& kernel, double v0, double maturity, double dt,
                      std::size_t steps, std::size_t paths, std::uint64_t seed) {
    UeqExperimentConfig cfg;
    cfg.kernel = kernel;
    cfg.initial_curve = ForwardVarianceCurve{{0.0, maturity}, {v0, v0}};
    cfg.maturity = maturity;
    cfg.dt = dt;
    cfg.n_steps = steps;
    cfg.n_paths = paths;
    cfg.seed = seed;
    const UeqRegressionResult res = ueq_regression_experiment(cfg);
    return json{{"slope", jnum(res.slope)},
                {"r_squared", jnum(res.r_squared)},
                {"n_obs", res.n_obs}};
}

json run_simulate_log_contract(const KernelSpec& kernel, double rho, double v0, double maturity,
                               std::size_t steps, std::size_t paths, std::uint64_t seed,
                               const fs::path& out_dir) {
    LogContractExperimentConfig cfg;
    cfg.kernel = kernel;
    cfg.rho = rho;
    cfg.initial_curve = ForwardVarianceCurve{{0.0, maturity}, {v0, v0}};
    cfg.maturity = maturity;
    cfg.n_steps = steps;
    cfg.n_paths = paths;
    cfg.seed = seed;
    const std::vector<double> errors = log_contract_replication_errors(cfg);

    std::string csv = "path,error\n";
    double sq = 0.0;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        csv += std::to_string(i) + "," + format_double(errors[i]) + "\n";
        sq += errors[i] * errors[i];
    }
    write_text(out_dir / "replication_errors.csv", csv);

    const StatsSummary s = summarize(errors);
    json j;
    j["n_paths"] = errors.size();
    j["l2_error"] = jnum(std::sqrt(sq / double(errors.size())));
    j["mean_error"] = jnum(s.mean);
    j["std_error"] = jnum(s.std_dev);
    return j;
}

json run_simulate_delta_hedge(const FbmParams& params, double c_level, double strike,
                              double maturity, std::size_t steps, std::size_t paths,
                              std::uint64_t seed) {
    DeltaHedgeExperimentConfig cfg;
    cfg.params = params;
    cfg.c_level = c_level;
    cfg.strike = strike > 0.0 ? strike : c_level; // default at the money
    cfg.maturity = maturity;
    cfg.n_steps = steps;
    cfg.n_paths = paths;
    cfg.seed = seed;
    const HedgeExperimentResult res = delta_hedge_experiment(cfg);
    const StatsSummary hedged = summarize(res.hedged);
    const StatsSummary unhedged = summarize(res.unhedged);
    json j;
    j["hedged"] = stats_block(hedged);
    j["unhedged"] = stats_block(unhedged);
    j["std_ratio"] = jnum(unhedged.std_dev > 0.0 ? hedged.std_dev / unhedged.std_dev : 0.0);
    j["reduction_factor"] = jnum(reduction_factor(unhedged, hedged));
    return j;
}

json run_replicate_cmd(const std::string& grid_path, const PayoffSpec& payoff,
                       const fs::path& out_dir) {
    const std::vector<OptionGrid> grids = ingest_options_csv(grid_path);

    std::string csv = "date,maturity_date,spot,value,tail_warning\n";
    // Group swap values per observation date to extract curves.
    std::map<Date, std::vector<std::pair<double, double>>> by_date; // (theta, U)
    for (const auto& g : grids) {
        const ReplicationResult r = static_replication_price(g, payoff);
        if (r.tail_warning)
            std::cerr << "warning: truncated strike grid at " << format_date(g.date) << " / "
                      << format_date(g.maturity) << "\n";
        csv += format_date(g.date) + "," + format_date(g.maturity) + "," +
               format_double(g.spot) + "," + format_double(r.value) + "," +
               (r.tail_warning ? "1" : "0") + "\n";
        const double theta = double((g.maturity - g.date).count()) / 365.25;
        by_date[g.date].emplace_back(theta, r.value);
    }
    write_text(out_dir / "replication.csv", csv);

    std::string curve_csv = "date,theta,forward_variance\n";
    std::size_t n_curves = 0;
    for (auto& [date, quotes] : by_date) {
        if (quotes.size() < 2) continue;
        std::sort(quotes.begin(), quotes.end());
        std::vector<double> thetas, values;
        for (const auto& [theta, u] : quotes) {
            thetas.push_back(theta);
            values.push_back(u);
        }
        const CurveExtraction ext = forward_variance_from_swaps(thetas, values);
        print_warnings(ext.warnings);
        for (std::size_t i = 0; i < ext.curve.thetas.size(); ++i)
            curve_csv += format_date(date) + "," + format_double(ext.curve.thetas[i]) + "," +
                         format_double(ext.curve.values[i]) + "\n";
        ++n_curves;
    }
    if (n_curves > 0) write_text(out_dir / "curves.csv", curve_csv);

    json j;
    j["n_grids"] = grids.size();
    j["n_curves"] = n_curves;
    return j;
}

// -------------------------------------------------------------------------

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"VIX option hedging toolkit"};
    app.require_subcommand(1);
    app.fallthrough(true);

    std::string out_dir = "out";
    app.add_option("--out", out_dir, "output directory")->capture_default_str();

    // Shared backtest knobs.
    BacktestConfig cfg;
    std::string vix_path, fvs_path, starts_from, starts_to;
    double hurst = 0.377, sigma_fixed = -1.0;
    bool estimate_hurst_flag = false;

    auto add_suite_options = [&](CLI::App* cmd, bool with_model) {
        cmd->add_option("--vix", vix_path, "VIX level CSV (date,close)")->required();
        cmd->add_option("--fvs", fvs_path,
                        "forward variance CSV (date,maturity_date,forward_variance)")
            ->required();
        cmd->add_option("--starts-from", starts_from, "first backtest start date");
        cmd->add_option("--starts-to", starts_to, "last backtest start date");
        cmd->add_option("--window", cfg.estimation_window, "estimation window, business days")
            ->capture_default_str();
        cmd->add_option("--hedge-days", cfg.hedge_horizon, "hedging horizon, business days")
            ->capture_default_str();
        cmd->add_option("--maturity-days", cfg.option_maturity,
                        "option maturity, business days from start")
            ->capture_default_str();
        cmd->add_option("--hurst", hurst, "fixed roughness input")->capture_default_str();
        cmd->add_flag("--estimate-hurst", estimate_hurst_flag,
                      "re-estimate the roughness on each window instead of --hurst");
        cmd->add_option("--sigma", sigma_fixed,
                        "fix the volatility scale instead of estimating it per window");
        if (with_model) {
            cmd->add_option("--model", cfg.model, "pricing model")
                ->transform(CLI::CheckedTransformer(
                    std::map<std::string, ModelKind>{{"bs", ModelKind::BlackScholes},
                                                     {"cir", ModelKind::Cir},
                                                     {"rfsv", ModelKind::Rfsv}}))
                ->required();
        }
    };
    auto finish_cfg = [&]() {
        cfg.fixed_hurst = estimate_hurst_flag ? std::nullopt : std::optional<double>(hurst);
        cfg.fixed_parameter =
            sigma_fixed >= 0.0 ? std::optional<double>(sigma_fixed) : std::nullopt;
    };

    // estimate-hurst
    auto* cmd_hurst = app.add_subcommand("estimate-hurst", "scaling-law roughness fit");
    std::string eh_vix;
    int lags_max = 30;
    cmd_hurst->add_option("--vix", eh_vix, "VIX level CSV")->required();
    cmd_hurst->add_option("--lags-max", lags_max, "largest increment lag in days")
        ->capture_default_str();

    // backtest / compare / sweep-h
    auto* cmd_backtest = app.add_subcommand("backtest", "hedging backtest for one model");
    add_suite_options(cmd_backtest, true);
    auto* cmd_compare = app.add_subcommand("compare", "hedging backtest across all models");
    add_suite_options(cmd_compare, false);
    auto* cmd_sweep = app.add_subcommand("sweep-h", "hedged rmse across roughness inputs");
    add_suite_options(cmd_sweep, false);
    double h_from = 0.2, h_to = 0.5, h_step = 0.01;
    cmd_sweep->add_option("--h-from", h_from, "")->capture_default_str();
    cmd_sweep->add_option("--h-to", h_to, "")->capture_default_str();
    cmd_sweep->add_option("--h-step", h_step, "")->capture_default_str();

    // synthesize
    auto* cmd_synth = app.add_subcommand("synthesize", "generate a synthetic market history");
    double sy_hurst = 0.377, sy_sigma = 0.5, sy_c = 0.2;
    int sy_days = 500;
    std::uint64_t seed = 1;
    std::string first_date;
    cmd_synth->add_option("--hurst", sy_hurst, "")->capture_default_str();
    cmd_synth->add_option("--sigma", sy_sigma, "")->capture_default_str();
    cmd_synth->add_option("--c-level", sy_c, "base VIX level")->capture_default_str();
    cmd_synth->add_option("--days", sy_days, "observation days")->capture_default_str();
    cmd_synth->add_option("--seed", seed, "")->capture_default_str();
    cmd_synth->add_option("--first-date", first_date, "first observation date (YYYY-MM-DD)");
    cmd_synth->add_option("--window", cfg.estimation_window, "")->capture_default_str();
    cmd_synth->add_option("--hedge-days", cfg.hedge_horizon, "")->capture_default_str();
    cmd_synth->add_option("--maturity-days", cfg.option_maturity, "")->capture_default_str();

    // simulate
    auto* cmd_sim = app.add_subcommand("simulate", "forward variance curve experiments");
    std::string experiment;
    cmd_sim->add_option("--experiment", experiment, "ueq | log-contract | delta-hedge")
        ->required()
        ->check(CLI::IsMember({"ueq", "log-contract", "delta-hedge"}));
    double eta = 1.0, kernel_hurst = 0.1, lambda = -1.0, rho = 0.0, v0 = 0.04;
    double maturity = 0.1, dt = 1.0 / 2520.0, strike = -1.0, c_level = 0.2;
    std::size_t steps = 126, paths = 500;
    cmd_sim->add_option("--eta", eta, "")->capture_default_str();
    cmd_sim->add_option("--kernel-hurst", kernel_hurst, "")->capture_default_str();
    cmd_sim->add_option("--lambda", lambda, "mean reversion (switches kernels when set)");
    cmd_sim->add_option("--rho", rho, "")->capture_default_str();
    cmd_sim->add_option("--v0", v0, "flat initial curve level")->capture_default_str();
    cmd_sim->add_option("--maturity", maturity, "years")->capture_default_str();
    cmd_sim->add_option("--dt", dt, "")->capture_default_str();
    cmd_sim->add_option("--steps", steps, "")->capture_default_str();
    cmd_sim->add_option("--paths", paths, "")->capture_default_str();
    cmd_sim->add_option("--seed", seed, "")->capture_default_str();
    cmd_sim->add_option("--hurst", sy_hurst, "driver roughness (delta-hedge)")
        ->capture_default_str();
    cmd_sim->add_option("--sigma", sy_sigma, "driver scale (delta-hedge)")->capture_default_str();
    cmd_sim->add_option("--c-level", c_level, "")->capture_default_str();
    cmd_sim->add_option("--strike", strike, "defaults to at the money");

    // replicate
    auto* cmd_rep = app.add_subcommand("replicate", "static replication of variance payoffs");
    std::string grid_path, payoff_file;
    cmd_rep->add_option("--grid", grid_path, "options CSV")->required();
    cmd_rep->add_option("--payoff-file", payoff_file,
                        "tabulated gains function CSV (x,f); linear when absent");

    // replay
    auto* cmd_replay = app.add_subcommand("replay", "re-run a recorded manifest");
    std::string manifest_path;
    cmd_replay->add_option("manifest", manifest_path, "path to manifest.json")->required();

    // seeds for suite commands too
    for (auto* c : {cmd_backtest, cmd_compare, cmd_sweep})
        c->add_option("--seed", seed, "")->capture_default_str();

    std::vector<std::string> cli_args = args;
    std::reverse(cli_args.begin(), cli_args.end());
    try {
        app.parse(cli_args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints help or the parse diagnostic
        return code == 0 ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();

    if (command == "replay") {
        std::ifstream in(manifest_path);
        if (!in) throw std::runtime_error("cannot open " + manifest_path);
        json manifest = json::parse(in);
        std::vector<std::string> replay_args =
            manifest.at("args").get<std::vector<std::string>>();
        // Redirect --out when given, otherwise reuse the recorded directory.
        std::vector<std::string> cleaned;
        for (std::size_t i = 0; i < replay_args.size(); ++i) {
            if (replay_args[i] == "--out") {
                ++i;
                continue;
            }
            cleaned.push_back(replay_args[i]);
        }
        cleaned.push_back("--out");
        cleaned.push_back(out_dir == "out" ? manifest.at("out_dir").get<std::string>()
                                           : out_dir);
        return dispatch(cleaned);
    }

    fs::create_directories(out_dir);
    finish_cfg();

    json summary;
    if (command == "estimate-hurst") {
        summary = run_estimate_hurst(eh_vix, lags_max, out_dir);
    } else if (command == "backtest") {
        const SuiteInputs in = load_suite_inputs(vix_path, fvs_path, starts_from, starts_to, cfg);
        summary = run_backtest_cmd(in, cfg, out_dir);
    } else if (command == "compare") {
        const SuiteInputs in = load_suite_inputs(vix_path, fvs_path, starts_from, starts_to, cfg);
        summary = run_compare_cmd(in, cfg, out_dir);
    } else if (command == "sweep-h") {
        const SuiteInputs in = load_suite_inputs(vix_path, fvs_path, starts_from, starts_to, cfg);
        summary = run_sweep_cmd(in, cfg, h_from, h_to, h_step, out_dir);
    } else if (command == "synthesize") {
        summary = run_synthesize_cmd(FbmParams{sy_hurst, sy_sigma}, sy_c, sy_days, cfg, seed,
                                     first_date, out_dir);
    } else if (command == "simulate") {
        KernelSpec kernel = lambda >= 0.0
                                ? KernelSpec(FouKernel{eta, lambda, kernel_hurst})
                                : KernelSpec(RoughBergomiKernel{eta, kernel_hurst});
        if (experiment == "ueq")
            summary = run_simulate_ueq(kernel, v0, maturity, dt, steps, paths, seed);
        else if (experiment == "log-contract")
            summary = run_simulate_log_contract(kernel, rho, v0, maturity, steps, paths, seed,
                                                out_dir);
        else
            summary = run_simulate_delta_hedge(FbmParams{sy_hurst, sy_sigma}, c_level, strike,
                                               maturity, steps, paths, seed);
    } else if (command == "replicate") {
        PayoffSpec payoff = PayoffSpec::linear();
        if (!payoff_file.empty()) {
            std::ifstream in(payoff_file);
            if (!in) throw std::runtime_error("cannot open " + payoff_file);
            std::string line;
            std::getline(in, line);
            if (line != "x,f" && line != "x,f\r")
                throw std::runtime_error(payoff_file + ": expected header 'x,f'");
            std::vector<double> xs, fsv;
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                const auto comma = line.find(',');
                if (comma == std::string::npos)
                    throw std::runtime_error(payoff_file + ": bad row '" + line + "'");
                xs.push_back(std::stod(line.substr(0, comma)));
                fsv.push_back(std::stod(line.substr(comma + 1)));
            }
            payoff = PayoffSpec::tabulated(std::move(xs), std::move(fsv));
        }
        summary = run_replicate_cmd(grid_path, payoff, out_dir);
    }

    summary["seed"] = seed;
    write_json(fs::path(out_dir) / "summary.json", summary);
    write_json(fs::path(out_dir) / "manifest.json", make_manifest(command, args, out_dir));
    std::cout << summary.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return dispatch(args);
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
}
