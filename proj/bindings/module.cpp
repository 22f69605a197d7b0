// Python bindings. Dates cross the boundary as ISO "YYYY-MM-DD" strings;
// everything else maps onto the C++ structs directly.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rvhedge/backtest.hpp"
#include "rvhedge/estimators.hpp"
#include "rvhedge/fbm.hpp"
#include "rvhedge/models.hpp"
#include "rvhedge/replication.hpp"
#include "rvhedge/simulator.hpp"
#include "rvhedge/stats.hpp"
#include "rvhedge/version.hpp"

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace rvhedge;

namespace {

std::vector<Date> parse_dates(const std::vector<std::string>& dates) {
    std::vector<Date> out;
    out.reserve(dates.size());
    for (const auto& d : dates) out.push_back(parse_date(d));
    return out;
}

std::vector<std::string> format_dates(const std::vector<Date>& dates) {
    std::vector<std::string> out;
    out.reserve(dates.size());
    for (const Date d : dates) out.push_back(format_date(d));
    return out;
}

SeriesKind kind_from_string(const std::string& kind) {
    if (kind == "vix") return SeriesKind::VixLevel;
    if (kind == "forward_variance") return SeriesKind::ForwardVariance;
    if (kind == "price") return SeriesKind::Price;
    throw std::invalid_argument("unknown series kind '" + kind + "'");
}

GammaMode gamma_mode_from_string(const std::string& mode) {
    if (mode == "log") return GammaMode::LogIncrements;
    if (mode == "level") return GammaMode::LevelIncrements;
    throw std::invalid_argument("unknown gamma mode '" + mode + "'");
}

py::dict params_to_dict(const ModelParams& params) {
    py::dict d;
    if (const auto* bs = std::get_if<BlackScholesParams>(&params)) {
        d["model"] = "bs";
        d["gamma"] = bs->gamma;
    } else if (const auto* cir = std::get_if<CirParams>(&params)) {
        d["model"] = "cir";
        d["gamma"] = cir->gamma;
    } else {
        const auto& rfsv = std::get<RfsvParams>(params);
        d["model"] = "rfsv";
        d["hurst"] = rfsv.fbm.hurst;
        d["sigma"] = rfsv.fbm.sigma;
    }
    return d;
}

ForwardVarianceCurve flat_curve(double level, double horizon) {
    return ForwardVarianceCurve{{0.0, horizon}, {level, level}};
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "VIX option pricing, roughness estimation and hedging backtests";
    m.attr("__version__") = kVersion;

    // ---- calendar -----------------------------------------------------
    m.def(
        "business_day_offset",
        [](const std::string& date, int days) {
            BusinessCalendar cal;
            return format_date(cal.offset(parse_date(date), days));
        },
        py::arg("date"), py::arg("days"),
        "Shift a date by signed business days (weekends skipped).");
    m.def(
        "is_business_day",
        [](const std::string& date) { return BusinessCalendar{}.is_business_day(parse_date(date)); },
        py::arg("date"));

    // ---- series and stats ----------------------------------------------
    py::class_<StatsSummary>(m, "StatsSummary")
        .def_readonly("n", &StatsSummary::n)
        .def_readonly("mean", &StatsSummary::mean)
        .def_readonly("std_dev", &StatsSummary::std_dev)
        .def_readonly("rmse", &StatsSummary::rmse)
        .def("__repr__", [](const StatsSummary& s) {
            return "StatsSummary(n=" + std::to_string(s.n) + ", mean=" + std::to_string(s.mean) +
                   ", std_dev=" + std::to_string(s.std_dev) + ", rmse=" + std::to_string(s.rmse) +
                   ")";
        });
    m.def(
        "summarize", [](const std::vector<double>& xs) { return summarize(xs); },
        py::arg("samples"), "Sample count, mean, population std and rmse.");
    m.def("reduction_factor", &reduction_factor, py::arg("raw"), py::arg("hedged"),
          "rmse(raw) / rmse(hedged)");

    py::class_<DatedSeries>(m, "DatedSeries")
        .def(py::init([](const std::vector<std::string>& dates, const std::vector<double>& values,
                         const std::string& kind) {
                 return DatedSeries(kind_from_string(kind), parse_dates(dates), values);
             }),
             py::arg("dates"), py::arg("values"), py::arg("kind") = "vix")
        .def("__len__", &DatedSeries::size)
        .def("dates", [](const DatedSeries& s) { return format_dates(s.dates()); })
        .def("values", [](const DatedSeries& s) { return s.values(); })
        .def(
            "slice", [](const DatedSeries& s, std::size_t a, std::size_t b) { return s.slice(a, b); },
            py::arg("first"), py::arg("last"));

    py::class_<ForwardVarianceStore>(m, "ForwardVarianceStore")
        .def(py::init<>())
        .def(
            "insert",
            [](ForwardVarianceStore& s, const std::string& date, const std::string& maturity,
               double value) { s.insert(parse_date(date), parse_date(maturity), value); },
            py::arg("date"), py::arg("maturity"), py::arg("value"))
        .def(
            "lookup",
            [](const ForwardVarianceStore& s, const std::string& date, const std::string& maturity) {
                return s.lookup(parse_date(date), parse_date(maturity));
            },
            py::arg("date"), py::arg("maturity"))
        .def("__len__", &ForwardVarianceStore::size)
        .def(
            "series_for_maturity",
            [](const ForwardVarianceStore& s, const std::string& maturity) {
                return s.series_for_maturity(parse_date(maturity));
            },
            py::arg("maturity"));

    // ---- estimators ------------------------------------------------------
    py::class_<HurstFit>(m, "HurstFit")
        .def_readonly("hurst", &HurstFit::hurst)
        .def_readonly("intercept", &HurstFit::intercept)
        .def_readonly("r_squared", &HurstFit::r_squared)
        .def_readonly("lags_used", &HurstFit::lags_used);
    m.def(
        "estimate_hurst",
        [](const DatedSeries& vix, std::optional<std::vector<int>> lags) {
            return lags ? estimate_hurst(vix, *lags) : estimate_hurst(vix);
        },
        py::arg("vix"), py::arg("lags") = std::nullopt,
        "Scaling-law roughness fit of log m(2, delta) on log delta.");
    m.def("m_q_delta", &m_q_delta, py::arg("vix"), py::arg("q"), py::arg("delta_days"),
          "Empirical q-th absolute moment of log-VIX increments at the lag.");
    m.def("estimate_sigma_rfsv", &estimate_sigma_rfsv, py::arg("vix"), py::arg("hurst"),
          py::arg("delta_days") = 1);
    m.def(
        "estimate_gamma",
        [](const DatedSeries& vix, const std::string& mode) {
            return estimate_gamma_quadratic_variation(vix, gamma_mode_from_string(mode));
        },
        py::arg("vix"), py::arg("mode") = "log",
        "Quadratic-variation volatility scale; mode 'log' or 'level'.");

    // ---- rough driver ----------------------------------------------------
    m.def(
        "variance_increment",
        [](double hurst, double sigma, double tau) {
            return variance_increment(FbmParams{hurst, sigma}, tau);
        },
        py::arg("hurst"), py::arg("sigma"), py::arg("tau"),
        "Conditional variance of the rough log-VIX increment over tau years.");
    m.def("fbm_covariance", &fbm_covariance, py::arg("hurst"), py::arg("s"), py::arg("t"));

    // ---- pricing -----------------------------------------------------
    py::class_<ModelQuote>(m, "ModelQuote")
        .def_readonly("price", &ModelQuote::price)
        .def_readonly("hedge_ratio", &ModelQuote::hedge_ratio)
        .def("__repr__", [](const ModelQuote& q) {
            return "ModelQuote(price=" + std::to_string(q.price) +
                   ", hedge_ratio=" + std::to_string(q.hedge_ratio) + ")";
        });
    m.def("bs_quote", &bs_quote, py::arg("fwd_var"), py::arg("strike"), py::arg("gamma"),
          py::arg("tau"), "Lognormal VIX call on the forward variance.");
    m.def(
        "rfsv_quote",
        [](double fwd_var, double strike, double hurst, double sigma, double tau) {
            return rfsv_quote(fwd_var, strike, FbmParams{hurst, sigma}, tau);
        },
        py::arg("fwd_var"), py::arg("strike"), py::arg("hurst"), py::arg("sigma"), py::arg("tau"),
        "Rough-driver VIX call; equals bs_quote at hurst = 0.5, sigma = gamma.");
    m.def("cir_quote", &cir_quote, py::arg("fwd_var"), py::arg("strike"), py::arg("gamma"),
          py::arg("tau"), "Square-root-diffusion VIX call.");

    py::class_<CirDensity>(m, "CirDensity")
        .def_readonly("density", &CirDensity::density)
        .def_readonly("atom_at_zero", &CirDensity::atom_at_zero);
    m.def("cir_transition_density", &cir_transition_density, py::arg("v0"), py::arg("x"),
          py::arg("gamma"), py::arg("horizon"));

    py::class_<McPrice>(m, "McPrice")
        .def_readonly("price", &McPrice::price)
        .def_readonly("std_error", &McPrice::std_error);
    m.def(
        "mc_price_lognormal",
        [](double fwd_var, double log_variance, double strike, std::size_t n_draws,
           std::uint64_t seed) {
            return mc_price_oracle(LognormalLaw{fwd_var, log_variance}, strike, n_draws, seed);
        },
        py::arg("fwd_var"), py::arg("log_variance"), py::arg("strike"), py::arg("n_draws"),
        py::arg("seed"), "Monte Carlo call price under the lognormal terminal law.");
    m.def(
        "mc_price_cir",
        [](double v0, double gamma, double horizon, int n_substeps, double strike,
           std::size_t n_draws, std::uint64_t seed) {
            return mc_price_oracle(CirEulerLaw{v0, gamma, horizon, n_substeps}, strike, n_draws,
                                   seed);
        },
        py::arg("v0"), py::arg("gamma"), py::arg("horizon"), py::arg("n_substeps"),
        py::arg("strike"), py::arg("n_draws"), py::arg("seed"),
        "Monte Carlo call price under the full-truncation Euler square-root law.");

    // ---- static replication ---------------------------------------------
    py::class_<PayoffSpec>(m, "PayoffSpec")
        .def_static("linear", &PayoffSpec::linear)
        .def_static(
            "tabulated",
            [](std::vector<double> xs, std::vector<double> fs) {
                return PayoffSpec::tabulated(std::move(xs), std::move(fs));
            },
            py::arg("x"), py::arg("f"));
    m.def("h_function", &h_function, py::arg("payoff"), py::arg("x"),
          "Hedging function h with h(1) = 0 built from the payoff weight.");

    py::class_<OptionGrid>(m, "OptionGrid")
        .def(py::init([](const std::string& date, const std::string& maturity, double spot,
                         std::vector<double> strikes, std::vector<double> calls,
                         std::vector<double> puts) {
                 OptionGrid g;
                 g.date = parse_date(date);
                 g.maturity = parse_date(maturity);
                 g.spot = spot;
                 g.strikes = std::move(strikes);
                 g.call_prices = std::move(calls);
                 g.put_prices = std::move(puts);
                 return g;
             }),
             py::arg("date"), py::arg("maturity"), py::arg("spot"), py::arg("strikes"),
             py::arg("call_prices"), py::arg("put_prices"));
    py::class_<ReplicationResult>(m, "ReplicationResult")
        .def_readonly("value", &ReplicationResult::value)
        .def_readonly("tail_warning", &ReplicationResult::tail_warning);
    m.def("static_replication_price", &static_replication_price, py::arg("grid"),
          py::arg("payoff"), "OTM strip value of the payoff-weighted option portfolio.");

    py::class_<ForwardVarianceCurve>(m, "ForwardVarianceCurve")
        .def_readonly("thetas", &ForwardVarianceCurve::thetas)
        .def_readonly("values", &ForwardVarianceCurve::values)
        .def("value_at", &ForwardVarianceCurve::value_at, py::arg("theta"));
    m.def(
        "forward_variance_from_swaps",
        [](const std::vector<double>& thetas, const std::vector<double>& swap_values) {
            const CurveExtraction ext = forward_variance_from_swaps(thetas, swap_values);
            return py::make_tuple(ext.curve, ext.warnings);
        },
        py::arg("thetas"), py::arg("swap_values"),
        "Finite-difference forward variance curve from varswap quotes; returns "
        "(curve, warnings).");

    // ---- simulation experiments -------------------------------------------
    py::class_<UeqRegressionResult>(m, "UeqRegressionResult")
        .def_readonly("slope", &UeqRegressionResult::slope)
        .def_readonly("r_squared", &UeqRegressionResult::r_squared)
        .def_readonly("n_obs", &UeqRegressionResult::n_obs);
    m.def(
        "ueq_regression",
        [](double eta, double kernel_hurst, double v0, double maturity, double dt,
           std::size_t n_steps, std::size_t n_paths, std::uint64_t seed) {
            UeqExperimentConfig cfg;
            cfg.kernel = RoughBergomiKernel{eta, kernel_hurst};
            cfg.initial_curve = flat_curve(v0, maturity);
            cfg.maturity = maturity;
            cfg.dt = dt;
            cfg.n_steps = n_steps;
            cfg.n_paths = n_paths;
            cfg.seed = seed;
            return ueq_regression_experiment(cfg);
        },
        py::arg("eta"), py::arg("kernel_hurst"), py::arg("v0"), py::arg("maturity"),
        py::arg("dt"), py::arg("n_steps"), py::arg("n_paths"), py::arg("seed"),
        "Pooled regression of varswap increments on their driver term; slope "
        "near 1 validates the drift restriction.");
    m.def(
        "log_contract_errors",
        [](double eta, double kernel_hurst, double rho, double v0, double maturity,
           std::size_t n_steps, std::size_t n_paths, std::uint64_t seed) {
            LogContractExperimentConfig cfg;
            cfg.kernel = RoughBergomiKernel{eta, kernel_hurst};
            cfg.rho = rho;
            cfg.initial_curve = flat_curve(v0, maturity);
            cfg.maturity = maturity;
            cfg.n_steps = n_steps;
            cfg.n_paths = n_paths;
            cfg.seed = seed;
            return log_contract_replication_errors(cfg);
        },
        py::arg("eta"), py::arg("kernel_hurst"), py::arg("rho"), py::arg("v0"),
        py::arg("maturity"), py::arg("n_steps"), py::arg("n_paths"), py::arg("seed"),
        "Per-path discrete replication error of the realised variance payoff.");

    py::class_<HedgeExperimentResult>(m, "HedgeExperimentResult")
        .def_readonly("hedged", &HedgeExperimentResult::hedged)
        .def_readonly("unhedged", &HedgeExperimentResult::unhedged);
    m.def(
        "delta_hedge_experiment",
        [](double hurst, double sigma, double c_level, double strike, double maturity,
           std::size_t n_steps, std::size_t n_paths, std::uint64_t seed) {
            DeltaHedgeExperimentConfig cfg;
            cfg.params = FbmParams{hurst, sigma};
            cfg.c_level = c_level;
            cfg.strike = strike;
            cfg.maturity = maturity;
            cfg.n_steps = n_steps;
            cfg.n_paths = n_paths;
            cfg.seed = seed;
            return delta_hedge_experiment(cfg);
        },
        py::arg("hurst"), py::arg("sigma"), py::arg("c_level"), py::arg("strike"),
        py::arg("maturity"), py::arg("n_steps"), py::arg("n_paths"), py::arg("seed"),
        "Daily delta hedging of a VIX call on synthetic rough paths.");

    // ---- backtests ------------------------------------------------------
    py::enum_<ModelKind>(m, "ModelKind")
        .value("BlackScholes", ModelKind::BlackScholes)
        .value("Cir", ModelKind::Cir)
        .value("Rfsv", ModelKind::Rfsv);

    py::class_<BacktestConfig>(m, "BacktestConfig")
        .def(py::init<>())
        .def_readwrite("model", &BacktestConfig::model)
        .def_readwrite("estimation_window", &BacktestConfig::estimation_window)
        .def_readwrite("hedge_horizon", &BacktestConfig::hedge_horizon)
        .def_readwrite("option_maturity", &BacktestConfig::option_maturity)
        .def_readwrite("fixed_hurst", &BacktestConfig::fixed_hurst)
        .def_readwrite("fixed_parameter", &BacktestConfig::fixed_parameter)
        .def_readwrite("sigma_delta_days", &BacktestConfig::sigma_delta_days);

    py::class_<BacktestRecord>(m, "BacktestRecord")
        .def_property_readonly("start",
                               [](const BacktestRecord& r) { return format_date(r.start); })
        .def_property_readonly("model",
                               [](const BacktestRecord& r) { return to_string(r.model); })
        .def_readonly("pnl_hedged", &BacktestRecord::pnl_hedged)
        .def_readonly("pnl_unhedged", &BacktestRecord::pnl_unhedged)
        .def_readonly("hedge_ratios", &BacktestRecord::hedge_ratios)
        .def_property_readonly(
            "params_used", [](const BacktestRecord& r) { return params_to_dict(r.params_used); });

    py::class_<SuiteResult>(m, "SuiteResult")
        .def_readonly("records", &SuiteResult::records)
        .def_readonly("hedged", &SuiteResult::hedged)
        .def_readonly("unhedged", &SuiteResult::unhedged)
        .def_readonly("reduction", &SuiteResult::reduction)
        .def_property_readonly("failures", [](const SuiteResult& s) {
            std::vector<std::pair<std::string, std::string>> out;
            out.reserve(s.failures.size());
            for (const auto& [date, why] : s.failures) out.emplace_back(format_date(date), why);
            return out;
        });

    m.def(
        "run_single_backtest",
        [](const DatedSeries& vix, const ForwardVarianceStore& fvs, const std::string& start,
           const BacktestConfig& cfg) {
            return run_single_backtest(vix, fvs, parse_date(start), cfg);
        },
        py::arg("vix"), py::arg("forward_variance"), py::arg("start"), py::arg("config"));
    m.def(
        "run_backtest_suite",
        [](const DatedSeries& vix, const ForwardVarianceStore& fvs,
           const std::vector<std::string>& starts, const BacktestConfig& cfg) {
            return run_backtest_suite(vix, fvs, parse_dates(starts), cfg);
        },
        py::arg("vix"), py::arg("forward_variance"), py::arg("starts"), py::arg("config"));
    m.def(
        "hurst_sweep",
        [](const DatedSeries& vix, const ForwardVarianceStore& fvs,
           const std::vector<std::string>& starts, const BacktestConfig& cfg,
           const std::vector<double>& hurst_values) {
            return hurst_sweep(vix, fvs, parse_dates(starts), cfg, hurst_values);
        },
        py::arg("vix"), py::arg("forward_variance"), py::arg("starts"), py::arg("config"),
        py::arg("hurst_values"), "Hedged rmse per fixed roughness input, (h, rmse) pairs.");

    py::class_<SyntheticDataset>(m, "SyntheticDataset")
        .def_readonly("vix", &SyntheticDataset::vix)
        .def_readonly("forward_variance", &SyntheticDataset::forward_variance);
    m.def(
        "generate_synthetic_dataset",
        [](double hurst, double sigma, double c_level, int n_days, const BacktestConfig& cfg,
           std::uint64_t seed, const std::string& first_date) {
            return generate_synthetic_dataset(FbmParams{hurst, sigma}, c_level, n_days, cfg,
                                              seed, parse_date(first_date));
        },
        py::arg("hurst"), py::arg("sigma"), py::arg("c_level"), py::arg("n_days"),
        py::arg("config"), py::arg("seed"), py::arg("first_date") = "2012-01-10",
        "Synthetic VIX history plus the forward variance quotes backtests need.");
}
