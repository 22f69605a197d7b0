#include "rvhedge/backtest.hpp"

#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rvhedge {

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::BlackScholes: return "bs";
        case ModelKind::Cir: return "cir";
        case ModelKind::Rfsv: return "rfsv";
    }
    throw std::logic_error("unreachable model kind");
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "bs") return ModelKind::BlackScholes;
    if (name == "cir") return ModelKind::Cir;
    if (name == "rfsv") return ModelKind::Rfsv;
    throw std::invalid_argument("unknown model '" + name + "' (expected bs, cir or rfsv)");
}

namespace {

void check_config(const BacktestConfig& cfg) {
    if (cfg.estimation_window < 2)
        throw std::invalid_argument("estimation window must span at least two days");
    if (cfg.hedge_horizon < 1) throw std::invalid_argument("hedge horizon must be >= 1 day");
    if (cfg.option_maturity <= cfg.hedge_horizon)
        throw std::invalid_argument("option maturity must exceed the hedge horizon");
    if (cfg.fixed_hurst && !(*cfg.fixed_hurst > 0.0 && *cfg.fixed_hurst < 1.0))
        throw std::invalid_argument("fixed hurst must lie in (0, 1)");
    if (cfg.fixed_parameter && !(*cfg.fixed_parameter >= 0.0))
        throw std::invalid_argument("fixed scale parameter must be non-negative");
    if (cfg.sigma_delta_days < 1)
        throw std::invalid_argument("scale estimator lag must be >= 1 day");
}

ModelParams resolve_params(const DatedSeries& window, const BacktestConfig& cfg) {
    switch (cfg.model) {
        case ModelKind::BlackScholes: {
            const double gamma =
                cfg.fixed_parameter
                    ? *cfg.fixed_parameter
                    : estimate_gamma_quadratic_variation(window, GammaMode::LogIncrements);
            return BlackScholesParams{gamma};
        }
        case ModelKind::Cir: {
            const double gamma =
                cfg.fixed_parameter
                    ? *cfg.fixed_parameter
                    : estimate_gamma_quadratic_variation(window, GammaMode::LevelIncrements);
            return CirParams{gamma};
        }
        case ModelKind::Rfsv: {
            const double h = cfg.fixed_hurst ? *cfg.fixed_hurst : estimate_hurst(window).hurst;
            const double sigma = cfg.fixed_parameter
                                     ? *cfg.fixed_parameter
                                     : estimate_sigma_rfsv(window, h, cfg.sigma_delta_days);
            return RfsvParams{FbmParams{h, sigma}};
        }
    }
    throw std::logic_error("unreachable model kind");
}

} // namespace

BacktestRecord run_single_backtest(const DatedSeries& vix,
                                   const ForwardVarianceStore& forward_variance, Date start,
                                   const BacktestConfig& cfg) {
    check_config(cfg);
    const auto idx_opt = vix.index_of(start);
    if (!idx_opt)
        throw std::invalid_argument("start " + format_date(start) + " not in the vix series");
    const std::size_t idx = *idx_opt;
    if (idx < static_cast<std::size_t>(cfg.estimation_window))
        throw std::invalid_argument("only " + std::to_string(idx) + " days of history before " +
                                    format_date(start) + ", need " +
                                    std::to_string(cfg.estimation_window));

    const DatedSeries window = vix.slice(idx - cfg.estimation_window, idx);
    const double strike = vix.value(idx); // at the money at inception
    const Date maturity = cfg.calendar.offset(start, cfg.option_maturity);

    std::vector<double> forwards(cfg.hedge_horizon + 1);
    std::string missing;
    Date day = start;
    for (int k = 0; k <= cfg.hedge_horizon; ++k) {
        if (k > 0) day = cfg.calendar.offset(day, 1);
        const auto f = forward_variance.lookup(day, maturity);
        if (!f) {
            missing += missing.empty() ? "" : ", ";
            missing += format_date(day);
        } else {
            forwards[k] = *f;
        }
    }
    if (!missing.empty())
        throw std::invalid_argument("missing forward variance quotes for maturity " +
                                    format_date(maturity) + " at " + missing);

    const ModelParams params = resolve_params(window, cfg);

    BacktestRecord rec;
    rec.start = start;
    rec.model = cfg.model;
    rec.params_used = params;
    rec.hedge_ratios.reserve(cfg.hedge_horizon);

    double price_start = 0.0, price_end = 0.0, gains = 0.0, ratio = 0.0;
    for (int k = 0; k <= cfg.hedge_horizon; ++k) {
        const double tau = double(cfg.option_maturity - k) / kBusinessDaysPerYear;
        const ModelQuote q = quote(params, forwards[k], strike, tau);
        if (k == 0) price_start = q.price;
        if (k == cfg.hedge_horizon) price_end = q.price;
        if (k > 0) gains += ratio * (forwards[k] - forwards[k - 1]);
        if (k < cfg.hedge_horizon) {
            ratio = q.hedge_ratio;
            rec.hedge_ratios.push_back(ratio);
        }
    }
    rec.pnl_unhedged = price_end - price_start;
    rec.pnl_hedged = rec.pnl_unhedged - gains;
    return rec;
}

SuiteResult run_backtest_suite(const DatedSeries& vix,
                               const ForwardVarianceStore& forward_variance,
                               std::span<const Date> starts, const BacktestConfig& cfg) {
    if (starts.empty()) throw std::invalid_argument("no start dates");
    SuiteResult out;
    out.records.reserve(starts.size());
    for (Date start : starts) {
        try {
            out.records.push_back(run_single_backtest(vix, forward_variance, start, cfg));
        } catch (const std::exception& e) {
            out.failures.emplace_back(start, e.what());
        }
    }
    if (out.records.empty())
        throw std::runtime_error("all backtest episodes failed; first: " +
                                 out.failures.front().second);
    std::sort(out.records.begin(), out.records.end(),
              [](const BacktestRecord& a, const BacktestRecord& b) { return a.start < b.start; });

    std::vector<double> hedged, unhedged;
    hedged.reserve(out.records.size());
    unhedged.reserve(out.records.size());
    for (const auto& r : out.records) {
        hedged.push_back(r.pnl_hedged);
        unhedged.push_back(r.pnl_unhedged);
    }
    out.hedged = summarize(hedged);
    out.unhedged = summarize(unhedged);
    out.reduction = reduction_factor(out.unhedged, out.hedged);
    return out;
}

std::vector<std::pair<double, double>> hurst_sweep(
    const DatedSeries& vix, const ForwardVarianceStore& forward_variance,
    std::span<const Date> starts, const BacktestConfig& cfg,
    std::span<const double> hurst_values) {
    if (hurst_values.empty()) throw std::invalid_argument("no hurst values to sweep");
    std::vector<std::pair<double, double>> out;
    out.reserve(hurst_values.size());
    BacktestConfig point = cfg;
    point.model = ModelKind::Rfsv;
    for (double h : hurst_values) {
        point.fixed_hurst = h;
        const SuiteResult suite = run_backtest_suite(vix, forward_variance, starts, point);
        out.emplace_back(h, suite.hedged.rmse);
    }
    return out;
}

SyntheticDataset generate_synthetic_dataset(const FbmParams& params, double c_level,
                                            int n_days, const BacktestConfig& cfg,
                                            std::uint64_t seed, Date first_date) {
    validate(params);
    check_config(cfg);
    if (!(c_level > 0.0)) throw std::invalid_argument("c_level must be positive");
    if (n_days < 1) throw std::invalid_argument("need at least one observation day");

    constexpr int kBurnInDays = 504; // two years of history for the rough driver
    const std::size_t burn = kBurnInDays;
    const std::size_t n_total = burn + std::size_t(n_days) + std::size_t(cfg.option_maturity) + 1;

    std::vector<Date> dates(n_total);
    dates[0] = cfg.calendar.offset(cfg.calendar.roll_forward(first_date), -int(burn));
    for (std::size_t i = 1; i < n_total; ++i) dates[i] = cfg.calendar.offset(dates[i - 1], 1);

    const double dt = 1.0 / kBusinessDaysPerYear;
    const double sqrt_dt = std::sqrt(dt);
    const double a = params.hurst - 0.5;
    const double scale = params.sigma / std::tgamma(params.hurst + 0.5);

    auto rng = detail::substream(seed, 0);
    std::normal_distribution<double> normal;
    std::vector<double> dw(n_total - 1);
    for (auto& z : dw) z = normal(rng) * sqrt_dt;

    std::vector<double> w(n_total, 0.0);
    for (std::size_t d = 1; d < n_total; ++d) w[d] = scale * std::pow(double(d) * dt, a);

    std::vector<double> x(n_total, 0.0);
    for (std::size_t i = 1; i < n_total; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < i; ++j) acc += w[i - j] * dw[j];
        x[i] = acc;
    }

    std::vector<Date> vix_dates(dates.begin() + burn, dates.begin() + burn + n_days);
    std::vector<double> vix_values(n_days);
    for (int i = 0; i < n_days; ++i) vix_values[i] = c_level * std::exp(x[burn + i]);

    // 2 * variance_increment over d remaining days, d = 0..option_maturity.
    std::vector<double> comp(cfg.option_maturity + 1, 0.0);
    for (int d = 1; d <= cfg.option_maturity; ++d)
        comp[d] = 2.0 * variance_increment(params, double(d) * dt);

    SyntheticDataset out{DatedSeries(SeriesKind::VixLevel, std::move(vix_dates),
                                     std::move(vix_values)),
                         {}};

    const double c2 = c_level * c_level;
    for (std::size_t s = burn; s < burn + std::size_t(n_days); ++s) {
        const std::size_t t_mat = s + std::size_t(cfg.option_maturity);
        const Date maturity = dates[t_mat];
        // Z_t accumulates the same kernel sum as x[t_mat], truncated at t.
        double z = 0.0;
        for (std::size_t j = 0; j < s; ++j) z += w[t_mat - j] * dw[j];
        const std::size_t t_quote_end = s + std::size_t(cfg.hedge_horizon);
        for (std::size_t t = s; t <= t_mat; ++t) {
            if (t > s) z += w[t_mat - (t - 1)] * dw[t - 1];
            if (t <= t_quote_end || t == t_mat)
                out.forward_variance.insert(dates[t], maturity,
                                            c2 * std::exp(2.0 * z + comp[t_mat - t]));
        }
    }
    return out;
}

} // namespace rvhedge
