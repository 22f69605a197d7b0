#pragma once

#include "rvhedge/estimators.hpp"
#include "rvhedge/fbm.hpp"
#include "rvhedge/models.hpp"
#include "rvhedge/series.hpp"
#include "rvhedge/stats.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rvhedge {

enum class ModelKind { BlackScholes, Cir, Rfsv };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

struct BacktestConfig {
    ModelKind model = ModelKind::Rfsv;
    int estimation_window = 88; // business days of VIX history before start
    int hedge_horizon = 29;     // rebalancing days
    int option_maturity = 32;   // business days from start to expiry
    // RFSV roughness: estimated per window when unset.
    std::optional<double> fixed_hurst = 0.377;
    // Volatility scale (sigma for RFSV, gamma otherwise): estimated per
    // window when unset.
    std::optional<double> fixed_parameter;
    int sigma_delta_days = 1; // increment lag of the scale estimators
    BusinessCalendar calendar;
};

struct BacktestRecord {
    Date start{};
    ModelKind model = ModelKind::Rfsv;
    double pnl_hedged = 0.0;
    double pnl_unhedged = 0.0;
    std::vector<double> hedge_ratios; // one per rebalancing day, size hedge_horizon
    ModelParams params_used;
};

// One episode: estimate parameters on the window before start, sell/price
// the ATM call (K = VIX at start) off F^T at start, then delta hedge daily
// in the forward, accruing ratio_{k-1} (F_k - F_{k-1}). PnLs compare the
// model price at start with the model mark at start + hedge_horizon.
BacktestRecord run_single_backtest(const DatedSeries& vix,
                                   const ForwardVarianceStore& forward_variance,
                                   Date start, const BacktestConfig& cfg);

struct SuiteResult {
    std::vector<BacktestRecord> records; // sorted by start date
    StatsSummary hedged;
    StatsSummary unhedged;
    double reduction = 0.0;
    // Episodes skipped because of missing data or estimation failure.
    std::vector<std::pair<Date, std::string>> failures;
};

// Runs the episode for every start date, summarising the PnL samples.
// Throws when every start fails.
SuiteResult run_backtest_suite(const DatedSeries& vix,
                               const ForwardVarianceStore& forward_variance,
                               std::span<const Date> starts,
                               const BacktestConfig& cfg);

// RMSE of the hedged PnL as a function of the (fixed) Hurst input, same
// start dates for every point. Returns (h, rmse) pairs in input order.
std::vector<std::pair<double, double>> hurst_sweep(
    const DatedSeries& vix, const ForwardVarianceStore& forward_variance,
    std::span<const Date> starts, const BacktestConfig& cfg,
    std::span<const double> hurst_values);

struct SyntheticDataset {
    DatedSeries vix;
    ForwardVarianceStore forward_variance;
};

// One long synthetic market history on a business-day grid: VIX levels for
// n_days observation dates starting at first_date, plus, for every
// observation date s, the forward series F^{T(s)}_t for t in
// [s, s + hedge_horizon] and the terminal quote F^{T(s)}_{T(s)}, where T(s)
// = s + option_maturity business days. A two-year (504 business day)
// burn-in before first_date is simulated and discarded so the rough driver
// has history.
SyntheticDataset generate_synthetic_dataset(const FbmParams& params, double c_level,
                                            int n_days, const BacktestConfig& cfg,
                                            std::uint64_t seed,
                                            Date first_date = parse_date("2012-01-10"));

} // namespace rvhedge
