#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rvhedge/backtest.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace rvhedge;

namespace {

// Small synthetic market shared by several cases. Window of 10 business
// days is enough history for the default one-day estimators.
BacktestConfig small_config(ModelKind model) {
    BacktestConfig cfg;
    cfg.model = model;
    cfg.estimation_window = 10;
    cfg.hedge_horizon = 3;
    cfg.option_maturity = 5;
    return cfg;
}

SyntheticDataset small_dataset(std::uint64_t seed, int n_days = 40) {
    return generate_synthetic_dataset(FbmParams{0.377, 0.5}, 0.2, n_days,
                                      small_config(ModelKind::Rfsv), seed);
}

} // namespace

TEST_CASE("model kind names round trip") {
    for (ModelKind kind : {ModelKind::BlackScholes, ModelKind::Cir, ModelKind::Rfsv}) {
        CHECK(model_kind_from_string(to_string(kind)) == kind);
    }
    CHECK(to_string(ModelKind::BlackScholes) == "bs");
    CHECK_THROWS_AS(model_kind_from_string("garch"), std::invalid_argument);
}

TEST_CASE("synthetic dataset invariants") {
    const SyntheticDataset data = small_dataset(404);
    const BacktestConfig cfg = small_config(ModelKind::Rfsv);

    CHECK(data.vix.size() == 40);
    CHECK(data.vix.kind() == SeriesKind::VixLevel);
    CHECK(data.vix.date(0) == parse_date("2012-01-10"));
    for (std::size_t i = 0; i < data.vix.size(); ++i) {
        CHECK(data.vix.value(i) > 0.0);
        CHECK(cfg.calendar.is_business_day(data.vix.date(i)));
    }

    // terminal forward quote equals the squared vix whenever the maturity
    // falls inside the observed window
    std::size_t checked = 0;
    for (std::size_t s = 0; s < data.vix.size(); ++s) {
        const Date maturity = cfg.calendar.offset(data.vix.date(s), cfg.option_maturity);
        const auto idx = data.vix.index_of(maturity);
        if (!idx) continue;
        const auto f_mat = data.forward_variance.lookup(maturity, maturity);
        REQUIRE(f_mat.has_value());
        const double vix2 = data.vix.value(*idx) * data.vix.value(*idx);
        CHECK(*f_mat == doctest::Approx(vix2).epsilon(1e-12));
        ++checked;
    }
    CHECK(checked > 20);

    // every hedge day of every episode has a forward quote
    for (std::size_t s = 0; s < data.vix.size(); ++s) {
        const Date start = data.vix.date(s);
        const Date maturity = cfg.calendar.offset(start, cfg.option_maturity);
        Date day = start;
        for (int k = 0; k <= cfg.hedge_horizon; ++k) {
            if (k > 0) day = cfg.calendar.offset(day, 1);
            CHECK(data.forward_variance.lookup(day, maturity).has_value());
        }
    }
}

TEST_CASE("synthetic dataset is seed deterministic") {
    const SyntheticDataset a = small_dataset(7);
    const SyntheticDataset b = small_dataset(7);
    const SyntheticDataset c = small_dataset(8);
    CHECK(a.vix.values() == b.vix.values());
    CHECK(a.vix.values() != c.vix.values());
}

TEST_CASE("single backtest episode arithmetic") {
    const SyntheticDataset data = small_dataset(11);
    BacktestConfig cfg = small_config(ModelKind::BlackScholes);
    cfg.fixed_parameter = 0.8; // pin gamma so the episode is fully determined

    const Date start = data.vix.date(12);
    const BacktestRecord rec = run_single_backtest(data.vix, data.forward_variance, start, cfg);

    CHECK(rec.start == start);
    CHECK(rec.model == ModelKind::BlackScholes);
    REQUIRE(rec.hedge_ratios.size() == 3);

    // replay the bookkeeping by hand off the same quotes
    const double strike = data.vix.value(12);
    const Date maturity = cfg.calendar.offset(start, 5);
    std::vector<double> f(cfg.hedge_horizon + 1);
    Date day = start;
    for (int k = 0; k <= 3; ++k) {
        if (k > 0) day = cfg.calendar.offset(day, 1);
        f[k] = data.forward_variance.lookup(day, maturity).value();
    }
    double gains = 0.0;
    for (int k = 1; k <= 3; ++k) {
        const double tau = double(5 - (k - 1)) / 252.0;
        const ModelQuote q = bs_quote(f[k - 1], strike, 0.8, tau);
        CHECK(rec.hedge_ratios[k - 1] == q.hedge_ratio);
        gains += q.hedge_ratio * (f[k] - f[k - 1]);
    }
    const double p0 = bs_quote(f[0], strike, 0.8, 5.0 / 252.0).price;
    const double p3 = bs_quote(f[3], strike, 0.8, 2.0 / 252.0).price;
    CHECK(rec.pnl_unhedged == doctest::Approx(p3 - p0).epsilon(1e-14));
    CHECK(rec.pnl_hedged == doctest::Approx(p3 - p0 - gains).epsilon(1e-14));
}

TEST_CASE("single backtest refuses thin history and missing quotes") {
    const SyntheticDataset data = small_dataset(21);
    const BacktestConfig cfg = small_config(ModelKind::Rfsv);

    // start too early: only 5 days of history before it
    CHECK_THROWS_AS(run_single_backtest(data.vix, data.forward_variance, data.vix.date(5), cfg),
                    std::invalid_argument);
    // start not in the series at all
    CHECK_THROWS_AS(run_single_backtest(data.vix, data.forward_variance,
                                        parse_date("2031-01-07"), cfg),
                    std::invalid_argument);
    // forwards missing: use a maturity nobody quoted
    BacktestConfig far = cfg;
    far.option_maturity = 25; // dataset only quotes maturities 5 days out
    CHECK_THROWS_AS(run_single_backtest(data.vix, data.forward_variance, data.vix.date(12), far),
                    std::invalid_argument);
}

TEST_CASE("suite aggregates records and reports failures") {
    const SyntheticDataset data = small_dataset(31);
    const BacktestConfig cfg = small_config(ModelKind::Rfsv);

    std::vector<Date> starts = {data.vix.date(12), data.vix.date(2), data.vix.date(15)};
    const SuiteResult res = run_backtest_suite(data.vix, data.forward_variance, starts, cfg);

    REQUIRE(res.records.size() == 2); // date(2) lacks history
    REQUIRE(res.failures.size() == 1);
    CHECK(res.failures[0].first == data.vix.date(2));
    CHECK(res.records[0].start < res.records[1].start); // sorted by start

    CHECK(res.hedged.n == 2);
    CHECK(res.reduction == doctest::Approx(res.unhedged.rmse / res.hedged.rmse).epsilon(1e-15));

    // all-fail case throws
    std::vector<Date> bad = {data.vix.date(0), data.vix.date(1)};
    CHECK_THROWS_AS(run_backtest_suite(data.vix, data.forward_variance, bad, cfg),
                    std::runtime_error);
    CHECK_THROWS_AS(run_backtest_suite(data.vix, data.forward_variance, {}, cfg),
                    std::invalid_argument);
}

TEST_CASE("fixed parameters bypass the window estimators") {
    const SyntheticDataset data = small_dataset(55);
    BacktestConfig cfg = small_config(ModelKind::Rfsv);
    cfg.fixed_hurst = 0.41;
    cfg.fixed_parameter = 0.6;

    const BacktestRecord rec =
        run_single_backtest(data.vix, data.forward_variance, data.vix.date(12), cfg);
    const auto* p = std::get_if<RfsvParams>(&rec.params_used);
    REQUIRE(p != nullptr);
    CHECK(p->fbm.hurst == 0.41);
    CHECK(p->fbm.sigma == 0.6);

    cfg.fixed_parameter.reset();
    const BacktestRecord est =
        run_single_backtest(data.vix, data.forward_variance, data.vix.date(12), cfg);
    const auto* q = std::get_if<RfsvParams>(&est.params_used);
    REQUIRE(q != nullptr);
    CHECK(q->fbm.hurst == 0.41);
    CHECK(q->fbm.sigma > 0.0);
    CHECK(q->fbm.sigma != 0.6);
}

TEST_CASE("hurst sweep hits the lognormal suite at one half") {
    const SyntheticDataset data = small_dataset(77, 60);
    BacktestConfig cfg = small_config(ModelKind::Rfsv);

    std::vector<Date> starts;
    for (std::size_t i = 10; i + 6 < 60; i += 4) starts.push_back(data.vix.date(i));

    const std::vector<double> hs = {0.3, 0.5};
    const auto sweep = hurst_sweep(data.vix, data.forward_variance, starts, cfg, hs);
    REQUIRE(sweep.size() == 2);
    CHECK(sweep[0].first == 0.3);
    CHECK(sweep[1].first == 0.5);
    CHECK(sweep[0].second > 0.0);

    BacktestConfig bs_cfg = small_config(ModelKind::BlackScholes);
    const SuiteResult bs = run_backtest_suite(data.vix, data.forward_variance, starts, bs_cfg);
    // at H = 1/2 the rough pricer and scale estimator reduce exactly to the
    // lognormal ones, so the sweep point reproduces the lognormal rmse
    CHECK(std::abs(sweep[1].second - bs.hedged.rmse) <= 1e-10);
}

TEST_CASE("backtest config validation") {
    const SyntheticDataset data = small_dataset(3);
    BacktestConfig cfg = small_config(ModelKind::Rfsv);
    cfg.hedge_horizon = 6; // maturity must exceed the hedge window
    CHECK_THROWS_AS(run_single_backtest(data.vix, data.forward_variance, data.vix.date(12), cfg),
                    std::invalid_argument);
    cfg = small_config(ModelKind::Rfsv);
    cfg.fixed_hurst = 1.2;
    CHECK_THROWS_AS(run_single_backtest(data.vix, data.forward_variance, data.vix.date(12), cfg),
                    std::invalid_argument);
    cfg = small_config(ModelKind::Rfsv);
    cfg.estimation_window = 1;
    CHECK_THROWS_AS(run_single_backtest(data.vix, data.forward_variance, data.vix.date(12), cfg),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_synthetic_dataset(FbmParams{0.377, 0.5}, -0.2, 40,
                                               small_config(ModelKind::Rfsv), 1),
                    std::invalid_argument);
}
