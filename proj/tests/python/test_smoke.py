import math

import pytest

import rvhedge as rv


def test_version():
    assert rv.__version__ == "0.1.0"


def test_summary_and_reduction():
    s = rv.summarize([1.0, 2.0, 3.0, 4.0])
    assert s.n == 4
    assert s.mean == pytest.approx(2.5)
    assert s.rmse == pytest.approx(math.sqrt(7.5))
    raw = rv.summarize([0.02, -0.02])
    hedged = rv.summarize([0.005, -0.005])
    assert rv.reduction_factor(raw, hedged) == pytest.approx(4.0)
    with pytest.raises(ValueError):
        rv.summarize([])


def test_calendar():
    assert rv.business_day_offset("2015-01-02", 1) == "2015-01-05"  # over a weekend
    assert rv.business_day_offset("2015-01-05", -1) == "2015-01-02"
    assert not rv.is_business_day("2015-01-04")


def test_quotes_match_across_models():
    bs = rv.bs_quote(0.04, 0.2, 0.7, 29 / 252)
    rough = rv.rfsv_quote(0.04, 0.2, 0.5, 0.7, 29 / 252)
    assert rough.price == bs.price
    assert rough.hedge_ratio == bs.hedge_ratio
    assert rv.cir_quote(0.04, 0.2, 0.7, 29 / 252).price > 0.0


def test_cir_density_atom():
    d = rv.cir_transition_density(0.04, 0.04, 1.2, 29 / 252)
    u = 1.2**2 * (29 / 252) / 4
    assert d.atom_at_zero == pytest.approx(math.exp(-0.04 / (2 * u)), rel=1e-14)
    assert d.density > 0.0


def test_mc_oracle_brackets_quote():
    q = rv.bs_quote(0.04, 0.2, 0.7, 29 / 252)
    mc = rv.mc_price_lognormal(0.04, 0.7**2 * 29 / 252, 0.2, 50000, 7)
    assert abs(mc.price - q.price) < 4 * mc.std_error


def test_variance_increment_consistency():
    w = rv.variance_increment(0.5, 0.7, 29 / 252)
    assert w == pytest.approx(0.7**2 * 29 / 252)
    assert rv.fbm_covariance(0.5, 0.3, 0.7) == pytest.approx(0.3)


def test_estimators_on_synthetic_data():
    cfg = rv.BacktestConfig()
    data = rv.generate_synthetic_dataset(0.377, 0.5, 0.2, 700, cfg, seed=21)
    fit = rv.estimate_hurst(data.vix)
    assert 0.1 < fit.hurst < 0.7
    assert fit.lags_used[0] == 1
    sigma = rv.estimate_sigma_rfsv(data.vix, fit.hurst)
    assert sigma > 0.0
    assert rv.estimate_gamma(data.vix, mode="log") > 0.0


def test_backtest_suite_and_sweep():
    cfg = rv.BacktestConfig()
    cfg.estimation_window = 20
    cfg.hedge_horizon = 3
    cfg.option_maturity = 5
    cfg.fixed_hurst = 0.377
    cfg.fixed_parameter = 0.5
    data = rv.generate_synthetic_dataset(0.377, 0.5, 0.2, 120, cfg, seed=3)
    dates = data.vix.dates()
    starts = dates[30:90:5]

    suite = rv.run_backtest_suite(data.vix, data.forward_variance, starts, cfg)
    assert suite.hedged.n == len(starts)
    assert suite.reduction == pytest.approx(suite.unhedged.rmse / suite.hedged.rmse)
    rec = suite.records[0]
    assert rec.model == "rfsv"
    assert rec.params_used == {"model": "rfsv", "hurst": 0.377, "sigma": 0.5}
    assert len(rec.hedge_ratios) == cfg.hedge_horizon

    cfg.model = rv.ModelKind.BlackScholes
    cfg.fixed_parameter = None
    bs = rv.run_backtest_suite(data.vix, data.forward_variance, starts, cfg)
    assert bs.records[0].params_used["model"] == "bs"

    points = rv.hurst_sweep(data.vix, data.forward_variance, starts, cfg, [0.3, 0.5])
    assert [h for h, _ in points] == [0.3, 0.5]


def test_static_replication():
    strikes = [0.5 + 0.01 * i for i in range(250)]
    sd = 0.2 * math.sqrt(0.5)

    def call(k):
        d1 = math.log(1.0 / k) / sd + sd / 2
        phi = lambda x: 0.5 * math.erfc(-x / math.sqrt(2))
        return phi(d1) - k * phi(d1 - sd)

    grid = rv.OptionGrid(
        "2015-06-01",
        "2015-12-01",
        1.0,
        strikes,
        [call(k) for k in strikes],
        [max(call(k) - 1.0 + k, 0.0) for k in strikes],
    )
    rep = rv.static_replication_price(grid, rv.PayoffSpec.linear())
    assert rep.value == pytest.approx(0.2**2 * 0.5, rel=2e-3)

    curve, warnings = rv.forward_variance_from_swaps([0.25, 0.5], [0.01, 0.02])
    assert warnings == []
    assert curve.value_at(0.3) == pytest.approx(0.04)


def test_simulation_experiments():
    res = rv.ueq_regression(1.0, 0.3, 0.04, 0.05, 1 / 2000, 25, 40, seed=5)
    assert res.n_obs == 1000
    assert 0.8 < res.slope < 1.2

    errors = rv.log_contract_errors(1.0, 0.3, -0.5, 0.04, 0.25, 64, 100, seed=6)
    assert len(errors) == 100

    hedge = rv.delta_hedge_experiment(0.377, 0.5, 0.2, 0.2, 29 / 252, 29, 200, seed=7)
    hedged = rv.summarize(hedge.hedged)
    unhedged = rv.summarize(hedge.unhedged)
    assert hedged.std_dev < unhedged.std_dev
