#include "rvhedge/simulator.hpp"

#include "rvhedge/models.hpp"

#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rvhedge {

namespace {

// e^{-x} int_0^u v^a e^{lambda v} dv * lambda, x = lambda u, as a Poisson
// mixture: sum_k Poisson(k; x) u^{a+1} lambda / (k + a + 1) stays bounded for
// any x. Beyond x ~ 200 the integration-by-parts expansion takes over.
double fou_correction(double eta, double lambda, double a, double u) {
    if (lambda == 0.0 || u == 0.0) return 0.0;
    const double x = lambda * u;
    if (x > 200.0) {
        // Integration by parts at v = u: G = u^a (1 - a/x + a(a-1)/x^2 - ...).
        const double c1 = a / x;
        const double c2 = a * (a - 1.0) / (x * x);
        const double c3 = a * (a - 1.0) * (a - 2.0) / (x * x * x);
        return eta * std::pow(u, a) * (1.0 - c1 + c2 - c3);
    }
    double pois = std::exp(-x);
    double sum = 0.0;
    for (int k = 0; k < 4000; ++k) {
        if (k > 0) pois *= x / double(k);
        const double term = pois / (double(k) + a + 1.0);
        sum += term;
        if (double(k) > x && term < 1e-17 * std::max(sum, 1e-300)) break;
    }
    return eta * lambda * std::pow(u, a + 1.0) * sum;
}

double tabulated_value(const TabulatedKernel& k, double lag) {
    if (lag <= k.lags.front()) return k.values.front();
    if (lag >= k.lags.back()) return k.values.back();
    const auto it = std::upper_bound(k.lags.begin(), k.lags.end(), lag);
    const std::size_t hi = static_cast<std::size_t>(it - k.lags.begin());
    const std::size_t lo = hi - 1;
    const double t = (lag - k.lags[lo]) / (k.lags[hi] - k.lags[lo]);
    return k.values[lo] + t * (k.values[hi] - k.values[lo]);
}

} // namespace

void validate(const KernelSpec& kernel) {
    std::visit(
        [](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, RoughBergomiKernel>) {
                if (!(k.eta > 0.0)) throw std::invalid_argument("kernel eta must be positive");
                if (!(k.hurst > 0.0 && k.hurst <= 0.5))
                    throw std::invalid_argument("kernel hurst must lie in (0, 1/2]");
            } else if constexpr (std::is_same_v<T, FouKernel>) {
                if (!(k.eta > 0.0)) throw std::invalid_argument("kernel eta must be positive");
                if (!(k.lambda >= 0.0))
                    throw std::invalid_argument("kernel lambda must be non-negative");
                if (!(k.hurst > 0.0 && k.hurst <= 0.5))
                    throw std::invalid_argument("kernel hurst must lie in (0, 1/2]");
            } else {
                if (k.lags.size() != k.values.size() || k.lags.empty())
                    throw std::invalid_argument("tabulated kernel needs matching lags/values");
                if (!(k.lags.front() >= 0.0))
                    throw std::invalid_argument("tabulated kernel lags must be >= 0");
                for (std::size_t i = 0; i < k.lags.size(); ++i) {
                    if (i > 0 && !(k.lags[i] > k.lags[i - 1]))
                        throw std::invalid_argument("tabulated kernel lags must increase");
                    if (!(k.values[i] >= 0.0) || !std::isfinite(k.values[i]))
                        throw std::invalid_argument("tabulated kernel values must be >= 0");
                }
            }
        },
        kernel);
}

double kernel_value(const KernelSpec& kernel, double lag) {
    return std::visit(
        [lag](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, RoughBergomiKernel>) {
                if (!(lag > 0.0)) throw std::invalid_argument("kernel lag must be positive");
                return k.eta * std::pow(lag, k.hurst - 0.5);
            } else if constexpr (std::is_same_v<T, FouKernel>) {
                if (!(lag > 0.0)) throw std::invalid_argument("kernel lag must be positive");
                const double a = k.hurst - 0.5;
                return k.eta * std::pow(lag, a) - fou_correction(k.eta, k.lambda, a, lag);
            } else {
                if (!(lag >= 0.0)) throw std::invalid_argument("kernel lag must be >= 0");
                return tabulated_value(k, lag);
            }
        },
        kernel);
}

double kernel_integral_near_zero(const KernelSpec& kernel, double d) {
    if (!(d >= 0.0)) throw std::invalid_argument("integral bound must be >= 0");
    if (d == 0.0) return 0.0;
    return std::visit(
        [d](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, RoughBergomiKernel>) {
                const double p = k.hurst + 0.5;
                return k.eta * std::pow(d, p) / p;
            } else if constexpr (std::is_same_v<T, FouKernel>) {
                const double a = k.hurst - 0.5;
                const double power = k.eta * std::pow(d, a + 1.0) / (a + 1.0);
                // The correction vanishes like u^{a+1} at zero; plain
                // trapezoid is enough for it.
                const int n = 128;
                double acc = 0.0;
                double prev = 0.0;
                for (int i = 1; i <= n; ++i) {
                    const double u = d * double(i) / double(n);
                    const double cur = fou_correction(k.eta, k.lambda, a, u);
                    acc += 0.5 * (prev + cur) * (d / double(n));
                    prev = cur;
                }
                return power - acc;
            } else {
                // Piecewise-linear integrand integrates exactly.
                double acc = 0.0;
                double prev_lag = 0.0;
                double prev_val = tabulated_value(k, 0.0);
                for (std::size_t i = 0; i < k.lags.size(); ++i) {
                    const double lag = std::min(k.lags[i], d);
                    if (lag > prev_lag) {
                        const double val = tabulated_value(k, lag);
                        acc += 0.5 * (prev_val + val) * (lag - prev_lag);
                        prev_lag = lag;
                        prev_val = val;
                    }
                    if (k.lags[i] >= d) break;
                }
                if (d > prev_lag)
                    acc += 0.5 * (prev_val + tabulated_value(k, d)) * (d - prev_lag);
                return acc;
            }
        },
        kernel);
}

namespace {

// Shared stepping core: forward variance nodes on the absolute grid
// u_j = j dt, updated with exact lognormal factors, left-point kernel lags.
struct CurveEngine {
    double dt = 0.0;
    std::size_t m = 0;           // last node index
    std::vector<double> initial; // resampled initial curve
    std::vector<double> g;       // g(d dt), d = 1..m
    double ig_first = 0.0;       // int_0^dt g

    std::vector<double> nodes;
    std::size_t k = 0;

    CurveEngine(const KernelSpec& kernel, const ForwardVarianceCurve& curve, double dt_,
                double horizon) {
        validate(kernel);
        curve.validate();
        if (!(dt_ > 0.0)) throw std::invalid_argument("dt must be positive");
        if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
        dt = dt_;
        m = static_cast<std::size_t>(std::llround(horizon / dt));
        if (m < 1 || std::abs(double(m) * dt - horizon) > 1e-9 * std::max(1.0, horizon))
            throw std::invalid_argument("horizon must lie on the dt node grid");
        if (curve.thetas.back() < horizon - 1e-12)
            throw std::invalid_argument("initial curve does not cover the horizon");
        initial.resize(m + 1);
        for (std::size_t j = 0; j <= m; ++j) initial[j] = curve.value_at(double(j) * dt);
        g.assign(m + 1, 0.0);
        for (std::size_t d = 1; d <= m; ++d) g[d] = kernel_value(kernel, double(d) * dt);
        ig_first = kernel_integral_near_zero(kernel, dt);
        reset();
    }

    void reset() {
        nodes = initial;
        k = 0;
    }

    double diagonal() const { return nodes[k]; }

    void step(double dw1) {
        for (std::size_t j = k + 1; j <= m; ++j) {
            const double gj = g[j - k];
            nodes[j] *= std::exp(gj * dw1 - 0.5 * gj * gj * dt);
        }
        ++k;
    }

    // Varswap legs at the current time for maturity node j_mat.
    double expected_leg(std::size_t j_mat) const {
        double acc = 0.0;
        for (std::size_t j = k + 1; j <= j_mat; ++j)
            acc += 0.5 * (nodes[j - 1] + nodes[j]) * dt;
        return acc;
    }

    // D_g U for maturity node j_mat: closed-form kernel integral against the
    // diagonal value over the first sub-interval, trapezoid beyond it.
    double dg(std::size_t j_mat) const {
        double acc = nodes[k] * ig_first;
        for (std::size_t j = k + 1; j <= j_mat; ++j) {
            const double w = (j == k + 1 || j == j_mat) ? 0.5 * dt : dt;
            acc += w * nodes[j] * g[j - k];
        }
        // Degenerate zero-width trapezoid when j_mat == k + 1.
        if (j_mat == k + 1) acc -= 0.5 * dt * nodes[j_mat] * g[1];
        return acc;
    }
};

std::size_t grid_index(double t, double dt, std::size_t max_index, const char* what) {
    const double r = t / dt;
    const auto idx = static_cast<std::size_t>(std::llround(r));
    if (std::abs(r - double(idx)) > 1e-9 * std::max(1.0, r) || idx > max_index)
        throw std::invalid_argument(std::string(what) + " must lie on the simulation grid");
    return idx;
}

} // namespace

std::vector<MarketPath> simulate_market(const MarketConfig& cfg) {
    if (cfg.n_steps == 0 || cfg.n_paths == 0)
        throw std::invalid_argument("need n_steps, n_paths >= 1");
    if (!(cfg.rho >= -1.0 && cfg.rho <= 1.0))
        throw std::invalid_argument("rho must lie in [-1, 1]");
    if (!(cfg.spot0 > 0.0)) throw std::invalid_argument("spot must start positive");
    const double horizon =
        cfg.curve_horizon > 0.0 ? cfg.curve_horizon : double(cfg.n_steps) * cfg.dt;
    if (horizon < double(cfg.n_steps) * cfg.dt - 1e-12)
        throw std::invalid_argument("curve horizon shorter than the simulation window");

    CurveEngine engine(cfg.kernel, cfg.initial_curve, cfg.dt, horizon);
    const double rho_bar = std::sqrt(1.0 - cfg.rho * cfg.rho);
    const double sq_dt = std::sqrt(cfg.dt);

    auto snapshot = [&]() {
        ForwardVarianceCurve c;
        c.thetas.resize(engine.m - engine.k + 1);
        c.values.resize(engine.m - engine.k + 1);
        for (std::size_t j = engine.k; j <= engine.m; ++j) {
            c.thetas[j - engine.k] = double(j - engine.k) * cfg.dt;
            c.values[j - engine.k] = engine.nodes[j];
        }
        return c;
    };

    std::vector<MarketPath> paths(cfg.n_paths);
    for (std::size_t p = 0; p < cfg.n_paths; ++p) {
        engine.reset();
        auto rng = detail::substream(cfg.seed, p);
        std::normal_distribution<double> normal;

        MarketPath& path = paths[p];
        path.times.resize(cfg.n_steps + 1);
        path.spot.resize(cfg.n_steps + 1);
        path.spot_variance.resize(cfg.n_steps + 1);
        path.curves.resize(cfg.n_steps + 1);

        double s = cfg.spot0;
        for (std::size_t step = 0; step <= cfg.n_steps; ++step) {
            path.times[step] = double(step) * cfg.dt;
            path.spot[step] = s;
            path.spot_variance[step] = engine.diagonal();
            path.curves[step] = snapshot();
            if (step == cfg.n_steps) break;

            const double v = engine.diagonal();
            const double dw1 = normal(rng) * sq_dt;
            const double dws = cfg.rho * dw1 + rho_bar * normal(rng) * sq_dt;
            const double ratio = cfg.payoff.f(s) / s;
            s *= std::exp(ratio * std::sqrt(v) * dws - 0.5 * ratio * ratio * v * cfg.dt);
            engine.step(dw1);
        }
    }
    return paths;
}

double varswap_value(const MarketPath& path, std::size_t k, double maturity) {
    if (k >= path.times.size()) throw std::out_of_range("time index outside the path");
    const double dt = path.times.size() > 1 ? path.times[1] - path.times[0] : 0.0;
    if (!(dt > 0.0)) throw std::invalid_argument("degenerate path grid");
    const std::size_t j_mat = grid_index(maturity, dt, 1u << 30, "maturity");

    double realized = 0.0;
    for (std::size_t i = 1; i <= k; ++i)
        realized += 0.5 * (path.spot_variance[i - 1] + path.spot_variance[i]) * dt;

    const ForwardVarianceCurve& curve = path.curves[k];
    if (j_mat < k) throw std::invalid_argument("maturity before the valuation time");
    const std::size_t remaining = j_mat - k;
    if (remaining >= curve.values.size())
        throw std::invalid_argument("curve does not cover the maturity");
    double expected = 0.0;
    for (std::size_t j = 1; j <= remaining; ++j)
        expected += 0.5 * (curve.values[j - 1] + curve.values[j]) * dt;
    return realized + expected;
}

double dg_u(const MarketState& state, const KernelSpec& kernel, double maturity) {
    validate(kernel);
    state.curve.validate();
    if (state.curve.thetas.front() != 0.0)
        throw std::invalid_argument("curve must start at theta = 0");
    const double theta_max = maturity - state.t;
    if (!(theta_max > 0.0)) throw std::invalid_argument("maturity must exceed the state time");
    if (state.curve.thetas.back() < theta_max - 1e-12)
        throw std::invalid_argument("curve does not cover the maturity");

    const auto& th = state.curve.thetas;
    const auto& vals = state.curve.values;
    const double theta1 = std::min(th.size() > 1 ? th[1] : theta_max, theta_max);

    // Singular first sub-interval: curve frozen at the diagonal value.
    double acc = vals.front() * kernel_integral_near_zero(kernel, theta1);

    double prev_theta = theta1;
    double prev_term = state.curve.value_at(theta1) * kernel_value(kernel, theta1);
    for (std::size_t i = 2; i < th.size() && prev_theta < theta_max; ++i) {
        const double theta = std::min(th[i], theta_max);
        if (theta <= prev_theta) continue;
        const double term = state.curve.value_at(theta) * kernel_value(kernel, theta);
        acc += 0.5 * (prev_term + term) * (theta - prev_theta);
        prev_theta = theta;
        prev_term = term;
    }
    if (theta_max > prev_theta) {
        const double term = state.curve.value_at(theta_max) * kernel_value(kernel, theta_max);
        acc += 0.5 * (prev_term + term) * (theta_max - prev_theta);
    }
    return acc;
}

UeqRegressionResult ueq_regression_experiment(const UeqExperimentConfig& cfg) {
    if (cfg.n_steps == 0 || cfg.n_paths == 0)
        throw std::invalid_argument("need n_steps, n_paths >= 1");
    CurveEngine engine(cfg.kernel, cfg.initial_curve, cfg.dt, cfg.maturity);
    const std::size_t j_mat = engine.m;
    if (cfg.n_steps + 1 > j_mat)
        throw std::invalid_argument("observation window must end before the maturity");
    const double sq_dt = std::sqrt(cfg.dt);

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    const double n_obs = double(cfg.n_paths) * double(cfg.n_steps);

    for (std::size_t p = 0; p < cfg.n_paths; ++p) {
        engine.reset();
        auto rng = detail::substream(cfg.seed, p);
        std::normal_distribution<double> normal;

        double realized = 0.0;
        double u_prev = engine.expected_leg(j_mat);
        for (std::size_t step = 0; step < cfg.n_steps; ++step) {
            const double d = engine.dg(j_mat);
            const double v_before = engine.diagonal();
            const double dw1 = normal(rng) * sq_dt;
            engine.step(dw1);
            realized += 0.5 * (v_before + engine.diagonal()) * cfg.dt;
            const double u_cur = realized + engine.expected_leg(j_mat);

            const double x = d * dw1;
            const double y = u_cur - u_prev;
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            syy += y * y;
            u_prev = u_cur;
        }
    }

    const double mx = sx / n_obs, my = sy / n_obs;
    const double cxx = sxx / n_obs - mx * mx;
    const double cxy = sxy / n_obs - mx * my;
    const double cyy = syy / n_obs - my * my;
    if (!(cxx > 0.0)) throw std::runtime_error("degenerate regressor in the ueq experiment");

    UeqRegressionResult out;
    out.slope = cxy / cxx;
    out.r_squared = cyy > 0.0 ? (cxy * cxy) / (cxx * cyy) : 1.0;
    out.n_obs = static_cast<std::size_t>(n_obs);
    return out;
}

std::vector<double> log_contract_replication_errors(const LogContractExperimentConfig& cfg) {
    if (cfg.n_steps == 0 || cfg.n_paths == 0)
        throw std::invalid_argument("need n_steps, n_paths >= 1");
    if (!(cfg.rho >= -1.0 && cfg.rho <= 1.0))
        throw std::invalid_argument("rho must lie in [-1, 1]");
    if (!(cfg.spot0 > 0.0)) throw std::invalid_argument("spot must start positive");
    if (!(cfg.maturity > 0.0)) throw std::invalid_argument("maturity must be positive");

    const double dt = cfg.maturity / double(cfg.n_steps);
    CurveEngine engine(cfg.kernel, cfg.initial_curve, dt, cfg.maturity);
    const double rho_bar = std::sqrt(1.0 - cfg.rho * cfg.rho);
    const double sq_dt = std::sqrt(dt);
    const PayoffSpec payoff = PayoffSpec::linear();

    std::vector<double> errors(cfg.n_paths);
    for (std::size_t p = 0; p < cfg.n_paths; ++p) {
        engine.reset();
        auto rng = detail::substream(cfg.seed, p);
        std::normal_distribution<double> normal;

        double s = cfg.spot0;
        double hedge_gains = 0.0;
        double realized = 0.0;
        const double h0 = h_function(payoff, s / cfg.spot0);
        for (std::size_t step = 0; step < cfg.n_steps; ++step) {
            const double v = engine.diagonal();
            const double x = s / cfg.spot0;
            const double h_prime = (2.0 - 2.0 / x) / cfg.spot0; // d/dS of h(S / S0)
            const double dw1 = normal(rng) * sq_dt;
            const double dws = cfg.rho * dw1 + rho_bar * normal(rng) * sq_dt;
            const double s_next = s * std::exp(std::sqrt(v) * dws - 0.5 * v * dt);
            hedge_gains += h_prime * (s_next - s);
            realized += v * dt; // left-point realized variance leg
            s = s_next;
            engine.step(dw1);
        }
        const double h_t = h_function(payoff, s / cfg.spot0);
        errors[p] = (h_t - h0 - hedge_gains) - realized;
    }
    return errors;
}

HedgeExperimentResult delta_hedge_experiment(const DeltaHedgeExperimentConfig& cfg) {
    if (cfg.n_steps == 0 || cfg.n_paths == 0)
        throw std::invalid_argument("need n_steps, n_paths >= 1");
    if (!(cfg.maturity > 0.0)) throw std::invalid_argument("maturity must be positive");
    if (!(cfg.strike > 0.0)) throw std::invalid_argument("strike must be positive");

    const double dt = cfg.maturity / double(cfg.n_steps);
    const RlMarket market = simulate_rl_market(cfg.params, cfg.c_level, cfg.n_steps, dt,
                                               cfg.maturity, cfg.n_paths, cfg.seed);

    HedgeExperimentResult out;
    out.hedged.resize(cfg.n_paths);
    out.unhedged.resize(cfg.n_paths);
    for (std::size_t p = 0; p < cfg.n_paths; ++p) {
        const auto& path = market.paths[p];
        const ModelQuote q0 =
            rfsv_quote(path.fwd_var[0], cfg.strike, cfg.params, cfg.maturity);
        double gains = 0.0;
        double ratio = q0.hedge_ratio;
        for (std::size_t k = 1; k <= cfg.n_steps; ++k) {
            gains += ratio * (path.fwd_var[k] - path.fwd_var[k - 1]);
            if (k < cfg.n_steps) {
                const double tau = cfg.maturity - double(k) * dt;
                ratio = rfsv_quote(path.fwd_var[k], cfg.strike, cfg.params, tau).hedge_ratio;
            }
        }
        const double payoff = std::max(path.vix[cfg.n_steps] - cfg.strike, 0.0);
        out.unhedged[p] = payoff - q0.price;
        out.hedged[p] = out.unhedged[p] - gains;
    }
    return out;
}

} // namespace rvhedge
