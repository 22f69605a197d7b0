#pragma once

#include "rvhedge/fbm.hpp"
#include "rvhedge/replication.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace rvhedge {

// Forward variance dynamics dV^u_t = V^u_t g(u - t) dW1_t, one kernel g per
// model flavour. g must be square integrable near zero; the mean-reverting
// kernel changes sign at large lags and that is fine.

struct RoughBergomiKernel {
    double eta = 0.0;   // > 0
    double hurst = 0.0; // in (0, 1/2]
};

// g(u) = eta [u^{H-1/2} - lambda e^{-lambda u} int_0^u v^{H-1/2} e^{lambda v} dv],
// the mean-reverting rough kernel. lambda = 0 collapses to rough Bergomi.
struct FouKernel {
    double eta = 0.0;
    double lambda = 0.0;
    double hurst = 0.0;
};

// Piecewise-linear g given on lags >= 0 (flat extrapolation beyond the end).
struct TabulatedKernel {
    std::vector<double> lags;
    std::vector<double> values;
};

using KernelSpec = std::variant<RoughBergomiKernel, FouKernel, TabulatedKernel>;

void validate(const KernelSpec& kernel);

// g(lag). lag must be > 0 for the power-law kernels.
double kernel_value(const KernelSpec& kernel, double lag);

// int_0^d g(u) du with the u^{H-1/2} singularity integrated in closed form.
double kernel_integral_near_zero(const KernelSpec& kernel, double d);

// Market snapshot: time, spot and the theta-indexed forward variance curve
// (theta = 0 is the spot variance V^t_t).
struct MarketState {
    double t = 0.0;
    double spot = 0.0;
    ForwardVarianceCurve curve;
};

// One simulated path on the grid t_k = k dt. curves[k] holds the full
// remaining curve at t_k, re-indexed to theta = u - t_k, so spot_variance[k]
// == curves[k].values.front().
struct MarketPath {
    std::vector<double> times;
    std::vector<double> spot;
    std::vector<double> spot_variance;
    std::vector<ForwardVarianceCurve> curves;
};

struct MarketConfig {
    KernelSpec kernel;
    PayoffSpec payoff = PayoffSpec::linear();
    double rho = 0.0; // spot/variance correlation in [-1, 1]
    ForwardVarianceCurve initial_curve;
    std::size_t n_steps = 0;
    double dt = 0.0;
    std::size_t n_paths = 0;
    std::uint64_t seed = 0;
    double spot0 = 1.0;
    // Longest maturity the curve must cover, measured from 0. Defaults to
    // n_steps * dt. The initial curve is resampled onto the dt node grid up
    // to this horizon.
    double curve_horizon = 0.0;
};

// Exact lognormal node updates for the curve (left-point kernel evaluation),
// log-Euler for the spot with the spot variance frozen over each step.
std::vector<MarketPath> simulate_market(const MarketConfig& cfg);

// Value at times[k] of the variance swap paying int_0^T V^u_u du:
// realized leg by trapezoid over the recorded diagonal, expected leg by
// trapezoid over the curve at times[k]. T must lie on the node grid.
double varswap_value(const MarketPath& path, std::size_t k, double maturity);

// Sensitivity of the varswap value to the common curve shock:
//   D_g U^T_t = int_t^T Vhat_t(u) g(u - t) du,
// trapezoid over curve nodes with the first (singular) sub-interval handled
// by the closed-form integral of g against a constant Vhat.
double dg_u(const MarketState& state, const KernelSpec& kernel, double maturity);

struct UeqExperimentConfig {
    KernelSpec kernel;
    ForwardVarianceCurve initial_curve;
    double maturity = 0.0; // varswap maturity
    double dt = 0.0;
    std::size_t n_steps = 0; // observation window, n_steps * dt <= maturity
    std::size_t n_paths = 0;
    std::uint64_t seed = 0;
};

struct UeqRegressionResult {
    double slope = 0.0;
    double r_squared = 0.0;
    std::size_t n_obs = 0;
};

// Pooled OLS of realised varswap increments dU^T on D_g U^T dW1 across paths
// and steps. Under the dynamics above the slope is 1 up to discretisation.
UeqRegressionResult ueq_regression_experiment(const UeqExperimentConfig& cfg);

struct LogContractExperimentConfig {
    KernelSpec kernel;
    double rho = 0.0;
    ForwardVarianceCurve initial_curve;
    double maturity = 0.0;
    std::size_t n_steps = 0; // dt = maturity / n_steps
    std::size_t n_paths = 0;
    std::uint64_t seed = 0;
    double spot0 = 1.0;
};

// Per-path discrete replication error of the realised variance payoff by
// the h-function hedge (linear payoff):
//   h(S_T) - h(S_0) - sum h'(S_k) dS_k - sum V_k dt.
// Converges to zero in L2 at rate sqrt(dt).
std::vector<double> log_contract_replication_errors(const LogContractExperimentConfig& cfg);

struct DeltaHedgeExperimentConfig {
    FbmParams params;
    double c_level = 0.0; // initial VIX level
    double strike = 0.0;
    double maturity = 0.0;
    std::size_t n_steps = 0; // rebalancing grid, dt = maturity / n_steps
    std::size_t n_paths = 0;
    std::uint64_t seed = 0;
};

struct HedgeExperimentResult {
    std::vector<double> hedged;   // payoff - initial price - hedge gains
    std::vector<double> unhedged; // payoff - initial price
};

// Daily delta hedging of an ATM-or-not VIX call in the synthetic
// rough market, hedging with the forward F^T_t and the model's own ratio.
HedgeExperimentResult delta_hedge_experiment(const DeltaHedgeExperimentConfig& cfg);

} // namespace rvhedge
