#pragma once

#include "rvhedge/fbm.hpp"

#include <cstdint>
#include <variant>

namespace rvhedge {

// Price and hedge ratio of a call on VIX_T struck at K, written on the
// tradable forward F^T_t = E[VIX_T^2 | F_t]. hedge_ratio is dPrice/dF.
struct ModelQuote {
    double price = 0.0;
    double hedge_ratio = 0.0;
};

// Lognormal VIX: log VIX_T | F_t ~ N(log sqrt(F) - w/2, w), w = gamma^2 tau.
//   price = sqrt(F) e^{-w/2} N(d1) - K N(d2),
//   d1,2  = (log(sqrt(F) e^{-w/2} / K) +- w/2) / sqrt(w)
//   hedge = N(d1) e^{-w/2} / (2 sqrt(F)).
// gamma = 0 degenerates to the intrinsic value (sqrt(F) - K)^+ with ratio
// 1{sqrt(F) > K} / (2 sqrt(F)).
ModelQuote bs_quote(double fwd_var, double strike, double gamma, double tau);

// Same lognormal family with total variance from the rough driver,
// w = variance_increment(params, tau). Coincides with bs_quote at H = 1/2,
// sigma = gamma.
ModelQuote rfsv_quote(double fwd_var, double strike, const FbmParams& params, double tau);

// Transition law of the driftless square-root diffusion dX = gamma sqrt(X) dW
// started at v0, evaluated after time horizon. The law has an atom at zero
// of mass exp(-v0 / (2u)), u = gamma^2 horizon / 4, and for x > 0 the
// density
//   q(x) = 1/(2u) sqrt(v0 / x) exp(-(sqrt(x) - sqrt(v0))^2 / (2u)) It1(...)
// written here through the exponentially scaled Bessel I1 so large
// arguments do not overflow.
struct CirDensity {
    double density = 0.0;      // q(x) at the requested point
    double atom_at_zero = 0.0; // P(X_horizon = 0)
};

CirDensity cir_transition_density(double v0, double x, double gamma, double horizon);

// Call on sqrt(X_T) under the square-root law: integrates the payoff
// against the transition density on (K^2, inf). Hedge ratio by central
// difference in v0 with relative bump 1e-4.
ModelQuote cir_quote(double fwd_var, double strike, double gamma, double tau);

// Terminal laws for the Monte Carlo pricing oracle.
struct LognormalLaw {
    double fwd_var = 0.0;      // E[VIX_T^2]
    double log_variance = 0.0; // w >= 0
};

struct CirEulerLaw {
    double v0 = 0.0;
    double gamma = 0.0;
    double horizon = 0.0;
    int n_substeps = 1; // full-truncation Euler substeps
};

using TerminalLaw = std::variant<LognormalLaw, CirEulerLaw>;

struct McPrice {
    double price = 0.0;
    double std_error = 0.0;
};

// Plain Monte Carlo mean of (VIX_T - K)^+ with n_draws >= 10^4.
McPrice mc_price_oracle(const TerminalLaw& law, double strike,
                        std::size_t n_draws, std::uint64_t seed);

// Model selection for backtests.
struct BlackScholesParams {
    double gamma = 0.0;
};

struct CirParams {
    double gamma = 0.0;
};

struct RfsvParams {
    FbmParams fbm;
};

using ModelParams = std::variant<BlackScholesParams, CirParams, RfsvParams>;

ModelQuote quote(const ModelParams& params, double fwd_var, double strike, double tau);

} // namespace rvhedge
