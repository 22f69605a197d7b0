#include "rvhedge/models.hpp"

#include "rng.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_bessel.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace rvhedge {

namespace {

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Lognormal call on VIX_T with E[VIX_T^2] = fwd_var and Var(log VIX_T) = w.
ModelQuote black_on_future(double fwd_var, double strike, double w) {
    const double sqrt_f = std::sqrt(fwd_var);
    if (w == 0.0) {
        ModelQuote q;
        q.price = std::max(sqrt_f - strike, 0.0);
        q.hedge_ratio = sqrt_f > strike ? 0.5 / sqrt_f : 0.0;
        return q;
    }
    const double discount = std::exp(-0.5 * w);
    const double future = sqrt_f * discount; // E[VIX_T]
    const double sw = std::sqrt(w);
    const double d1 = std::log(future / strike) / sw + 0.5 * sw;
    const double d2 = d1 - sw;
    ModelQuote q;
    q.price = future * norm_cdf(d1) - strike * norm_cdf(d2);
    q.hedge_ratio = norm_cdf(d1) * discount / (2.0 * sqrt_f);
    return q;
}

void check_quote_inputs(double fwd_var, double strike, double tau) {
    if (!(fwd_var > 0.0) || !std::isfinite(fwd_var))
        throw std::invalid_argument("forward variance must be positive");
    if (!(strike > 0.0) || !std::isfinite(strike))
        throw std::invalid_argument("strike must be positive");
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw std::invalid_argument("time to maturity must be positive");
}

// GSL reports through return codes here; keep its abort handler off.
[[maybe_unused]] const gsl_error_handler_t* const g_gsl_handler_off =
    gsl_set_error_handler_off();

struct GslWorkspace {
    gsl_integration_workspace* ws;
    explicit GslWorkspace(std::size_t n) : ws(gsl_integration_workspace_alloc(n)) {
        if (!ws) throw std::bad_alloc();
    }
    ~GslWorkspace() { gsl_integration_workspace_free(ws); }
    GslWorkspace(const GslWorkspace&) = delete;
    GslWorkspace& operator=(const GslWorkspace&) = delete;
};

struct CirCallIntegrand {
    double y0; // sqrt(v0)
    double u;  // gamma^2 tau / 4
    double strike;
};

// Density of Y = sqrt(X_tau) times the payoff, written through the scaled
// Bessel function so the exponent stays bounded:
//   f_Y(y) = (y0 / u) exp(-(y - y0)^2 / (2u)) [e^{-y0 y / u} I1(y0 y / u)].
double cir_call_integrand(double y, void* raw) {
    const auto* p = static_cast<const CirCallIntegrand*>(raw);
    const double dy = y - p->y0;
    const double density =
        p->y0 / p->u * std::exp(-dy * dy / (2.0 * p->u)) *
        gsl_sf_bessel_I1_scaled(p->y0 * y / p->u);
    return (y - p->strike) * density;
}

void check_quadrature(int status, double abserr, const char* what) {
    if (status == GSL_SUCCESS) return;
    // Roundoff-limited results with a tiny absolute error are fine.
    if (status == GSL_EROUND && abserr < 1e-9) return;
    throw std::runtime_error(std::string(what) + ": quadrature did not converge (" +
                             gsl_strerror(status) + ", achieved tolerance " +
                             std::to_string(abserr) + ")");
}

// E[(sqrt(X_tau) - K)^+] for dX = gamma sqrt(X) dW, X_0 = v0.
double cir_call_price(double v0, double strike, double u) {
    const double y0 = std::sqrt(v0);
    const double sd = std::sqrt(u);

    CirCallIntegrand p{y0, u, strike};
    gsl_function f;
    f.function = &cir_call_integrand;
    f.params = &p;

    const double lo = strike;
    double hi = std::max(y0 + 40.0 * sd, lo + 40.0 * sd);

    // Breakpoints pin the Gaussian bulk of the y-density so the adaptive
    // rule cannot step over a narrow spike when u is small.
    std::vector<double> pts{lo};
    for (double c : {y0 - 10.0 * sd, y0 - 3.0 * sd, y0, y0 + 3.0 * sd, y0 + 10.0 * sd})
        if (c > lo && c < hi) pts.push_back(c);
    pts.push_back(hi);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    GslWorkspace ws(512);
    double bulk = 0.0, bulk_err = 0.0;
    int status = gsl_integration_qagp(&f, pts.data(), pts.size(), 1e-12, 1e-9, 512, ws.ws,
                                      &bulk, &bulk_err);
    check_quadrature(status, bulk_err, "cir price");

    double tail = 0.0, tail_err = 0.0;
    status = gsl_integration_qagiu(&f, hi, 1e-12, 1e-9, 512, ws.ws, &tail, &tail_err);
    check_quadrature(status, tail_err, "cir price tail");

    return bulk + tail;
}

} // namespace

ModelQuote bs_quote(double fwd_var, double strike, double gamma, double tau) {
    check_quote_inputs(fwd_var, strike, tau);
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("gamma must be non-negative");
    const double w = gamma * gamma * tau;
    return black_on_future(fwd_var, strike, w);
}

ModelQuote rfsv_quote(double fwd_var, double strike, const FbmParams& params, double tau) {
    check_quote_inputs(fwd_var, strike, tau);
    const double w = variance_increment(params, tau);
    return black_on_future(fwd_var, strike, w);
}

CirDensity cir_transition_density(double v0, double x, double gamma, double horizon) {
    if (!(v0 > 0.0)) throw std::invalid_argument("v0 must be positive");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
    if (!(x > 0.0)) throw std::invalid_argument("density point must be positive");
    const double u = gamma * gamma * horizon / 4.0;
    CirDensity out;
    out.atom_at_zero = std::exp(-v0 / (2.0 * u));
    const double sx = std::sqrt(x);
    const double sv = std::sqrt(v0);
    const double d = sx - sv;
    out.density = 0.5 / u * std::sqrt(v0 / x) * std::exp(-d * d / (2.0 * u)) *
                  gsl_sf_bessel_I1_scaled(sv * sx / u);
    return out;
}

ModelQuote cir_quote(double fwd_var, double strike, double gamma, double tau) {
    check_quote_inputs(fwd_var, strike, tau);
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("gamma must be non-negative");
    const double u = gamma * gamma * tau / 4.0;
    if (u == 0.0) {
        const double sqrt_f = std::sqrt(fwd_var);
        ModelQuote q;
        q.price = std::max(sqrt_f - strike, 0.0);
        q.hedge_ratio = sqrt_f > strike ? 0.5 / sqrt_f : 0.0;
        return q;
    }
    ModelQuote q;
    q.price = cir_call_price(fwd_var, strike, u);
    const double bump = 1e-4;
    const double up = cir_call_price(fwd_var * (1.0 + bump), strike, u);
    const double dn = cir_call_price(fwd_var * (1.0 - bump), strike, u);
    q.hedge_ratio = (up - dn) / (2.0 * bump * fwd_var);
    return q;
}

McPrice mc_price_oracle(const TerminalLaw& law, double strike, std::size_t n_draws,
                        std::uint64_t seed) {
    if (n_draws < 10000) throw std::invalid_argument("need at least 1e4 draws");
    if (!(strike > 0.0)) throw std::invalid_argument("strike must be positive");

    auto rng = detail::substream(seed, 0);
    std::normal_distribution<double> normal;

    double sum = 0.0, sum_sq = 0.0;
    if (const auto* ln = std::get_if<LognormalLaw>(&law)) {
        if (!(ln->fwd_var > 0.0) || ln->log_variance < 0.0)
            throw std::invalid_argument("bad lognormal law");
        const double mu = 0.5 * std::log(ln->fwd_var) - ln->log_variance;
        const double sw = std::sqrt(ln->log_variance);
        for (std::size_t i = 0; i < n_draws; ++i) {
            const double vix = std::exp(mu + sw * normal(rng));
            const double pay = std::max(vix - strike, 0.0);
            sum += pay;
            sum_sq += pay * pay;
        }
    } else {
        const auto& ce = std::get<CirEulerLaw>(law);
        if (!(ce.v0 > 0.0) || !(ce.gamma >= 0.0) || !(ce.horizon > 0.0) || ce.n_substeps < 1)
            throw std::invalid_argument("bad cir-euler law");
        const double dt = ce.horizon / double(ce.n_substeps);
        const double sdt = std::sqrt(dt);
        for (std::size_t i = 0; i < n_draws; ++i) {
            double x = ce.v0;
            for (int k = 0; k < ce.n_substeps; ++k)
                x += ce.gamma * std::sqrt(std::max(x, 0.0)) * sdt * normal(rng);
            const double vix = std::sqrt(std::max(x, 0.0));
            const double pay = std::max(vix - strike, 0.0);
            sum += pay;
            sum_sq += pay * pay;
        }
    }
    const double n = double(n_draws);
    McPrice out;
    out.price = sum / n;
    const double var = std::max(sum_sq / n - out.price * out.price, 0.0);
    out.std_error = std::sqrt(var / n);
    return out;
}

ModelQuote quote(const ModelParams& params, double fwd_var, double strike, double tau) {
    return std::visit(
        [&](const auto& p) -> ModelQuote {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, BlackScholesParams>)
                return bs_quote(fwd_var, strike, p.gamma, tau);
            else if constexpr (std::is_same_v<T, CirParams>)
                return cir_quote(fwd_var, strike, p.gamma, tau);
            else
                return rfsv_quote(fwd_var, strike, p.fbm, tau);
        },
        params);
}

} // namespace rvhedge
