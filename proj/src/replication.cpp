#include "rvhedge/replication.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rvhedge {

PayoffSpec PayoffSpec::linear() {
    PayoffSpec p;
    p.linear_ = true;
    return p;
}

PayoffSpec PayoffSpec::tabulated(std::vector<double> x, std::vector<double> f) {
    if (x.size() != f.size() || x.size() < 2)
        throw std::invalid_argument("tabulated payoff needs at least two (x, f) pairs");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !std::isfinite(x[i]))
            throw std::invalid_argument("tabulated payoff grid must be positive");
        if (i > 0 && !(x[i] > x[i - 1]))
            throw std::invalid_argument("tabulated payoff grid must be strictly increasing");
        if (!(f[i] > 0.0) || !std::isfinite(f[i]))
            throw std::invalid_argument("tabulated payoff values must be strictly positive");
    }
    PayoffSpec p;
    p.linear_ = false;
    p.grid_ = std::move(x);
    p.values_ = std::move(f);
    return p;
}

double PayoffSpec::f(double x) const {
    if (!(x > 0.0)) throw std::invalid_argument("payoff argument must be positive");
    if (linear_) return x;
    if (x <= grid_.front()) return values_.front();
    if (x >= grid_.back()) return values_.back();
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - grid_.begin());
    const std::size_t lo = hi - 1;
    const double t = (x - grid_[lo]) / (grid_[hi] - grid_[lo]);
    return values_[lo] + t * (values_[hi] - values_[lo]);
}

double PayoffSpec::weight(double x) const {
    const double fx = f(x);
    return 2.0 / (fx * fx);
}

double h_function(const PayoffSpec& payoff, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("h argument must be positive");
    if (payoff.is_linear()) return 2.0 * (x - 1.0) - 2.0 * std::log(x);
    if (x == 1.0) return 0.0;

    // Signed double trapezoid along the segment from 1 to x; the cumulative
    // inner integral is reused as the outer integrand.
    const std::size_t n = 20000;
    const double step = (x - 1.0) / double(n);
    double t_prev = 1.0;
    double w_prev = payoff.weight(t_prev);
    double inner_prev = 0.0; // int_1^{t} 2/f^2
    double outer = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double t = 1.0 + double(i) * step;
        const double w = payoff.weight(t);
        const double inner = inner_prev + 0.5 * (w_prev + w) * (t - t_prev);
        outer += 0.5 * (inner_prev + inner) * (t - t_prev);
        t_prev = t;
        w_prev = w;
        inner_prev = inner;
    }
    return outer;
}

namespace {

// Trapezoid of weight(K) * price(K) over [a, b] where prices are linear
// between the tabulated strikes. Assumes a <= b inside the strike range.
double weighted_strip(const std::vector<double>& strikes, const std::vector<double>& prices,
                      const PayoffSpec& payoff, double a, double b) {
    if (!(b > a)) return 0.0;
    auto price_at = [&](double k) {
        const auto it = std::upper_bound(strikes.begin(), strikes.end(), k);
        std::size_t hi = static_cast<std::size_t>(it - strikes.begin());
        if (hi == 0) return prices.front();
        if (hi >= strikes.size()) return prices.back();
        const std::size_t lo = hi - 1;
        const double t = (k - strikes[lo]) / (strikes[hi] - strikes[lo]);
        return prices[lo] + t * (prices[hi] - prices[lo]);
    };

    std::vector<double> nodes{a};
    for (double k : strikes)
        if (k > a && k < b) nodes.push_back(k);
    nodes.push_back(b);

    double acc = 0.0;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const double k0 = nodes[i - 1], k1 = nodes[i];
        const double g0 = payoff.weight(k0) * price_at(k0);
        const double g1 = payoff.weight(k1) * price_at(k1);
        acc += 0.5 * (g0 + g1) * (k1 - k0);
    }
    return acc;
}

} // namespace

ReplicationResult static_replication_price(const OptionGrid& grid, const PayoffSpec& payoff) {
    const auto n = grid.strikes.size();
    if (n < 2) throw std::invalid_argument("option grid needs at least two strikes");
    if (grid.call_prices.size() != n || grid.put_prices.size() != n)
        throw std::invalid_argument("option grid arrays differ in length");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(grid.strikes[i] > 0.0)) throw std::invalid_argument("strikes must be positive");
        if (i > 0 && !(grid.strikes[i] > grid.strikes[i - 1]))
            throw std::invalid_argument("strikes must be strictly increasing");
        if (!(grid.call_prices[i] >= 0.0) || !(grid.put_prices[i] >= 0.0) ||
            !std::isfinite(grid.call_prices[i]) || !std::isfinite(grid.put_prices[i]))
            throw std::invalid_argument("option prices must be finite and non-negative");
    }
    if (!(grid.spot >= grid.strikes.front() && grid.spot <= grid.strikes.back()))
        throw std::invalid_argument("strike grid does not bracket the spot");

    ReplicationResult out;
    out.value = weighted_strip(grid.strikes, grid.put_prices, payoff, grid.strikes.front(),
                               grid.spot) +
                weighted_strip(grid.strikes, grid.call_prices, payoff, grid.spot,
                               grid.strikes.back());
    out.tail_warning = grid.call_prices.back() > 1e-6 * grid.spot;
    return out;
}

void ForwardVarianceCurve::validate() const {
    if (thetas.empty() || thetas.size() != values.size())
        throw std::invalid_argument("curve nodes and values differ in length");
    if (!(thetas.front() >= 0.0)) throw std::invalid_argument("curve thetas must be >= 0");
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        if (i > 0 && !(thetas[i] > thetas[i - 1]))
            throw std::invalid_argument("curve thetas must be strictly increasing");
        if (!(values[i] >= 0.0) || !std::isfinite(values[i]))
            throw std::invalid_argument("curve values must be finite and non-negative");
    }
}

double ForwardVarianceCurve::value_at(double theta) const {
    if (theta <= thetas.front()) return values.front();
    if (theta >= thetas.back()) return values.back();
    const auto it = std::upper_bound(thetas.begin(), thetas.end(), theta);
    const std::size_t hi = static_cast<std::size_t>(it - thetas.begin());
    const std::size_t lo = hi - 1;
    const double t = (theta - thetas[lo]) / (thetas[hi] - thetas[lo]);
    return values[lo] + t * (values[hi] - values[lo]);
}

CurveExtraction forward_variance_from_swaps(std::span<const double> thetas,
                                            std::span<const double> swap_values) {
    const std::size_t n = thetas.size();
    if (n < 2 || swap_values.size() != n)
        throw std::invalid_argument("need at least two maturities with swap values");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(thetas[i]) || !std::isfinite(swap_values[i]))
            throw std::invalid_argument("non-finite swap input");
        if (i > 0) {
            if (!(thetas[i] > thetas[i - 1]))
                throw std::invalid_argument("maturities must be strictly increasing");
            if (swap_values[i] < swap_values[i - 1] - 1e-10)
                throw std::invalid_argument("calendar arbitrage in swap quotes");
        }
    }

    CurveExtraction out;
    out.curve.thetas.assign(thetas.begin(), thetas.end());
    out.curve.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double slope;
        if (i == 0)
            slope = (swap_values[1] - swap_values[0]) / (thetas[1] - thetas[0]);
        else if (i + 1 == n)
            slope = (swap_values[n - 1] - swap_values[n - 2]) / (thetas[n - 1] - thetas[n - 2]);
        else
            slope = (swap_values[i + 1] - swap_values[i - 1]) / (thetas[i + 1] - thetas[i - 1]);
        if (slope < 0.0) {
            out.warnings.push_back("negative forward variance clipped to zero at theta " +
                                   std::to_string(thetas[i]));
            slope = 0.0;
        }
        out.curve.values[i] = slope;
    }
    out.curve.validate();
    return out;
}

} // namespace rvhedge
