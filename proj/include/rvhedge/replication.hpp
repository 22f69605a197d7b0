#pragma once

#include "rvhedge/calendar.hpp"

#include <span>
#include <string>
#include <vector>

namespace rvhedge {

// Gains function f of the weighted variance swap with payoff
//   integral f(S_t)^2 / S_t^2 ... (log-contract when f(x) = x).
// Only f enters the replication weights: a strip of strike-K options is
// weighted by 2 / f(K)^2.
class PayoffSpec {
public:
    // f(x) = x, the plain variance swap / log contract.
    static PayoffSpec linear();

    // Piecewise-linear f given on a strictly increasing positive grid.
    // Values must be strictly positive (the weight 2/f^2 must stay finite).
    static PayoffSpec tabulated(std::vector<double> x, std::vector<double> f);

    bool is_linear() const { return linear_; }

    double f(double x) const;

    // Replication weight 2 / f(x)^2.
    double weight(double x) const;

private:
    PayoffSpec() = default;
    bool linear_ = true;
    std::vector<double> grid_;
    std::vector<double> values_;
};

// h(x) = int_1^x int_1^y 2 / f(z)^2 dz dy. Closed form 2(x-1) - 2 log x for
// linear f; nested trapezoid refinement otherwise. x > 0.
double h_function(const PayoffSpec& payoff, double x);

// One observation date / maturity pair of an option surface on VIX.
struct OptionGrid {
    Date date{};
    Date maturity{};
    double spot = 0.0; // VIX level at the observation date
    std::vector<double> strikes;
    std::vector<double> call_prices;
    std::vector<double> put_prices;
};

struct ReplicationResult {
    double value = 0.0;
    // Set when the outermost call price exceeds 1e-6 * spot, i.e. the strike
    // grid was truncated before the integrand decayed.
    bool tail_warning = false;
};

// Static replication value of the weighted variance payoff:
//   U = 2 int_0^S P(K)/f(K)^2 dK + 2 int_S^inf C(K)/f(K)^2 dK
// by trapezoid over the strike grid, split at the spot. Requires a strictly
// increasing strike grid that brackets the spot and non-negative prices.
ReplicationResult static_replication_price(const OptionGrid& grid, const PayoffSpec& payoff);

struct ForwardVarianceCurve {
    std::vector<double> thetas; // years from observation, strictly increasing, >= 0
    std::vector<double> values; // instantaneous forward variance per year

    void validate() const; // throws std::invalid_argument on bad shape

    // Piecewise-linear read with flat extrapolation at both ends.
    double value_at(double theta) const;
};

struct CurveExtraction {
    ForwardVarianceCurve curve;
    std::vector<std::string> warnings; // negative-slope clips etc.
};

// Differentiates maturity-indexed swap values U(theta) into a forward
// variance curve: one-sided differences at the ends, central inside.
// U must be non-decreasing within 1e-10, otherwise throws
// std::invalid_argument("calendar arbitrage in swap quotes"). Negative
// derivative estimates (possible only within the tolerance) are clipped to
// zero with a warning.
CurveExtraction forward_variance_from_swaps(std::span<const double> thetas,
                                            std::span<const double> swap_values);

} // namespace rvhedge
