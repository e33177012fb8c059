#pragma once

#include <string>

#include "perp/marketdata.hpp"

namespace perp::theory {

// Interest-rate and funding-cadence parameters. `r` is the annualized
// continuously-compounded rate as a fraction; `kappa` is the number of
// funding periods per year (1095 == one payment every 8 hours).
struct TheoryParams {
    double r = 0.1095;
    double kappa = kPeriodsPerYear;

    void validate() const;
};

// Per-leg, per-trade proportional fees. A round trip of the two-legged
// hedge pays (spot_fee + futures_fee) at open and again at close.
struct FeeTier {
    std::string name;
    double spot_fee = 0.0;
    double futures_fee = 0.0;

    double round_trip_cost() const { return 2.0 * (spot_fee + futures_fee); }

    // Named tiers: none, low, medium, high.
    static FeeTier standard(const std::string& name);
};

// No-arbitrage band for the annualized deviation, as fractions.
struct DeviationBounds {
    double rho_l = 0.0;
    double rho_u = 0.0;

    bool inside(double rho) const { return rho > rho_l && rho < rho_u; }
};

// Frictionless benchmark futures price S * (1 + r/kappa).
double benchmark_price(double spot, const TheoryParams& params);

// Annualized deviation of the benchmark price itself: kappa * ln(1 + r/kappa).
double benchmark_deviation(const TheoryParams& params);

// Cost-adjusted deviation band:
//   rho_l = kappa * ln(1 + r/kappa - C),  rho_u = kappa * ln(1 + r/kappa + C)
// with C the round-trip cost of the tier. Collapses to the benchmark
// deviation when C = 0.
DeviationBounds deviation_bounds(const TheoryParams& params, const FeeTier& tier);

// Expectation bound process for the carry ledger entered at (f0, s0):
//   u(t) = f0*r*e^(-rt)/(kappa+r) + (f0/(1+r/kappa) - s0) * e^(kappa*t)
// It solves u(t) = e^(-rt)*f0 - s0 + kappa * integral_0^t u(s) ds with
// u(0) = f0 - s0, and grows without bound whenever f0 exceeds the benchmark.
double bound_process(double t_years, double f0, double s0, const TheoryParams& params);

enum class LedgerSide {
    short_futures_long_spot,
    long_futures_short_spot,
};

// Discounted mark-to-market payoff of the self-financing hedge opened at
// `entry` and valued at `exit`, with the funding stream integrated by
// trapezoid over the observation grid. For the short-futures side:
//   e^(-rt)*F0 - e^(-rt)*(Ft - St) - S0 + kappa * integral (Fs - Ss) e^(-rs) ds
// where t is measured in years from the entry observation. The long-futures
// side is the exact negation. Zero-cost at entry: payoff(entry) == 0.
double discounted_payoff(LedgerSide side, const MarketSeries& path, std::size_t entry,
                         std::size_t exit, const TheoryParams& params);

// Incremental evaluator for the same expression: feed observations in order
// and read the payoff after each step in O(1).
class PayoffTracker {
public:
    PayoffTracker(LedgerSide side, Timestamp entry_ts, double f0, double s0,
                  const TheoryParams& params);

    // Advances to the next observation and returns the payoff there.
    double step(Timestamp ts, double futures, double spot);

    double payoff() const { return last_payoff_; }

private:
    double sign_ = 1.0;
    double r_ = 0.0;
    double kappa_ = 0.0;
    Timestamp entry_ts_;
    double f0_ = 0.0, s0_ = 0.0;
    double prev_t_ = 0.0;
    double prev_integrand_ = 0.0;
    double integral_ = 0.0;
    double last_payoff_ = 0.0;
};

}  // namespace perp::theory
