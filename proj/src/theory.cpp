#include "perp/theory.hpp"

#include <cmath>
#include <stdexcept>

#include "perp/errors.hpp"

namespace perp::theory {

void TheoryParams::validate() const {
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw std::invalid_argument("kappa must be positive");
    if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("r must be >= 0");
    if (!(r < kappa)) throw std::invalid_argument("r must be less than kappa");
}

FeeTier FeeTier::standard(const std::string& name) {
    if (name == "none") return {"none", 0.0, 0.0};
    if (name == "low") return {"low", 0.000225, 0.000018};
    if (name == "medium") return {"medium", 0.00045, 0.000072};
    if (name == "high") return {"high", 0.000675, 0.000144};
    throw ConfigError("unknown fee tier '" + name + "' (expected none|low|medium|high)");
}

double benchmark_price(double spot, const TheoryParams& params) {
    params.validate();
    if (!(spot > 0.0) || !std::isfinite(spot))
        throw std::invalid_argument("benchmark_price: spot must be positive");
    return spot * (1.0 + params.r / params.kappa);
}

double benchmark_deviation(const TheoryParams& params) {
    params.validate();
    return params.kappa * std::log1p(params.r / params.kappa);
}

DeviationBounds deviation_bounds(const TheoryParams& params, const FeeTier& tier) {
    params.validate();
    if (tier.spot_fee < 0.0 || tier.futures_fee < 0.0)
        throw std::invalid_argument("fees must be non-negative");
    const double carry = params.r / params.kappa;
    const double cost = tier.round_trip_cost();
    if (1.0 + carry - cost <= 0.0)
        throw std::invalid_argument("round-trip cost too large: lower bound undefined");
    return {params.kappa * std::log1p(carry - cost), params.kappa * std::log1p(carry + cost)};
}

double bound_process(double t_years, double f0, double s0, const TheoryParams& params) {
    params.validate();
    if (!(f0 > 0.0) || !(s0 > 0.0))
        throw std::invalid_argument("bound_process: prices must be positive");
    if (t_years < 0.0) throw std::invalid_argument("bound_process: t must be >= 0");
    const double decaying = f0 * params.r * std::exp(-params.r * t_years) / (params.kappa + params.r);
    const double growing = (f0 / (1.0 + params.r / params.kappa) - s0) * std::exp(params.kappa * t_years);
    return decaying + growing;
}

namespace {

double side_sign(LedgerSide side) {
    return side == LedgerSide::short_futures_long_spot ? 1.0 : -1.0;
}

double years_between(Timestamp from, Timestamp to) {
    return static_cast<double>(to - from) / kSecondsPerYear;
}

}  // namespace

PayoffTracker::PayoffTracker(LedgerSide side, Timestamp entry_ts, double f0, double s0,
                             const TheoryParams& params)
    : sign_(side_sign(side)),
      r_(params.r),
      kappa_(params.kappa),
      entry_ts_(entry_ts),
      f0_(f0),
      s0_(s0),
      prev_t_(0.0),
      prev_integrand_(f0 - s0) {
    params.validate();
    if (!(f0 > 0.0) || !(s0 > 0.0))
        throw std::invalid_argument("payoff: prices must be positive");
    // e^0*F0 - e^0*(F0 - S0) - S0 + 0 == 0: opening the ledger costs nothing.
    last_payoff_ = 0.0;
}

double PayoffTracker::step(Timestamp ts, double futures, double spot) {
    const double t = years_between(entry_ts_, ts);
    if (t < prev_t_) throw std::invalid_argument("payoff: observations must move forward");
    const double disc = std::exp(-r_ * t);
    const double integrand = (futures - spot) * disc;
    integral_ += 0.5 * (prev_integrand_ + integrand) * (t - prev_t_);
    prev_t_ = t;
    prev_integrand_ = integrand;

    const double short_side = disc * f0_ - disc * (futures - spot) - s0_ + kappa_ * integral_;
    last_payoff_ = sign_ * short_side;
    return last_payoff_;
}

double discounted_payoff(LedgerSide side, const MarketSeries& path, std::size_t entry,
                         std::size_t exit, const TheoryParams& params) {
    if (entry >= path.size() || exit >= path.size())
        throw std::invalid_argument("payoff: index out of range");
    if (exit < entry) throw std::invalid_argument("payoff: exit precedes entry");

    PayoffTracker tracker(side, path[entry].ts, path[entry].futures, path[entry].spot,
                          params);
    for (std::size_t i = entry + 1; i <= exit; ++i)
        tracker.step(path[i].ts, path[i].futures, path[i].spot);
    return tracker.payoff();
}

}  // namespace perp::theory
