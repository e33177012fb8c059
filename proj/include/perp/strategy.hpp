#pragma once

#include <utility>
#include <vector>

#include "perp/marketdata.hpp"
#include "perp/theory.hpp"

namespace perp::strategy {

enum class StrategyKind {
    random_maturity,  // open outside the cost band, close at the benchmark
    two_threshold,    // open beyond +/-u, close inside (-l, l)
};

enum class Restriction {
    unrestricted,
    long_spot_only,  // never short the spot leg (no long-futures positions)
};

enum class PositionSide {
    flat,
    short_futures_long_spot,
    long_futures_short_spot,
};

struct PositionState {
    PositionSide side = PositionSide::flat;
    Timestamp entry_ts{};
    double entry_futures = 0.0;
    double entry_spot = 0.0;

    bool open() const { return side != PositionSide::flat; }
};

enum class Action {
    hold,
    open_short_futures,
    open_long_futures,
    close,
};

// Open/close levels for either strategy kind, all annualized deviation
// fractions. For random_maturity: open above open_upper or below
// open_lower, close when the deviation crosses back through close_level
// (the benchmark deviation). For two_threshold: open_upper = u,
// open_lower = -u, close when |deviation| < close_level = l.
struct StrategySpec {
    StrategyKind kind = StrategyKind::two_threshold;
    double open_upper = 0.0;
    double open_lower = 0.0;
    double close_level = 0.0;
    Restriction restriction = Restriction::unrestricted;

    static StrategySpec random_maturity(const theory::DeviationBounds& bounds,
                                        double close_target, Restriction restriction);
    static StrategySpec two_threshold(double u, double l, Restriction restriction);

    void validate() const;
};

// Signals are pure functions of (deviation, position state, parameters):
// identical inputs always produce identical actions.

Action rma_signal(double rho, const PositionState& state,
                  const theory::DeviationBounds& bounds, double close_target,
                  Restriction restriction);

Action two_threshold_signal(double rho, const PositionState& state, double u, double l,
                            Restriction restriction);

// Dispatch on spec.kind.
Action signal(double rho, const PositionState& state, const StrategySpec& spec);

// Threshold grid searched by select_thresholds: u and l on
// {grid_min, grid_min + grid_step, ..., grid_max} with u > l.
struct GridSearchConfig {
    double grid_min = 0.0;
    double grid_max = 2.0;
    double grid_step = 0.10;
    int lookback_months = 6;  // calendar months of history per selection
};

// All candidate (u, l) pairs in row-major order: u ascending, then l.
std::vector<std::pair<double, double>> enumerate_grid(const GridSearchConfig& config);

// Backtests every candidate pair over `history` and returns the pair with
// the highest adjusted Sharpe ratio. Ties (including the all-inactive case,
// scored 0) break toward the smaller u, then the smaller l, so the result
// does not depend on evaluation order. Requires history spanning at least
// the lookback window.
std::pair<double, double> select_thresholds(const MarketSeries& history,
                                            const FundingSchedule& funding,
                                            const GridSearchConfig& config,
                                            const theory::FeeTier& tier,
                                            Restriction restriction);

}  // namespace perp::strategy
