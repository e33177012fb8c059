#pragma once

#include <span>
#include <vector>

#include "perp/marketdata.hpp"
#include "perp/strategy.hpp"
#include "perp/theory.hpp"

namespace perp::backtest {

// One hour of strategy log return, split into its sources. `total` is
// constructed as the exact sum of the three components. An hour is active
// when a position is open at any point of the interval ending at `ts`
// (including the opening and closing hours themselves); inactive hours have
// every component equal to zero.
struct HourlyReturn {
    Timestamp ts;
    double price = 0.0;    // hedge leg log returns
    double funding = 0.0;  // funding received (paid if negative)
    double fee = 0.0;      // trading costs, always <= 0
    double total = 0.0;
    bool active = false;
};

// Annualized performance over a sample, with means and vols taken over
// active hours only and scaled by the average number of active hours per
// year. Sharpe is return_ann / vol_ann; when no hour is active (or the
// vol is zero) it is reported as 0 with sharpe_defined = false.
// Percentages are fractions multiplied by 100.
struct PeriodMetrics {
    int year = 0;  // 0 == whole sample
    std::size_t n_hours = 0;
    std::size_t n_active = 0;
    double active_pct = 0.0;
    double return_ann = 0.0;  // percent
    double vol_ann = 0.0;     // percent
    double sharpe = 0.0;
    bool sharpe_defined = false;
};

struct BacktestReport {
    std::vector<HourlyReturn> returns;
    PeriodMetrics overall;
    std::vector<PeriodMetrics> by_year;  // calendar years, ascending
    bool forced_close = false;  // position closed by end of data, not by signal
    std::size_t n_round_trips = 0;
};

// Sharpe ratio of hourly active returns scaled to the strategy's own
// activity level: mean/sd over active hours times sqrt(active hours/year).
double adjusted_sharpe(std::span<const double> active_returns, double active_hours_per_year);

// Runs one strategy specification over an hourly series. Signals are
// evaluated once per observation at that observation's prices; opens and
// closes execute at the same observation. Funding accrues to the position
// held over the hour ending at each event time. Fees charge
// -(spot_fee + futures_fee) on each open and each close. P&L carries no
// discounting. A position still open at the last observation is closed
// there and flagged. The schedule must cover every funding event inside an
// open position's span.
BacktestReport run_backtest(const MarketSeries& series, const FundingSchedule& funding,
                            const strategy::StrategySpec& spec,
                            const theory::FeeTier& tier);

// Walk-forward two-threshold run: at each calendar month start (UTC), once
// at least lookback_months of history exist, re-select (u, l) on the
// trailing window and trade the month with the result; before that, stay
// flat. Open positions persist across re-selections.
struct MonthlySelection {
    int year = 0;
    int month = 0;
    double u = 0.0;
    double l = 0.0;
};

BacktestReport run_two_threshold_adaptive(const MarketSeries& series,
                                          const FundingSchedule& funding,
                                          const strategy::GridSearchConfig& config,
                                          const theory::FeeTier& tier,
                                          strategy::Restriction restriction,
                                          std::vector<MonthlySelection>* selections = nullptr);

// Annualized return split by source, in percent; total_ann is the exact
// sum of the three parts.
struct Decomposition {
    double price_ann = 0.0;
    double funding_ann = 0.0;
    double fee_ann = 0.0;
    double total_ann = 0.0;
};

Decomposition decompose(const BacktestReport& report);

// Signed hedge log return over one step for the given side; the two sides
// are exact negations of each other.
double leg_return(strategy::PositionSide side, double futures_prev, double futures_cur,
                  double spot_prev, double spot_cur);

}  // namespace perp::backtest
