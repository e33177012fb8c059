#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "perp/marketdata.hpp"
#include "perp/theory.hpp"

namespace perp::analysis {

struct RegressionResult {
    std::vector<std::string> names;  // regressors in input order, "const" last
    std::vector<double> coefficients;
    std::vector<double> hac_se;
    std::vector<double> hac_t_stats;
    double r_squared = 0.0;
    std::size_t n = 0;
    int lag = 0;  // Bartlett lag actually applied
};

// Negative lag selects floor(4 * (n/100)^(2/9)).
inline constexpr int kAutoHacLag = -1;

// OLS of y on the named columns plus an intercept (reported as "const",
// last). Standard errors are Newey-West with a Bartlett kernel; lag 0
// reduces to White standard errors. Throws DataError on a singular design
// matrix and std::invalid_argument on shape mismatches or n <= k.
RegressionResult ols_hac(const std::vector<double>& y,
                         const std::vector<std::vector<double>>& columns,
                         const std::vector<std::string>& names, int lag = kAutoHacLag);

// Pearson correlations of the table's columns over the aligned sample,
// indexed [i][j] in column order. Needs >= 2 columns and >= 3 rows; a
// zero-variance column is a DataError.
std::vector<std::vector<double>> correlation_matrix(const AlignedTable& table);

// Daily (00:00 UTC observations) annualized mean log return of spot over a
// trailing window of lookback_months * 30 days. Days without a full window
// are omitted; an empty result is a DataError.
TimeSeries past_return_regressor(const MarketSeries& spot, int lookback_months = 4);

inline constexpr int kEventWindowMinutes = 240;

// Cumulative hedged-position minute returns around funding events, funding
// cashflow itself excluded, averaged separately over positive-rate and
// negative-rate events. The hedge is short futures/long spot when the rate
// is positive and the opposite when negative, so a gap decaying toward the
// payment shows up as a positive drift in both buckets. Curves cover
// -240..+240 minutes (481 points) and are exactly 0 at -240. Events without
// the full window, or with a zero rate, are skipped and tallied.
struct EventStudyResult {
    std::vector<int> minute_offsets;
    std::vector<double> mean_cum_returns_positive;
    std::vector<double> mean_cum_returns_negative;
    std::size_t n_positive = 0;
    std::size_t n_negative = 0;
    std::size_t n_skipped = 0;
};

EventStudyResult event_study(const MarketSeries& minute_series,
                             const FundingSchedule& schedule);

// Open the sign-matched hedge 5 minutes before each funding event, close 5
// minutes after: per event, price leg return + |rate| - round-trip fees.
// Events lacking either minute observation are skipped.
struct FundingCaptureSummary {
    std::size_t n_events = 0;
    std::size_t n_skipped = 0;
    double mean_return = 0.0;        // per-event fraction
    double annualized_return = 0.0;  // mean_return scaled to 3 * 365 events
};

FundingCaptureSummary funding_capture_backtest(const MarketSeries& minute_series,
                                               const FundingSchedule& schedule,
                                               const theory::FeeTier& tier);

}  // namespace perp::analysis
