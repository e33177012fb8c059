#pragma once

#include "perp/marketdata.hpp"
#include "perp/theory.hpp"

namespace perp::funding {

enum class FuturesSide {
    long_futures,
    short_futures,
};

// Funding exchanged between the two sides of one contract over an interval.
// `amount` is signed from the short side's point of view (positive: the
// long pays the short), in quote currency per contract.
struct FundingAccrual {
    Timestamp from;
    Timestamp to;
    double amount = 0.0;
};

// Continuous-limit funding accrued between observation indices [begin, end]:
//   kappa * integral (F_s - S_s) ds
// integrated by trapezoid over the observation grid, time in years. Exact
// for a constant gap: one 8-hour window of constant gap C pays exactly C
// when kappa is 1095.
double accrue_continuous(const MarketSeries& series, std::size_t begin, std::size_t end,
                         const theory::TheoryParams& params);

FundingAccrual accrual_between(const MarketSeries& series, std::size_t begin,
                               std::size_t end, const theory::TheoryParams& params);

// Discrete exchange-style schedule derived from hourly price gaps: at every
// 8-hour UTC boundary covered by a full window, the event rate is the mean
// of the preceding 8 hourly fractional gaps (F - S) / S, i.e. the
// observations in (T - 8h, T]. Boundaries with missing observations are
// skipped. Requires an hourly series.
FundingSchedule schedule_from_gaps(const MarketSeries& series);

// Cashflow received by one side at an exact event time: the short receives
// +rate, the long receives -rate (the two sides sum to zero). Throws
// DataError when no event exists at `ts`.
double funding_cashflow(const FundingSchedule& schedule, FuturesSide side, Timestamp ts);

}  // namespace perp::funding
