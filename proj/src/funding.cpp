#include "perp/funding.hpp"

#include <stdexcept>

#include "perp/errors.hpp"

namespace perp::funding {

double accrue_continuous(const MarketSeries& series, std::size_t begin, std::size_t end,
                         const theory::TheoryParams& params) {
    params.validate();
    if (begin >= series.size() || end >= series.size())
        throw std::invalid_argument("accrue_continuous: index out of range");
    if (end < begin) throw std::invalid_argument("accrue_continuous: end precedes begin");

    double integral = 0.0;
    for (std::size_t i = begin + 1; i <= end; ++i) {
        const double dt = static_cast<double>(series[i].ts - series[i - 1].ts) / kSecondsPerYear;
        const double g0 = series[i - 1].futures - series[i - 1].spot;
        const double g1 = series[i].futures - series[i].spot;
        integral += 0.5 * (g0 + g1) * dt;
    }
    return params.kappa * integral;
}

FundingAccrual accrual_between(const MarketSeries& series, std::size_t begin,
                               std::size_t end, const theory::TheoryParams& params) {
    FundingAccrual a;
    a.from = series[begin].ts;
    a.to = series[end].ts;
    a.amount = accrue_continuous(series, begin, end, params);
    return a;
}

FundingSchedule schedule_from_gaps(const MarketSeries& series) {
    if (series.cadence_sec() != kHourSec)
        throw std::invalid_argument("schedule_from_gaps: hourly series required");
    if (static_cast<double>(series.back_ts() - series.front_ts()) < kFundingPeriodSec)
        throw DataError("schedule_from_gaps: series spans less than one 8-hour window");

    constexpr int kWindow = 8;  // hourly gaps per funding period
    std::vector<FundingEvent> events;

    // Scan every 8-hour boundary in the covered span; keep those whose
    // trailing window (T-7h .. T) is fully observed.
    std::int64_t t = (series.front_ts().sec / kFundingPeriodSec) * kFundingPeriodSec;
    if (t < series.front_ts().sec) t += kFundingPeriodSec;
    for (; t <= series.back_ts().sec; t += kFundingPeriodSec) {
        double sum = 0.0;
        bool complete = true;
        for (int k = 0; k < kWindow; ++k) {
            const std::size_t idx = series.index_of(Timestamp{t - k * kHourSec});
            if (idx == MarketSeries::npos) {
                complete = false;
                break;
            }
            const PriceObs& o = series[idx];
            sum += (o.futures - o.spot) / o.spot;
        }
        if (!complete) continue;
        events.push_back({Timestamp{t}, sum / kWindow});
    }
    if (events.empty())
        throw DataError("schedule_from_gaps: no 8-hour boundary has a complete window");
    return FundingSchedule::create(series.asset_id(), std::move(events));
}

double funding_cashflow(const FundingSchedule& schedule, FuturesSide side, Timestamp ts) {
    const double rate = schedule.rate_at(ts);  // throws when absent
    return side == FuturesSide::short_futures ? rate : -rate;
}

}  // namespace perp::funding
