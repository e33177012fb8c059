#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "perp/marketdata.hpp"

namespace testutil {

inline constexpr std::int64_t kStart = 1577836800;  // 2020-01-01T00:00:00Z

// Hourly series over constant spot whose deviation path is exactly `rho`
// (annualized fractions): futures = spot * exp(rho/1095).
inline perp::MarketSeries series_from_deviations(const std::vector<double>& rho,
                                                 std::int64_t start_sec = kStart,
                                                 double spot = 10000.0,
                                                 const std::string& asset = "TEST") {
    std::vector<perp::PriceObs> obs;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        perp::PriceObs o;
        o.ts = perp::Timestamp{start_sec + static_cast<std::int64_t>(i) * perp::kHourSec};
        o.spot = spot;
        o.futures = spot * std::exp(rho[i] / perp::kPeriodsPerYear);
        obs.push_back(o);
    }
    return perp::MarketSeries::create(asset, perp::kHourSec, std::move(obs));
}

inline perp::FundingSchedule schedule_of(
    const std::vector<std::pair<std::int64_t, double>>& events,
    const std::string& asset = "TEST") {
    std::vector<perp::FundingEvent> list;
    for (const auto& [sec, rate] : events)
        list.push_back(perp::FundingEvent{perp::Timestamp{sec}, rate});
    return perp::FundingSchedule::create(asset, std::move(list));
}

// Empty schedule: valid whenever no position spans a funding boundary.
inline perp::FundingSchedule no_funding(const std::string& asset = "TEST") {
    return perp::FundingSchedule::create(asset, {});
}

// Constant-rate events on every 8-hour boundary strictly after `from` and
// at or before `to`. Rate 0 keeps funding out of the arithmetic while still
// satisfying the coverage requirement.
inline perp::FundingSchedule flat_schedule(perp::Timestamp from, perp::Timestamp to,
                                           double rate = 0.0,
                                           const std::string& asset = "TEST") {
    std::vector<perp::FundingEvent> list;
    std::int64_t b = (from.sec / perp::kFundingPeriodSec + 1) * perp::kFundingPeriodSec;
    for (; b <= to.sec; b += perp::kFundingPeriodSec)
        list.push_back(perp::FundingEvent{perp::Timestamp{b}, rate});
    return perp::FundingSchedule::create(asset, std::move(list));
}

}  // namespace testutil
