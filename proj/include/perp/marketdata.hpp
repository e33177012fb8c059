#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "perp/timestamp.hpp"

namespace perp {

// Annualization constant for 8-hour funding periods: 3 * 365 periods/year.
inline constexpr double kPeriodsPerYear = 1095.0;
inline constexpr std::int64_t kFundingPeriodSec = 28800;  // 8 hours
inline constexpr std::int64_t kHourSec = 3600;
inline constexpr std::int64_t kMinuteSec = 60;
inline constexpr double kSecondsPerYear = 365.0 * 86400.0;
inline constexpr double kHoursPerYear = 8760.0;

// Annualized log deviation of the futures price from spot, as a fraction
// (0.11 == 11%). Throws std::invalid_argument on non-positive prices.
double deviation(double futures_price, double spot_price);

struct PriceObs {
    Timestamp ts;
    double futures = 0.0;
    double spot = 0.0;
};

// Paired futures/spot observations on a fixed cadence. Timestamps are
// strictly increasing, aligned to the cadence, and spaced by whole multiples
// of it; missing observations are allowed but flagged. Prices are finite
// and strictly positive. Instances are validated on construction and
// immutable afterwards.
class MarketSeries {
public:
    static MarketSeries create(std::string asset_id, std::int64_t cadence_sec,
                               std::vector<PriceObs> obs);

    const std::string& asset_id() const { return asset_id_; }
    std::int64_t cadence_sec() const { return cadence_sec_; }
    bool has_gaps() const { return has_gaps_; }
    std::size_t size() const { return obs_.size(); }
    const PriceObs& operator[](std::size_t i) const { return obs_[i]; }
    const std::vector<PriceObs>& observations() const { return obs_; }
    Timestamp front_ts() const { return obs_.front().ts; }
    Timestamp back_ts() const { return obs_.back().ts; }

    // Index of the observation with exactly this timestamp, or npos.
    std::size_t index_of(Timestamp ts) const;
    // Index of the first observation at or after this timestamp (size() if none).
    std::size_t index_of_or_after(Timestamp ts) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    // Sub-series covering observation indices [first, last].
    MarketSeries slice(std::size_t first, std::size_t last) const;

private:
    MarketSeries() = default;
    std::string asset_id_;
    std::int64_t cadence_sec_ = 0;
    bool has_gaps_ = false;
    std::vector<PriceObs> obs_;
};

struct FundingEvent {
    Timestamp ts;
    double rate = 0.0;  // fraction of notional paid per event
};

// Realized funding payments keyed by event time. Event timestamps fall on
// 8-hour UTC boundaries (00:00, 08:00, 16:00) and increase strictly.
class FundingSchedule {
public:
    static FundingSchedule create(std::string asset_id, std::vector<FundingEvent> events);

    const std::string& asset_id() const { return asset_id_; }
    std::size_t size() const { return events_.size(); }
    const FundingEvent& operator[](std::size_t i) const { return events_[i]; }
    const std::vector<FundingEvent>& events() const { return events_; }

    bool has_event(Timestamp ts) const;
    // Rate at an exact event time; throws DataError if absent.
    double rate_at(Timestamp ts) const;

private:
    FundingSchedule() = default;
    std::string asset_id_;
    std::vector<FundingEvent> events_;
};

// Generic named scalar time series (exogenous indicators, derived columns).
// Timestamps must increase strictly; values must be finite.
struct TimeSeries {
    std::string name;
    std::vector<std::pair<Timestamp, double>> points;
};

// Named columns observed on the common (inner-joined) timestamp grid.
struct AlignedTable {
    std::vector<Timestamp> timestamps;
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;  // columns[c][row]
};

// Derived per-observation deviation series, named "<asset>.deviation".
TimeSeries deviation_series(const MarketSeries& series);
TimeSeries spot_log_return_series(const MarketSeries& series);

// Trailing moving average over (t - window, t]; leading partial windows use
// whatever observations exist. Throws on empty input or non-positive window.
TimeSeries moving_average(const TimeSeries& series, std::int64_t window_sec);

// Inner join of several series on their timestamps. Throws DataError when
// the intersection is empty and std::invalid_argument on duplicate names.
AlignedTable align(const std::vector<TimeSeries>& series_list);

}  // namespace perp
