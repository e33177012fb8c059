#include "perp/marketdata.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "perp/errors.hpp"

namespace perp {

double deviation(double futures_price, double spot_price) {
    if (!(futures_price > 0.0) || !std::isfinite(futures_price))
        throw std::invalid_argument("deviation: futures price must be positive and finite");
    if (!(spot_price > 0.0) || !std::isfinite(spot_price))
        throw std::invalid_argument("deviation: spot price must be positive and finite");
    return kPeriodsPerYear * (std::log(futures_price) - std::log(spot_price));
}

MarketSeries MarketSeries::create(std::string asset_id, std::int64_t cadence_sec,
                                  std::vector<PriceObs> obs) {
    if (cadence_sec <= 0) throw std::invalid_argument("cadence must be positive");
    if (obs.empty()) throw DataError("market series is empty");

    bool gaps = false;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        const PriceObs& o = obs[i];
        if (!o.ts.aligned_to(cadence_sec))
            throw DataError("observation " + std::to_string(i) + " at " + o.ts.to_iso() +
                            " is not aligned to the " + std::to_string(cadence_sec) +
                            "s cadence");
        if (!(o.futures > 0.0) || !std::isfinite(o.futures) || !(o.spot > 0.0) ||
            !std::isfinite(o.spot))
            throw DataError("observation " + std::to_string(i) +
                            " has non-positive or non-finite prices");
        if (i > 0) {
            const std::int64_t dt = o.ts - obs[i - 1].ts;
            if (dt <= 0)
                throw DataError("timestamps not strictly increasing at observation " +
                                std::to_string(i));
            if (dt % cadence_sec != 0)
                throw DataError("spacing of " + std::to_string(dt) + "s at observation " +
                                std::to_string(i) + " is not a multiple of the cadence");
            if (dt != cadence_sec) gaps = true;
        }
    }

    MarketSeries s;
    s.asset_id_ = std::move(asset_id);
    s.cadence_sec_ = cadence_sec;
    s.has_gaps_ = gaps;
    s.obs_ = std::move(obs);
    return s;
}

std::size_t MarketSeries::index_of(Timestamp ts) const {
    const std::size_t i = index_of_or_after(ts);
    if (i == obs_.size() || obs_[i].ts != ts) return npos;
    return i;
}

std::size_t MarketSeries::index_of_or_after(Timestamp ts) const {
    auto it = std::lower_bound(obs_.begin(), obs_.end(), ts,
                               [](const PriceObs& o, Timestamp t) { return o.ts < t; });
    return static_cast<std::size_t>(it - obs_.begin());
}

MarketSeries MarketSeries::slice(std::size_t first, std::size_t last) const {
    if (first > last || last >= obs_.size())
        throw std::invalid_argument("slice indices out of range");
    std::vector<PriceObs> part(obs_.begin() + first, obs_.begin() + last + 1);
    return create(asset_id_, cadence_sec_, std::move(part));
}

FundingSchedule FundingSchedule::create(std::string asset_id,
                                        std::vector<FundingEvent> events) {
    for (std::size_t i = 0; i < events.size(); ++i) {
        const FundingEvent& e = events[i];
        if (!e.ts.aligned_to(kFundingPeriodSec))
            throw DataError("funding event " + std::to_string(i) + " at " + e.ts.to_iso() +
                            " is not on an 8-hour UTC boundary");
        if (!std::isfinite(e.rate))
            throw DataError("funding event " + std::to_string(i) + " has non-finite rate");
        if (i > 0 && !(events[i - 1].ts < e.ts))
            throw DataError("funding timestamps not strictly increasing at event " +
                            std::to_string(i));
    }
    FundingSchedule s;
    s.asset_id_ = std::move(asset_id);
    s.events_ = std::move(events);
    return s;
}

bool FundingSchedule::has_event(Timestamp ts) const {
    auto it = std::lower_bound(events_.begin(), events_.end(), ts,
                               [](const FundingEvent& e, Timestamp t) { return e.ts < t; });
    return it != events_.end() && it->ts == ts;
}

double FundingSchedule::rate_at(Timestamp ts) const {
    auto it = std::lower_bound(events_.begin(), events_.end(), ts,
                               [](const FundingEvent& e, Timestamp t) { return e.ts < t; });
    if (it == events_.end() || it->ts != ts)
        throw DataError("no funding event at " + ts.to_iso());
    return it->rate;
}

TimeSeries deviation_series(const MarketSeries& series) {
    TimeSeries out;
    out.name = series.asset_id() + ".deviation";
    out.points.reserve(series.size());
    for (const PriceObs& o : series.observations())
        out.points.emplace_back(o.ts, deviation(o.futures, o.spot));
    return out;
}

TimeSeries spot_log_return_series(const MarketSeries& series) {
    TimeSeries out;
    out.name = series.asset_id() + ".spot_return";
    if (series.size() < 2) return out;
    out.points.reserve(series.size() - 1);
    for (std::size_t i = 1; i < series.size(); ++i)
        out.points.emplace_back(series[i].ts,
                                std::log(series[i].spot / series[i - 1].spot));
    return out;
}

TimeSeries moving_average(const TimeSeries& series, std::int64_t window_sec) {
    if (window_sec <= 0) throw std::invalid_argument("moving_average: window must be positive");
    if (series.points.empty()) throw DataError("moving_average: empty series");

    TimeSeries out;
    out.name = series.name + ".ma";
    out.points.reserve(series.points.size());

    double sum = 0.0;
    std::size_t lo = 0;  // first index inside (t - window, t]
    for (std::size_t i = 0; i < series.points.size(); ++i) {
        sum += series.points[i].second;
        const Timestamp t = series.points[i].first;
        while (series.points[lo].first.sec <= t.sec - window_sec) {
            sum -= series.points[lo].second;
            ++lo;
        }
        out.points.emplace_back(t, sum / static_cast<double>(i - lo + 1));
    }
    return out;
}

AlignedTable align(const std::vector<TimeSeries>& series_list) {
    if (series_list.empty()) throw std::invalid_argument("align: no series given");
    {
        std::unordered_set<std::string> names;
        for (const TimeSeries& s : series_list)
            if (!names.insert(s.name).second)
                throw std::invalid_argument("align: duplicate series name '" + s.name + "'");
    }

    // Iterate the first series in order and keep timestamps present everywhere.
    std::vector<std::unordered_set<std::int64_t>> members;
    members.reserve(series_list.size() - 1);
    for (std::size_t k = 1; k < series_list.size(); ++k) {
        std::unordered_set<std::int64_t> set;
        set.reserve(series_list[k].points.size() * 2);
        for (const auto& [ts, v] : series_list[k].points) set.insert(ts.sec);
        members.push_back(std::move(set));
    }

    AlignedTable table;
    for (const TimeSeries& s : series_list) table.names.push_back(s.name);
    table.columns.assign(series_list.size(), {});

    for (const auto& [ts, v] : series_list[0].points) {
        bool everywhere = true;
        for (const auto& set : members)
            if (!set.count(ts.sec)) {
                everywhere = false;
                break;
            }
        if (everywhere) table.timestamps.push_back(ts);
    }
    if (table.timestamps.empty()) throw DataError("align: series share no timestamps");

    std::unordered_set<std::int64_t> keep;
    keep.reserve(table.timestamps.size() * 2);
    for (Timestamp t : table.timestamps) keep.insert(t.sec);
    for (std::size_t k = 0; k < series_list.size(); ++k) {
        table.columns[k].reserve(table.timestamps.size());
        for (const auto& [ts, v] : series_list[k].points)
            if (keep.count(ts.sec)) table.columns[k].push_back(v);
        if (table.columns[k].size() != table.timestamps.size())
            throw DataError("align: duplicate or unordered timestamps in '" +
                            series_list[k].name + "'");
    }
    return table;
}

}  // namespace perp
