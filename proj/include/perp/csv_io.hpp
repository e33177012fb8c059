#pragma once

#include <iosfwd>
#include <string>

#include "perp/marketdata.hpp"

namespace perp {

// CSV layouts (header required, one record per line, UTC timestamps either
// ISO-8601 "2020-01-31T00:00:00Z" or epoch seconds):
//   prices:    timestamp,futures_price,spot_price
//   funding:   timestamp,funding_rate
//   exogenous: timestamp,value
//
// Ingest rejects malformed rows, non-positive or non-finite prices,
// duplicate timestamps and cadence violations, reporting the 1-based file
// line. Emit writes a canonical form (ISO timestamps, shortest round-trip
// numbers); emit -> ingest -> emit is byte-identical and value-exact.

MarketSeries ingest_prices(const std::string& path, const std::string& asset_id,
                           std::int64_t cadence_sec);
MarketSeries ingest_prices(std::istream& in, const std::string& asset_id,
                           std::int64_t cadence_sec, const std::string& origin = "<stream>");

FundingSchedule ingest_funding(const std::string& path, const std::string& asset_id);
FundingSchedule ingest_funding(std::istream& in, const std::string& asset_id,
                               const std::string& origin = "<stream>");

TimeSeries ingest_exogenous(const std::string& path, const std::string& name);
TimeSeries ingest_exogenous(std::istream& in, const std::string& name,
                            const std::string& origin = "<stream>");

void emit_prices(std::ostream& out, const MarketSeries& series);
void emit_prices(const std::string& path, const MarketSeries& series);

void emit_funding(std::ostream& out, const FundingSchedule& schedule);
void emit_funding(const std::string& path, const FundingSchedule& schedule);

void emit_exogenous(std::ostream& out, const TimeSeries& series);
void emit_exogenous(const std::string& path, const TimeSeries& series);

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace perp
