#include "perp/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "perp/errors.hpp"

namespace perp {

namespace {

std::string location(const std::string& origin, std::size_t line) {
    return origin + " line " + std::to_string(line);
}

// Splits a CSV line on commas; no quoting (none of the formats need it).
std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

// Reads a line, tolerating CRLF endings; returns false on EOF.
bool read_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

double parse_number(const std::string& text, const std::string& what,
                    const std::string& where) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v))
        throw DataError(where + ": malformed " + what + " '" + text + "'");
    return v;
}

Timestamp parse_ts(const std::string& text, const std::string& where) {
    try {
        return Timestamp::parse(text);
    } catch (const std::invalid_argument& e) {
        throw DataError(where + ": " + e.what());
    }
}

void expect_header(std::istream& in, const std::string& expected,
                   const std::string& origin) {
    std::string line;
    if (!read_line(in, line)) throw DataError(origin + ": empty file");
    if (line != expected)
        throw DataError(origin + " line 1: expected header '" + expected + "', got '" +
                        line + "'");
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return in;
}

std::ofstream create_or_throw(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

MarketSeries ingest_prices(std::istream& in, const std::string& asset_id,
                           std::int64_t cadence_sec, const std::string& origin) {
    expect_header(in, "timestamp,futures_price,spot_price", origin);

    std::vector<PriceObs> obs;
    std::string line;
    std::size_t lineno = 1;
    while (read_line(in, line)) {
        ++lineno;
        if (line.empty()) continue;  // ignore trailing blank lines
        const std::string where = location(origin, lineno);
        const auto fields = split_fields(line);
        if (fields.size() != 3) throw DataError(where + ": expected 3 fields");

        PriceObs o;
        o.ts = parse_ts(fields[0], where);
        o.futures = parse_number(fields[1], "futures_price", where);
        o.spot = parse_number(fields[2], "spot_price", where);
        if (!(o.futures > 0.0))
            throw DataError(where + ": futures_price must be positive");
        if (!(o.spot > 0.0)) throw DataError(where + ": spot_price must be positive");
        if (!o.ts.aligned_to(cadence_sec))
            throw DataError(where + ": timestamp not aligned to the " +
                            std::to_string(cadence_sec) + "s cadence");
        if (!obs.empty()) {
            if (o.ts == obs.back().ts) throw DataError(where + ": duplicate timestamp");
            if (o.ts < obs.back().ts)
                throw DataError(where + ": timestamps must increase");
            if ((o.ts - obs.back().ts) % cadence_sec != 0)
                throw DataError(where + ": spacing is not a multiple of the cadence");
        }
        obs.push_back(o);
    }
    if (obs.empty()) throw DataError(origin + ": no data rows");
    return MarketSeries::create(asset_id, cadence_sec, std::move(obs));
}

MarketSeries ingest_prices(const std::string& path, const std::string& asset_id,
                           std::int64_t cadence_sec) {
    auto in = open_or_throw(path);
    return ingest_prices(in, asset_id, cadence_sec, path);
}

FundingSchedule ingest_funding(std::istream& in, const std::string& asset_id,
                               const std::string& origin) {
    expect_header(in, "timestamp,funding_rate", origin);

    std::vector<FundingEvent> events;
    std::string line;
    std::size_t lineno = 1;
    while (read_line(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::string where = location(origin, lineno);
        const auto fields = split_fields(line);
        if (fields.size() != 2) throw DataError(where + ": expected 2 fields");

        FundingEvent e;
        e.ts = parse_ts(fields[0], where);
        e.rate = parse_number(fields[1], "funding_rate", where);
        if (!e.ts.aligned_to(kFundingPeriodSec))
            throw DataError(where + ": funding timestamp must fall on an 8-hour UTC boundary");
        if (!events.empty() && !(events.back().ts < e.ts))
            throw DataError(where + ": timestamps must increase");
        events.push_back(e);
    }
    if (events.empty()) throw DataError(origin + ": no data rows");
    return FundingSchedule::create(asset_id, std::move(events));
}

FundingSchedule ingest_funding(const std::string& path, const std::string& asset_id) {
    auto in = open_or_throw(path);
    return ingest_funding(in, asset_id, path);
}

TimeSeries ingest_exogenous(std::istream& in, const std::string& name,
                            const std::string& origin) {
    expect_header(in, "timestamp,value", origin);

    TimeSeries series;
    series.name = name;
    std::string line;
    std::size_t lineno = 1;
    while (read_line(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::string where = location(origin, lineno);
        const auto fields = split_fields(line);
        if (fields.size() != 2) throw DataError(where + ": expected 2 fields");

        const Timestamp ts = parse_ts(fields[0], where);
        const double v = parse_number(fields[1], "value", where);
        if (!series.points.empty() && !(series.points.back().first < ts))
            throw DataError(where + ": timestamps must increase");
        series.points.emplace_back(ts, v);
    }
    if (series.points.empty()) throw DataError(origin + ": no data rows");
    return series;
}

TimeSeries ingest_exogenous(const std::string& path, const std::string& name) {
    auto in = open_or_throw(path);
    return ingest_exogenous(in, name, path);
}

void emit_prices(std::ostream& out, const MarketSeries& series) {
    out << "timestamp,futures_price,spot_price\n";
    for (const PriceObs& o : series.observations())
        out << o.ts.to_iso() << ',' << format_double(o.futures) << ','
            << format_double(o.spot) << '\n';
}

void emit_prices(const std::string& path, const MarketSeries& series) {
    auto out = create_or_throw(path);
    emit_prices(out, series);
}

void emit_funding(std::ostream& out, const FundingSchedule& schedule) {
    out << "timestamp,funding_rate\n";
    for (const FundingEvent& e : schedule.events())
        out << e.ts.to_iso() << ',' << format_double(e.rate) << '\n';
}

void emit_funding(const std::string& path, const FundingSchedule& schedule) {
    auto out = create_or_throw(path);
    emit_funding(out, schedule);
}

void emit_exogenous(std::ostream& out, const TimeSeries& series) {
    out << "timestamp,value\n";
    for (const auto& [ts, v] : series.points)
        out << ts.to_iso() << ',' << format_double(v) << '\n';
}

void emit_exogenous(const std::string& path, const TimeSeries& series) {
    auto out = create_or_throw(path);
    emit_exogenous(out, series);
}

}  // namespace perp
