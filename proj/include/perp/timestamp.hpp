#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace perp {

// UTC timestamp with second resolution, stored as seconds since the Unix
// epoch. All calendar arithmetic is done in UTC; no local-time conversions.
struct Timestamp {
    std::int64_t sec = 0;

    constexpr auto operator<=>(const Timestamp&) const = default;

    constexpr Timestamp operator+(std::int64_t s) const { return {sec + s}; }
    constexpr Timestamp operator-(std::int64_t s) const { return {sec - s}; }
    constexpr std::int64_t operator-(Timestamp o) const { return sec - o.sec; }

    // Accepts either "2020-01-31T00:00:00Z" or raw epoch seconds ("1580428800").
    static Timestamp parse(const std::string& text);

    // Formats as "YYYY-MM-DDTHH:MM:SSZ".
    std::string to_iso() const;

    int year() const;   // calendar year, UTC
    int month() const;  // 1..12, UTC

    bool aligned_to(std::int64_t cadence_sec) const {
        return cadence_sec > 0 && sec % cadence_sec == 0;
    }
};

struct CivilDate {
    int year;
    int month;  // 1..12
    int day;    // 1..31
};

// Proleptic Gregorian calendar <-> days since 1970-01-01.
std::int64_t days_from_civil(int y, int m, int d);
CivilDate civil_from_days(std::int64_t z);

}  // namespace perp
