#include "perp/timestamp.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace perp {

std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);              // [0, 399]
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;   // [0, 365]
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;             // [0, 146096]
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);           // [0, 146096]
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);           // [0, 365]
    const unsigned mp = (5 * doy + 2) / 153;                                // [0, 11]
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;                        // [1, 31]
    const unsigned m = mp + (mp < 10 ? 3 : -9);                             // [1, 12]
    return {static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
    if (from >= to || to > s.size()) return false;
    for (std::size_t i = from; i < to; ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Timestamp Timestamp::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty timestamp");

    // Raw epoch seconds: optional sign followed by digits only.
    const std::size_t digits_from = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (all_digits(text, digits_from, text.size())) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw std::invalid_argument("bad epoch timestamp: " + text);
        return {v};
    }

    // ISO-8601, UTC only: YYYY-MM-DDTHH:MM:SSZ
    if (text.size() != 20 || text[4] != '-' || text[7] != '-' || text[10] != 'T' ||
        text[13] != ':' || text[16] != ':' || text[19] != 'Z' ||
        !all_digits(text, 0, 4) || !all_digits(text, 5, 7) || !all_digits(text, 8, 10) ||
        !all_digits(text, 11, 13) || !all_digits(text, 14, 16) || !all_digits(text, 17, 19))
        throw std::invalid_argument("bad timestamp format: " + text);

    const int y = std::stoi(text.substr(0, 4));
    const int mo = std::stoi(text.substr(5, 2));
    const int d = std::stoi(text.substr(8, 2));
    const int h = std::stoi(text.substr(11, 2));
    const int mi = std::stoi(text.substr(14, 2));
    const int s = std::stoi(text.substr(17, 2));

    if (mo < 1 || mo > 12 || d < 1 || h > 23 || mi > 59 || s > 59)
        throw std::invalid_argument("timestamp out of range: " + text);
    const std::int64_t days = days_from_civil(y, mo, d);
    const CivilDate back = civil_from_days(days);
    if (back.year != y || back.month != mo || back.day != d)
        throw std::invalid_argument("invalid calendar date: " + text);

    return {days * 86400 + h * 3600 + mi * 60 + s};
}

std::string Timestamp::to_iso() const {
    const std::int64_t days = floor_div(sec, 86400);
    std::int64_t rem = sec - days * 86400;
    const CivilDate cd = civil_from_days(days);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", cd.year, cd.month,
                  cd.day, static_cast<int>(rem / 3600), static_cast<int>((rem / 60) % 60),
                  static_cast<int>(rem % 60));
    return buf;
}

int Timestamp::year() const { return civil_from_days(floor_div(sec, 86400)).year; }

int Timestamp::month() const { return civil_from_days(floor_div(sec, 86400)).month; }

}  // namespace perp
