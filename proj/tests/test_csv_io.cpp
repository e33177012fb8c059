#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "perp/csv_io.hpp"
#include "perp/errors.hpp"

using namespace perp;

TEST_CASE("prices round trip is byte identical") {
    const MarketSeries s =
        testutil::series_from_deviations({0.11, -0.03, 0.271828}, testutil::kStart, 12345.678);
    std::ostringstream first;
    emit_prices(first, s);

    std::istringstream in(first.str());
    const MarketSeries back = ingest_prices(in, "TEST", kHourSec);
    REQUIRE(back.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(back[i].ts == s[i].ts);
        CHECK(back[i].futures == s[i].futures);  // exact, shortest round-trip
        CHECK(back[i].spot == s[i].spot);
    }

    std::ostringstream second;
    emit_prices(second, back);
    CHECK(second.str() == first.str());
}

TEST_CASE("prices ingest validation") {
    const auto ingest = [](const std::string& text) {
        std::istringstream in(text);
        return ingest_prices(in, "BTC", kHourSec, "prices.csv");
    };

    CHECK_THROWS_WITH_AS(ingest(""), "prices.csv: empty file", DataError);
    CHECK_THROWS_AS(ingest("time,f,s\n"), DataError);
    CHECK_THROWS_AS(ingest("timestamp,futures_price,spot_price\n"), DataError);  // no rows

    const std::string header = "timestamp,futures_price,spot_price\n";
    CHECK_THROWS_WITH_AS(ingest(header + "2020-01-01T00:00:00Z,abc,100\n"),
                         "prices.csv line 2: malformed futures_price 'abc'", DataError);
    CHECK_THROWS_AS(ingest(header + "2020-01-01T00:00:00Z,100\n"), DataError);
    CHECK_THROWS_AS(ingest(header + "2020-01-01T00:00:00Z,-1,100\n"), DataError);
    CHECK_THROWS_AS(ingest(header + "2020-01-01T00:00:00Z,100,100\n" +
                           "2020-01-01T00:00:00Z,100,100\n"),
                    DataError);  // duplicate timestamp
    CHECK_THROWS_AS(ingest(header + "2020-01-01T00:30:00Z,100,100\n"),
                    DataError);  // off-cadence

    SUBCASE("crlf and blank lines tolerated") {
        const MarketSeries s = ingest(header +
                                      "2020-01-01T00:00:00Z,101,100\r\n"
                                      "\n"
                                      "2020-01-01T01:00:00Z,102,100\r\n");
        CHECK(s.size() == 2);
        CHECK(s[1].futures == 102.0);
    }
    SUBCASE("epoch timestamps accepted") {
        const MarketSeries s = ingest(header + "1577836800,101,100\n");
        CHECK(s[0].ts.to_iso() == "2020-01-01T00:00:00Z");
    }
}

TEST_CASE("funding round trip and validation") {
    const FundingSchedule sched = testutil::schedule_of(
        {{testutil::kStart, 1e-4}, {testutil::kStart + 28800, -2.5e-5}});
    std::ostringstream out;
    emit_funding(out, sched);

    std::istringstream in(out.str());
    const FundingSchedule back = ingest_funding(in, "TEST");
    REQUIRE(back.size() == 2);
    CHECK(back[0].rate == 1e-4);
    CHECK(back[1].rate == -2.5e-5);

    std::istringstream bad("timestamp,funding_rate\n2020-01-01T03:00:00Z,1e-4\n");
    CHECK_THROWS_AS(ingest_funding(bad, "TEST"), DataError);  // not an 8h boundary
}

TEST_CASE("exogenous series") {
    std::istringstream in("timestamp,value\n2020-01-01T00:00:00Z,55\n2020-01-02T00:00:00Z,60\n");
    const TimeSeries fg = ingest_exogenous(in, "fear_greed");
    CHECK(fg.name == "fear_greed");
    REQUIRE(fg.points.size() == 2);
    CHECK(fg.points[1].second == 60.0);

    std::ostringstream out;
    emit_exogenous(out, fg);
    CHECK(out.str() ==
          "timestamp,value\n2020-01-01T00:00:00Z,55\n2020-01-02T00:00:00Z,60\n");
}

TEST_CASE("missing file names the path") {
    CHECK_THROWS_WITH_AS(ingest_prices("/nonexistent/p.csv", "BTC", kHourSec),
                         "cannot open /nonexistent/p.csv", DataError);
}
