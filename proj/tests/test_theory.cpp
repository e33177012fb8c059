#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "helpers.hpp"
#include "perp/errors.hpp"
#include "perp/rng.hpp"
#include "perp/theory.hpp"

using namespace perp;
using namespace perp::theory;

namespace {
const TheoryParams kTable{0.1095, 1095.0};  // r/kappa = 1e-4
}

TEST_CASE("benchmark price and deviation") {
    CHECK(benchmark_price(10000.0, kTable) == doctest::Approx(10001.0).epsilon(1e-15));
    // kappa * ln(1 + r/kappa), frozen high-precision value
    CHECK(benchmark_deviation(kTable) ==
          doctest::Approx(0.10949452536497263).epsilon(1e-14));
}

TEST_CASE("params validation") {
    CHECK_THROWS_AS((TheoryParams{-0.1, 1095.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((TheoryParams{0.1, 0.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((TheoryParams{2000.0, 1095.0}.validate()), std::invalid_argument);
}

TEST_CASE("fee tiers") {
    CHECK(FeeTier::standard("none").round_trip_cost() == 0.0);
    const FeeTier low = FeeTier::standard("low");
    CHECK(low.spot_fee == 0.000225);
    CHECK(low.futures_fee == 0.000018);
    CHECK(low.round_trip_cost() == doctest::Approx(0.000486).epsilon(1e-15));
    CHECK(FeeTier::standard("high").round_trip_cost() ==
          doctest::Approx(0.001638).epsilon(1e-15));
    CHECK_THROWS_AS(FeeTier::standard("National"), ConfigError);
}

TEST_CASE("deviation bounds reproduce the fee-tier table") {
    // Frozen against 40-digit evaluations of kappa*ln(1 + r/kappa -+ C);
    // values in percent.
    const struct {
        const char* tier;
        double lo, hi;
    } rows[] = {
        {"none", 10.949452536497263, 10.949452536497263},
        {"low", -42.275159630812551, 64.148206410670474},
        {"medium", -103.41682042273757, 125.19640130473566},
        {"high", -168.54064100129056, 190.14581111216277},
    };
    for (const auto& row : rows) {
        CAPTURE(row.tier);
        const DeviationBounds b = deviation_bounds(kTable, FeeTier::standard(row.tier));
        CHECK(100.0 * b.rho_l == doctest::Approx(row.lo).epsilon(1e-13));
        CHECK(100.0 * b.rho_u == doctest::Approx(row.hi).epsilon(1e-13));
    }

    const DeviationBounds none = deviation_bounds(kTable, FeeTier::standard("none"));
    CHECK(none.rho_l == benchmark_deviation(kTable));
    CHECK(none.rho_u == none.rho_l);
    CHECK_FALSE(none.inside(none.rho_u));  // band is open

    // r = 0 straddles zero, symmetric in price space: the edge prices are
    // 1 -+ C, so exp(rho_l/kappa) + exp(rho_u/kappa) == 2.
    const DeviationBounds sym =
        deviation_bounds(TheoryParams{0.0, 1095.0}, FeeTier::standard("low"));
    CHECK(sym.rho_l < 0.0);
    CHECK(sym.rho_u > 0.0);
    CHECK(std::exp(sym.rho_l / 1095.0) + std::exp(sym.rho_u / 1095.0) ==
          doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("bound process frozen values") {
    // f0 = 10500, s0 = 10000: u(0) = f0 - s0 exactly, then explosive growth.
    CHECK(bound_process(0.0, 10500.0, 10000.0, kTable) ==
          doctest::Approx(500.0).epsilon(1e-12));
    CHECK(bound_process(0.001, 10500.0, 10000.0, kTable) ==
          doctest::Approx(1492.5027937652065).epsilon(1e-12));
    CHECK(bound_process(0.005, 10500.0, 10000.0, kTable) ==
          doctest::Approx(119075.72485119633).epsilon(1e-12));
    CHECK(bound_process(0.01, 10500.0, 10000.0, kTable) ==
          doctest::Approx(28417227.963799185).epsilon(1e-12));
}

TEST_CASE("bound process solves its integral equation at O(h^2)") {
    // residual(t) = u(t) - [e^(-rt) f0 - s0 + kappa * trapz(u, 0..t)]
    const double f0 = 10300.0, s0 = 10000.0;
    const auto residual = [&](double t, double h) {
        double integral = 0.0;
        double prev = bound_process(0.0, f0, s0, kTable);
        const int steps = static_cast<int>(std::llround(t / h));
        for (int i = 1; i <= steps; ++i) {
            const double cur = bound_process(i * h, f0, s0, kTable);
            integral += 0.5 * (prev + cur) * h;
            prev = cur;
        }
        return bound_process(t, f0, s0, kTable) -
               (std::exp(-kTable.r * t) * f0 - s0 + kTable.kappa * integral);
    };

    const double r1 = std::fabs(residual(0.004, 1e-5));
    const double r2 = std::fabs(residual(0.004, 5e-6));
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.05));  // halving h quarters it
}

TEST_CASE("discounted payoff ledger") {
    const double rho_entry = 1.0;
    const MarketSeries path = testutil::series_from_deviations(
        {rho_entry, 0.8, 0.5, 0.2, 0.0, -0.1}, testutil::kStart, 10000.0);

    SUBCASE("zero cost at entry") {
        CHECK(discounted_payoff(LedgerSide::short_futures_long_spot, path, 0, 0, kTable) ==
              0.0);
    }
    SUBCASE("long side is the exact negation") {
        for (std::size_t exit = 1; exit < path.size(); ++exit) {
            const double s =
                discounted_payoff(LedgerSide::short_futures_long_spot, path, 0, exit, kTable);
            const double l =
                discounted_payoff(LedgerSide::long_futures_short_spot, path, 0, exit, kTable);
            CHECK(l == -s);
        }
    }
    SUBCASE("tracker matches the batch evaluation") {
        PayoffTracker tracker(LedgerSide::short_futures_long_spot, path[0].ts,
                              path[0].futures, path[0].spot, kTable);
        for (std::size_t i = 1; i < path.size(); ++i) {
            const double step = tracker.step(path[i].ts, path[i].futures, path[i].spot);
            CHECK(step ==
                  discounted_payoff(LedgerSide::short_futures_long_spot, path, 0, i, kTable));
        }
    }
    SUBCASE("entry/exit index checks") {
        CHECK_THROWS_AS(
            discounted_payoff(LedgerSide::short_futures_long_spot, path, 3, 2, kTable),
            std::invalid_argument);
        CHECK_THROWS_AS(
            discounted_payoff(LedgerSide::short_futures_long_spot, path, 0, 99, kTable),
            std::invalid_argument);
    }
}

TEST_CASE("constant path at r=0 accrues kappa*(F0-S0)*t") {
    // With F and S frozen and no discounting, only the funding integral
    // remains: kappa * (F0 - S0) * t, linear and sign-fixed.
    const TheoryParams r0{0.0, 1095.0};
    const double gap = 500.0;
    std::vector<double> rho(48, deviation(10500.0, 10000.0));
    const MarketSeries path = testutil::series_from_deviations(rho, testutil::kStart, 10000.0);

    for (std::size_t i : {1ul, 8ul, 24ul, 47ul}) {
        const double t = static_cast<double>(i) * kHourSec / kSecondsPerYear;
        const double expected = r0.kappa * gap * t;
        const double got =
            discounted_payoff(LedgerSide::short_futures_long_spot, path, 0, i, r0);
        CHECK(got == doctest::Approx(expected).epsilon(1e-9));
        CHECK(got > 0.0);  // no sign change anywhere on a frozen gap
    }
}

TEST_CASE("one-step payoff invariant") {
    // Over a single step at r=0 the ledger moves by -dF + dS + kappa*gap*dt
    // (trapezoid gap), for any prices.
    const TheoryParams r0{0.0, 1095.0};
    GaussianRng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const double s0 = 9000.0 + 100.0 * trial, f0 = s0 * (1.0 + 0.001 * rng.next());
        const double s1 = s0 * std::exp(0.01 * rng.next());
        const double f1 = s1 * (1.0 + 0.001 * rng.next());
        std::vector<PriceObs> obs{{Timestamp{testutil::kStart}, f0, s0},
                                  {Timestamp{testutil::kStart + kHourSec}, f1, s1}};
        const MarketSeries path = MarketSeries::create("T", kHourSec, obs);
        const double dt = kHourSec / kSecondsPerYear;
        const double expected = -(f1 - f0) + (s1 - s0) +
                                r0.kappa * 0.5 * ((f0 - s0) + (f1 - s1)) * dt;
        CHECK(discounted_payoff(LedgerSide::short_futures_long_spot, path, 0, 1, r0) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
}
