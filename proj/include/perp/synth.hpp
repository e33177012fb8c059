#pragma once

#include <cstdint>

#include "perp/marketdata.hpp"
#include "perp/theory.hpp"

namespace perp::synth {

// Hourly synthetic market: geometric Brownian spot plus a mean-reverting
// annualized deviation ("gap") process reflected at +/- gap_bound. The
// futures price is reconstructed from the deviation, and the funding
// schedule is derived from the generated gaps exactly as for real data.
// All rate/vol parameters are annualized fractions; reversion is the
// mean-reversion speed per year.
struct SynthConfig {
    std::uint64_t seed = 42;
    std::size_t n_hours = 8760;
    Timestamp start{1577836800};  // 2020-01-01T00:00:00Z, an 8-hour boundary
    std::string asset_id = "SYNTH";

    double spot_init = 10000.0;
    double spot_drift = 0.0;  // annualized drift of log spot
    double spot_vol = 0.6;    // annualized volatility of log spot

    double gap_init = 0.0;        // initial annualized deviation
    double gap_mean = 0.0;        // long-run annualized deviation
    double gap_reversion = 50.0;  // mean-reversion speed, 1/years
    double gap_vol = 1.0;         // annualized vol of the deviation
    double gap_bound = 3.0;       // reflecting barrier on |deviation|

    void validate() const;
};

struct SynthResult {
    MarketSeries prices;
    FundingSchedule funding;
};

// Deterministic: identical configs produce bit-identical output.
SynthResult generate(const SynthConfig& config);

// Monte-Carlo check of the random-maturity property: enter the hedge at
// t = 0 on each path (short futures when the initial deviation sits at or
// above rho_u, long futures at or below rho_l), then track the discounted
// payoff hour by hour and record when it first turns positive.
struct OracleStats {
    std::size_t n_paths = 0;
    std::size_t n_positive = 0;           // paths with payoff > 0 somewhere
    double fraction_positive = 0.0;
    double mean_first_positive_years = 0.0;  // over achieving paths
    double max_first_positive_years = 0.0;
    double max_abs_payoff = 0.0;          // largest |payoff| seen anywhere
};

OracleStats rma_payoff_oracle(const SynthConfig& config, std::size_t n_paths,
                              const theory::DeviationBounds& entry_rule,
                              const theory::TheoryParams& params);

}  // namespace perp::synth
