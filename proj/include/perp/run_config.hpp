#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "perp/strategy.hpp"
#include "perp/theory.hpp"

namespace perp {

// Run configuration, read from a flat `key = value` file with `[section]`
// headers. Sections: [run], [theory], [strategy], [grid], [analysis], and
// one [asset SYMBOL] per instrument. Lines starting with '#' or ';' are
// comments. Unknown sections or keys are errors. Relative paths resolve
// against the config file's directory.
//
//   [run]
//   output_dir = out
//   tier = low
//
//   [strategy]
//   kind = two_threshold        # or random_maturity, adaptive
//   u = 0.30                    # open threshold (two_threshold)
//   l = 0.10                    # close threshold (two_threshold)
//   restriction = unrestricted  # or long_spot_only
//
//   [asset BTC]
//   prices = btc_prices.csv
//   funding = btc_funding.csv

struct AssetConfig {
    std::string symbol;
    std::string prices_path;
    std::string funding_path;
};

enum class RunStrategyKind {
    random_maturity,
    two_threshold,
    adaptive,  // walk-forward two-threshold with monthly re-selection
};

struct RunConfig {
    std::string output_dir = "out";
    std::string tier = "none";
    theory::TheoryParams theory;

    RunStrategyKind kind = RunStrategyKind::adaptive;
    double u = 0.0;  // two_threshold open level
    double l = 0.0;  // two_threshold close level
    strategy::Restriction restriction = strategy::Restriction::unrestricted;
    strategy::GridSearchConfig grid;

    int past_return_months = 4;
    int hac_lag = -1;  // negative = automatic bandwidth
    std::string exogenous_path;  // optional extra regressor column

    std::vector<AssetConfig> assets;

    // Parse only; see validate() for semantic checks.
    static RunConfig load(const std::string& path);
    static RunConfig parse(std::istream& in, const std::string& origin,
                           const std::string& base_dir);

    // Field-level checks: known tier, sane strategy levels, at least one
    // asset, every referenced file present. Throws ConfigError naming the
    // offending field or asset.
    void validate() const;

    // The fixed-spec strategy described by [strategy]; ConfigError for
    // kind = adaptive (which has no single spec).
    strategy::StrategySpec fixed_spec() const;
};

}  // namespace perp
