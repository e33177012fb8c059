#include "perp/synth.hpp"

#include <cmath>
#include <stdexcept>

#include "perp/funding.hpp"
#include "perp/rng.hpp"

namespace perp::synth {

void SynthConfig::validate() const {
    if (n_hours < 2) throw std::invalid_argument("synth: need at least 2 hours");
    if (!(spot_init > 0.0)) throw std::invalid_argument("synth: spot_init must be positive");
    if (spot_vol < 0.0 || gap_vol < 0.0)
        throw std::invalid_argument("synth: volatilities must be >= 0");
    if (gap_reversion < 0.0)
        throw std::invalid_argument("synth: gap_reversion must be >= 0");
    if (!(gap_bound > 0.0)) throw std::invalid_argument("synth: gap_bound must be positive");
    if (std::abs(gap_init) > gap_bound || std::abs(gap_mean) > gap_bound)
        throw std::invalid_argument("synth: gap_init/gap_mean must lie within gap_bound");
    if (!start.aligned_to(kHourSec))
        throw std::invalid_argument("synth: start must be hour-aligned");
}

namespace {

double reflect(double x, double bound) {
    // Fold back into [-bound, bound]; a single fold suffices for any sane
    // hourly step, but iterate to be safe.
    while (x > bound || x < -bound) {
        if (x > bound) x = 2.0 * bound - x;
        if (x < -bound) x = -2.0 * bound - x;
    }
    return x;
}

}  // namespace

SynthResult generate(const SynthConfig& config) {
    config.validate();

    GaussianRng rng(GaussianRng::stream_seed(config.seed, 0));
    const double dt = 1.0 / kHoursPerYear;
    const double sqrt_dt = std::sqrt(dt);

    std::vector<PriceObs> obs;
    obs.reserve(config.n_hours);

    double log_spot = std::log(config.spot_init);
    double gap = config.gap_init;
    for (std::size_t i = 0; i < config.n_hours; ++i) {
        PriceObs o;
        o.ts = config.start + static_cast<std::int64_t>(i) * kHourSec;
        // Emit the configured state exactly at i = 0; exp(log(x)) need not
        // round-trip.
        o.spot = i == 0 ? config.spot_init : std::exp(log_spot);
        o.futures = o.spot * std::exp(gap / kPeriodsPerYear);
        obs.push_back(o);

        const double z_spot = rng.next();
        const double z_gap = rng.next();
        log_spot += (config.spot_drift - 0.5 * config.spot_vol * config.spot_vol) * dt +
                    config.spot_vol * sqrt_dt * z_spot;
        gap += config.gap_reversion * (config.gap_mean - gap) * dt +
               config.gap_vol * sqrt_dt * z_gap;
        gap = reflect(gap, config.gap_bound);
    }

    MarketSeries prices = MarketSeries::create(config.asset_id, kHourSec, std::move(obs));
    FundingSchedule funding = funding::schedule_from_gaps(prices);
    return {std::move(prices), std::move(funding)};
}

OracleStats rma_payoff_oracle(const SynthConfig& config, std::size_t n_paths,
                              const theory::DeviationBounds& entry_rule,
                              const theory::TheoryParams& params) {
    config.validate();
    params.validate();
    if (n_paths == 0) throw std::invalid_argument("oracle: need at least one path");
    if (entry_rule.inside(config.gap_init))
        throw std::invalid_argument(
            "oracle: initial deviation must sit outside the entry band");

    const theory::LedgerSide side = config.gap_init >= entry_rule.rho_u
                                        ? theory::LedgerSide::short_futures_long_spot
                                        : theory::LedgerSide::long_futures_short_spot;

    OracleStats stats;
    stats.n_paths = n_paths;
    double sum_first = 0.0;

    for (std::size_t p = 0; p < n_paths; ++p) {
        SynthConfig path_config = config;
        path_config.seed = GaussianRng::stream_seed(config.seed, p);
        const SynthResult run = generate(path_config);
        const MarketSeries& prices = run.prices;

        theory::PayoffTracker tracker(side, prices[0].ts, prices[0].futures, prices[0].spot,
                                      params);
        bool achieved = false;
        for (std::size_t i = 1; i < prices.size(); ++i) {
            const double payoff = tracker.step(prices[i].ts, prices[i].futures, prices[i].spot);
            if (std::abs(payoff) > stats.max_abs_payoff)
                stats.max_abs_payoff = std::abs(payoff);
            if (!achieved && payoff > 0.0) {
                achieved = true;
                const double t = static_cast<double>(prices[i].ts - prices[0].ts) / kSecondsPerYear;
                sum_first += t;
                if (t > stats.max_first_positive_years) stats.max_first_positive_years = t;
            }
        }
        if (achieved) ++stats.n_positive;
    }

    stats.fraction_positive = static_cast<double>(stats.n_positive) / static_cast<double>(n_paths);
    stats.mean_first_positive_years =
        stats.n_positive > 0 ? sum_first / static_cast<double>(stats.n_positive) : 0.0;
    return stats;
}

}  // namespace perp::synth
