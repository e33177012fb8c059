#include "perp/backtest.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "perp/errors.hpp"

namespace perp::backtest {

double leg_return(strategy::PositionSide side, double futures_prev, double futures_cur,
                  double spot_prev, double spot_cur) {
    if (side == strategy::PositionSide::flat) return 0.0;
    const double short_side =
        std::log(spot_cur / spot_prev) - std::log(futures_cur / futures_prev);
    return side == strategy::PositionSide::short_futures_long_spot ? short_side : -short_side;
}

double adjusted_sharpe(std::span<const double> active_returns,
                       double active_hours_per_year) {
    if (active_returns.size() < 2)
        throw std::invalid_argument("adjusted_sharpe: need at least two returns");
    if (!(active_hours_per_year > 0.0))
        throw std::invalid_argument("adjusted_sharpe: active hours must be positive");
    double mean = 0.0;
    for (double r : active_returns) mean += r;
    mean /= static_cast<double>(active_returns.size());
    double ss = 0.0;
    for (double r : active_returns) ss += (r - mean) * (r - mean);
    const double sd = std::sqrt(ss / static_cast<double>(active_returns.size() - 1));
    if (!(sd > 0.0)) throw std::invalid_argument("adjusted_sharpe: zero variance");
    return mean / sd * std::sqrt(active_hours_per_year);
}

namespace {

using strategy::Action;
using strategy::PositionSide;
using strategy::PositionState;
using strategy::StrategySpec;

double funding_sign(PositionSide side) {
    return side == PositionSide::short_futures_long_spot ? 1.0 : -1.0;
}

PeriodMetrics metrics_over(const std::vector<HourlyReturn>& returns, std::size_t from,
                           std::size_t to, int year) {
    PeriodMetrics m;
    m.year = year;
    m.n_hours = to - from;
    double sum = 0.0;
    for (std::size_t i = from; i < to; ++i)
        if (returns[i].active) {
            ++m.n_active;
            sum += returns[i].total;
        }
    if (m.n_hours == 0) return m;
    m.active_pct = 100.0 * static_cast<double>(m.n_active) / static_cast<double>(m.n_hours);
    if (m.n_active == 0) return m;

    const double mean = sum / static_cast<double>(m.n_active);
    const double years = static_cast<double>(m.n_hours) / kHoursPerYear;
    const double active_per_year = static_cast<double>(m.n_active) / years;
    m.return_ann = 100.0 * mean * active_per_year;

    if (m.n_active >= 2) {
        double ss = 0.0;
        for (std::size_t i = from; i < to; ++i)
            if (returns[i].active) {
                const double d = returns[i].total - mean;
                ss += d * d;
            }
        const double sd =
            std::sqrt(ss / static_cast<double>(m.n_active - 1));
        m.vol_ann = 100.0 * sd * std::sqrt(active_per_year);
        if (m.vol_ann > 0.0) {
            m.sharpe = m.return_ann / m.vol_ann;
            m.sharpe_defined = true;
        }
    }
    return m;
}

void fill_metrics(BacktestReport& report) {
    report.overall = metrics_over(report.returns, 0, report.returns.size(), 0);
    std::size_t begin = 0;
    while (begin < report.returns.size()) {
        const int year = report.returns[begin].ts.year();
        std::size_t end = begin;
        while (end < report.returns.size() && report.returns[end].ts.year() == year) ++end;
        report.by_year.push_back(metrics_over(report.returns, begin, end, year));
        begin = end;
    }
}

// Funding events strictly after `from` and up to `to` for a position held
// across that interval; a boundary without a schedule entry is an error.
double funding_over(const FundingSchedule& funding, PositionSide side, Timestamp from,
                    Timestamp to) {
    double paid = 0.0;
    std::int64_t b = (from.sec / kFundingPeriodSec) * kFundingPeriodSec;
    if (b <= from.sec) b += kFundingPeriodSec;
    for (; b <= to.sec; b += kFundingPeriodSec) {
        if (!funding.has_event(Timestamp{b}))
            throw DataError("backtest: no funding event at " + Timestamp{b}.to_iso() +
                            " inside an open position");
        paid += funding_sign(side) * funding.rate_at(Timestamp{b});
    }
    return paid;
}

// Core event loop shared by the fixed and the walk-forward runs. spec_at(i)
// returns the specification in force at observation i, or nullptr to stay
// flat (warm-up).
BacktestReport run_engine(const MarketSeries& series, const FundingSchedule& funding,
                          const theory::FeeTier& tier,
                          const std::function<const StrategySpec*(std::size_t)>& spec_at) {
    const double fee_per_action = tier.spot_fee + tier.futures_fee;

    BacktestReport report;
    report.returns.reserve(series.size());

    PositionState state;
    const std::size_t last = series.size() - 1;

    for (std::size_t i = 0; i < series.size(); ++i) {
        const PriceObs& obs = series[i];
        HourlyReturn hour;
        hour.ts = obs.ts;

        // Accrue the interval ending here for the position held across it.
        const PositionSide held = state.side;
        if (i > 0 && held != PositionSide::flat) {
            const PriceObs& prev = series[i - 1];
            hour.price = leg_return(held, prev.futures, obs.futures, prev.spot, obs.spot);
            hour.funding = funding_over(funding, held, prev.ts, obs.ts);
            hour.active = true;
        }

        // Evaluate the signal at this observation's prices.
        const StrategySpec* spec = spec_at(i);
        Action action = Action::hold;
        if (spec != nullptr) {
            const double rho = deviation(obs.futures, obs.spot);
            action = strategy::signal(rho, state, *spec);
        }
        if (i == last && (action == Action::open_short_futures ||
                          action == Action::open_long_futures))
            action = Action::hold;  // no entries on the final print

        switch (action) {
            case Action::open_short_futures:
            case Action::open_long_futures:
                state.side = action == Action::open_short_futures
                                 ? PositionSide::short_futures_long_spot
                                 : PositionSide::long_futures_short_spot;
                state.entry_ts = obs.ts;
                state.entry_futures = obs.futures;
                state.entry_spot = obs.spot;
                hour.fee -= fee_per_action;
                hour.active = true;
                break;
            case Action::close:
                state = PositionState{};
                hour.fee -= fee_per_action;
                hour.active = true;
                ++report.n_round_trips;
                break;
            case Action::hold:
                break;
        }

        if (i == last && state.open()) {
            state = PositionState{};
            hour.fee -= fee_per_action;
            hour.active = true;
            report.forced_close = true;
            ++report.n_round_trips;
        }

        hour.total = hour.price + hour.funding + hour.fee;
        report.returns.push_back(hour);
    }

    fill_metrics(report);
    return report;
}

}  // namespace

BacktestReport run_backtest(const MarketSeries& series, const FundingSchedule& funding,
                            const strategy::StrategySpec& spec,
                            const theory::FeeTier& tier) {
    spec.validate();
    return run_engine(series, funding, tier, [&spec](std::size_t) { return &spec; });
}

BacktestReport run_two_threshold_adaptive(const MarketSeries& series,
                                          const FundingSchedule& funding,
                                          const strategy::GridSearchConfig& config,
                                          const theory::FeeTier& tier,
                                          strategy::Restriction restriction,
                                          std::vector<MonthlySelection>* selections) {
    // Pre-compute the spec in force at every observation: re-select at the
    // first observation of each calendar month once a full lookback window
    // of history is available. Selections depend on data only, never on the
    // trading state, so this pass is independent of the run below.
    constexpr std::size_t kNoSpec = static_cast<std::size_t>(-1);
    std::vector<StrategySpec> month_specs;
    std::vector<std::size_t> spec_idx(series.size(), kNoSpec);

    int cur_year = 0, cur_month = 0;
    std::size_t month_first = 0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const Timestamp ts = series[i].ts;
        if (i == 0 || ts.year() != cur_year || ts.month() != cur_month) {
            cur_year = ts.year();
            cur_month = ts.month();
            month_first = i;

            int wy = cur_year, wm = cur_month - config.lookback_months;
            while (wm < 1) {
                wm += 12;
                --wy;
            }
            const Timestamp window_start{days_from_civil(wy, wm, 1) * 86400};
            const std::size_t lo = series.index_of_or_after(window_start);
            if (window_start >= series.front_ts() && lo < month_first) {
                // Trailing window [window_start, start of this month).
                const MarketSeries window = series.slice(lo, month_first - 1);
                const auto [u, l] =
                    strategy::select_thresholds(window, funding, config, tier, restriction);
                month_specs.push_back(StrategySpec::two_threshold(u, l, restriction));
                if (selections != nullptr)
                    selections->push_back({cur_year, cur_month, u, l});
            }
        }
        if (!month_specs.empty()) spec_idx[i] = month_specs.size() - 1;
    }

    return run_engine(series, funding, tier,
                      [&month_specs, &spec_idx](std::size_t i) {
                          return spec_idx[i] == kNoSpec ? nullptr : &month_specs[spec_idx[i]];
                      });
}

Decomposition decompose(const BacktestReport& report) {
    Decomposition d;
    if (report.overall.n_active == 0 || report.returns.empty()) return d;
    double price = 0.0, fund = 0.0, fee = 0.0;
    for (const HourlyReturn& h : report.returns) {
        price += h.price;
        fund += h.funding;
        fee += h.fee;
    }
    const double years = static_cast<double>(report.returns.size()) / kHoursPerYear;
    d.price_ann = 100.0 * price / years;
    d.funding_ann = 100.0 * fund / years;
    d.fee_ann = 100.0 * fee / years;
    d.total_ann = d.price_ann + d.funding_ann + d.fee_ann;
    return d;
}

}  // namespace perp::backtest
