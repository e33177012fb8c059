#include "perp/strategy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "perp/backtest.hpp"
#include "perp/errors.hpp"

namespace perp::strategy {

StrategySpec StrategySpec::random_maturity(const theory::DeviationBounds& bounds,
                                           double close_target, Restriction restriction) {
    StrategySpec spec;
    spec.kind = StrategyKind::random_maturity;
    spec.open_upper = bounds.rho_u;
    spec.open_lower = bounds.rho_l;
    spec.close_level = close_target;
    spec.restriction = restriction;
    spec.validate();
    return spec;
}

StrategySpec StrategySpec::two_threshold(double u, double l, Restriction restriction) {
    StrategySpec spec;
    spec.kind = StrategyKind::two_threshold;
    spec.open_upper = u;
    spec.open_lower = -u;
    spec.close_level = l;
    spec.restriction = restriction;
    spec.validate();
    return spec;
}

void StrategySpec::validate() const {
    if (!std::isfinite(open_upper) || !std::isfinite(open_lower) ||
        !std::isfinite(close_level))
        throw std::invalid_argument("strategy: thresholds must be finite");
    if (kind == StrategyKind::two_threshold) {
        if (open_upper < 0.0) throw std::invalid_argument("strategy: u must be >= 0");
        if (close_level < 0.0) throw std::invalid_argument("strategy: l must be >= 0");
        if (!(open_upper > close_level))
            throw std::invalid_argument("strategy: u must exceed l");
    } else {
        if (!(open_lower <= close_level && close_level <= open_upper))
            throw std::invalid_argument(
                "strategy: close target must lie inside the open band");
    }
}

Action rma_signal(double rho, const PositionState& state,
                  const theory::DeviationBounds& bounds, double close_target,
                  Restriction restriction) {
    switch (state.side) {
        case PositionSide::flat:
            if (rho > bounds.rho_u) return Action::open_short_futures;
            if (rho < bounds.rho_l && restriction == Restriction::unrestricted)
                return Action::open_long_futures;
            return Action::hold;
        case PositionSide::short_futures_long_spot:
            return rho <= close_target ? Action::close : Action::hold;
        case PositionSide::long_futures_short_spot:
            return rho >= close_target ? Action::close : Action::hold;
    }
    return Action::hold;
}

Action two_threshold_signal(double rho, const PositionState& state, double u, double l,
                            Restriction restriction) {
    switch (state.side) {
        case PositionSide::flat:
            if (rho > u) return Action::open_short_futures;
            if (rho < -u && restriction == Restriction::unrestricted)
                return Action::open_long_futures;
            return Action::hold;
        case PositionSide::short_futures_long_spot:
        case PositionSide::long_futures_short_spot:
            return (rho > -l && rho < l) ? Action::close : Action::hold;
    }
    return Action::hold;
}

Action signal(double rho, const PositionState& state, const StrategySpec& spec) {
    if (spec.kind == StrategyKind::random_maturity) {
        theory::DeviationBounds bounds{spec.open_lower, spec.open_upper};
        return rma_signal(rho, state, bounds, spec.close_level, spec.restriction);
    }
    return two_threshold_signal(rho, state, spec.open_upper, spec.close_level,
                                spec.restriction);
}

std::vector<std::pair<double, double>> enumerate_grid(const GridSearchConfig& config) {
    if (!(config.grid_step > 0.0) || !(config.grid_max > config.grid_min))
        throw std::invalid_argument("grid: bad bounds or step");
    const int n = static_cast<int>(std::llround((config.grid_max - config.grid_min) /
                                                config.grid_step)) + 1;
    std::vector<std::pair<double, double>> pairs;
    for (int iu = 0; iu < n; ++iu) {
        const double u = config.grid_min + iu * config.grid_step;
        for (int il = 0; il < iu; ++il) {
            const double l = config.grid_min + il * config.grid_step;
            pairs.emplace_back(u, l);
        }
    }
    return pairs;
}

std::pair<double, double> select_thresholds(const MarketSeries& history,
                                            const FundingSchedule& funding,
                                            const GridSearchConfig& config,
                                            const theory::FeeTier& tier,
                                            Restriction restriction) {
    if (config.lookback_months <= 0)
        throw std::invalid_argument("grid: lookback must be positive");
    const double span_days =
        static_cast<double>(history.back_ts() - history.front_ts()) / 86400.0;
    if (span_days + 1e-9 < 30.0 * config.lookback_months)
        throw DataError("select_thresholds: history shorter than the lookback window");

    const auto pairs = enumerate_grid(config);
    std::vector<double> scores(pairs.size(), 0.0);

    // Candidates are independent; evaluate in parallel, then reduce
    // sequentially so the winner never depends on scheduling or input order.
    const std::size_t n_threads =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), pairs.size());
    std::vector<std::thread> workers;
    std::atomic<std::size_t> cursor{0};
    for (std::size_t w = 0; w < n_threads; ++w) {
        workers.emplace_back([&]() {
            while (true) {
                const std::size_t i = cursor.fetch_add(1);
                if (i >= pairs.size()) return;
                const StrategySpec spec =
                    StrategySpec::two_threshold(pairs[i].first, pairs[i].second, restriction);
                const backtest::BacktestReport report =
                    backtest::run_backtest(history, funding, spec, tier);
                scores[i] = report.overall.sharpe_defined ? report.overall.sharpe : 0.0;
            }
        });
    }
    for (auto& t : workers) t.join();

    // Value-based argmax: ties go to the smaller u, then the smaller l, so
    // the winner is the same under any permutation of the candidates.
    std::size_t best = 0;
    for (std::size_t i = 1; i < pairs.size(); ++i) {
        if (scores[i] > scores[best] ||
            (scores[i] == scores[best] && pairs[i] < pairs[best]))
            best = i;
    }
    return pairs[best];
}

}  // namespace perp::strategy
