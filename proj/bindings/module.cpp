// Python bindings for the core library: theory values, synthetic market
// generation, backtesting, threshold selection, and the HAC regression.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "perp/analysis.hpp"
#include "perp/backtest.hpp"
#include "perp/errors.hpp"
#include "perp/marketdata.hpp"
#include "perp/strategy.hpp"
#include "perp/synth.hpp"
#include "perp/theory.hpp"

namespace py = pybind11;
using namespace perp;

namespace {

MarketSeries make_series(std::string asset_id, std::int64_t cadence_sec,
                         const std::vector<std::int64_t>& timestamps,
                         const std::vector<double>& futures,
                         const std::vector<double>& spot) {
    if (timestamps.size() != futures.size() || timestamps.size() != spot.size())
        throw std::invalid_argument("make_series: column lengths differ");
    std::vector<PriceObs> obs(timestamps.size());
    for (std::size_t i = 0; i < obs.size(); ++i)
        obs[i] = {Timestamp{timestamps[i]}, futures[i], spot[i]};
    return MarketSeries::create(std::move(asset_id), cadence_sec, std::move(obs));
}

FundingSchedule make_funding(std::string asset_id,
                             const std::vector<std::int64_t>& timestamps,
                             const std::vector<double>& rates) {
    if (timestamps.size() != rates.size())
        throw std::invalid_argument("make_funding: column lengths differ");
    std::vector<FundingEvent> events(timestamps.size());
    for (std::size_t i = 0; i < events.size(); ++i)
        events[i] = {Timestamp{timestamps[i]}, rates[i]};
    return FundingSchedule::create(std::move(asset_id), std::move(events));
}

std::vector<std::pair<std::int64_t, double>> to_points(const TimeSeries& series) {
    std::vector<std::pair<std::int64_t, double>> out;
    out.reserve(series.points.size());
    for (const auto& [ts, value] : series.points) out.emplace_back(ts.sec, value);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Perpetual-futures no-arbitrage bounds, synthetic markets, and backtests";

    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    // ---- theory ------------------------------------------------------------
    py::class_<theory::TheoryParams>(m, "TheoryParams")
        .def(py::init([](double r, double kappa) {
                 theory::TheoryParams p{r, kappa};
                 p.validate();
                 return p;
             }),
             py::arg("r") = 0.1095, py::arg("kappa") = kPeriodsPerYear)
        .def_readonly("r", &theory::TheoryParams::r)
        .def_readonly("kappa", &theory::TheoryParams::kappa);

    py::class_<theory::FeeTier>(m, "FeeTier")
        .def(py::init([](std::string name, double spot_fee, double futures_fee) {
                 return theory::FeeTier{std::move(name), spot_fee, futures_fee};
             }),
             py::arg("name"), py::arg("spot_fee"), py::arg("futures_fee"))
        .def_static("standard", &theory::FeeTier::standard, py::arg("name"))
        .def_readonly("name", &theory::FeeTier::name)
        .def_readonly("spot_fee", &theory::FeeTier::spot_fee)
        .def_readonly("futures_fee", &theory::FeeTier::futures_fee)
        .def("round_trip_cost", &theory::FeeTier::round_trip_cost);

    py::class_<theory::DeviationBounds>(m, "DeviationBounds")
        .def_readonly("rho_l", &theory::DeviationBounds::rho_l)
        .def_readonly("rho_u", &theory::DeviationBounds::rho_u)
        .def("inside", &theory::DeviationBounds::inside, py::arg("rho"));

    m.def("deviation", &deviation, py::arg("futures_price"), py::arg("spot_price"),
          "Annualized log deviation 1095 * (ln F - ln S), as a fraction");
    m.def("benchmark_price", &theory::benchmark_price, py::arg("spot"),
          py::arg("params") = theory::TheoryParams{});
    m.def("benchmark_deviation", &theory::benchmark_deviation,
          py::arg("params") = theory::TheoryParams{});
    m.def("deviation_bounds", &theory::deviation_bounds,
          py::arg("params"), py::arg("tier"));
    m.def("bound_process", &theory::bound_process, py::arg("t_years"), py::arg("f0"),
          py::arg("s0"), py::arg("params") = theory::TheoryParams{});

    // ---- market data -------------------------------------------------------
    py::class_<MarketSeries>(m, "MarketSeries")
        .def_static("create", &make_series, py::arg("asset_id"), py::arg("cadence_sec"),
                    py::arg("timestamps"), py::arg("futures"), py::arg("spot"))
        .def_property_readonly("asset_id", &MarketSeries::asset_id)
        .def_property_readonly("cadence_sec", &MarketSeries::cadence_sec)
        .def_property_readonly("has_gaps", &MarketSeries::has_gaps)
        .def("__len__", &MarketSeries::size)
        .def("timestamps",
             [](const MarketSeries& s) {
                 std::vector<std::int64_t> out;
                 out.reserve(s.size());
                 for (const PriceObs& o : s.observations()) out.push_back(o.ts.sec);
                 return out;
             })
        .def("futures",
             [](const MarketSeries& s) {
                 std::vector<double> out;
                 out.reserve(s.size());
                 for (const PriceObs& o : s.observations()) out.push_back(o.futures);
                 return out;
             })
        .def("spot", [](const MarketSeries& s) {
            std::vector<double> out;
            out.reserve(s.size());
            for (const PriceObs& o : s.observations()) out.push_back(o.spot);
            return out;
        });

    py::class_<FundingSchedule>(m, "FundingSchedule")
        .def_static("create", &make_funding, py::arg("asset_id"), py::arg("timestamps"),
                    py::arg("rates"))
        .def_property_readonly("asset_id", &FundingSchedule::asset_id)
        .def("__len__", &FundingSchedule::size)
        .def("events", [](const FundingSchedule& s) {
            std::vector<std::pair<std::int64_t, double>> out;
            out.reserve(s.size());
            for (const FundingEvent& e : s.events()) out.emplace_back(e.ts.sec, e.rate);
            return out;
        });

    m.def(
        "deviation_series",
        [](const MarketSeries& series) { return to_points(deviation_series(series)); },
        py::arg("series"), "Per-observation deviation as (epoch_seconds, value) pairs");
    m.def(
        "moving_average",
        [](const std::vector<std::pair<std::int64_t, double>>& points,
           std::int64_t window_sec) {
            TimeSeries input{"input", {}};
            input.points.reserve(points.size());
            for (const auto& [sec, value] : points)
                input.points.emplace_back(Timestamp{sec}, value);
            return to_points(moving_average(input, window_sec));
        },
        py::arg("points"), py::arg("window_sec"),
        "Trailing moving average over (t - window, t]");

    // ---- synthetic market --------------------------------------------------
    py::class_<synth::SynthConfig>(m, "SynthConfig")
        .def(py::init<>())
        .def_readwrite("seed", &synth::SynthConfig::seed)
        .def_readwrite("n_hours", &synth::SynthConfig::n_hours)
        .def_property(
            "start_sec", [](const synth::SynthConfig& c) { return c.start.sec; },
            [](synth::SynthConfig& c, std::int64_t sec) { c.start = Timestamp{sec}; })
        .def_readwrite("asset_id", &synth::SynthConfig::asset_id)
        .def_readwrite("spot_init", &synth::SynthConfig::spot_init)
        .def_readwrite("spot_drift", &synth::SynthConfig::spot_drift)
        .def_readwrite("spot_vol", &synth::SynthConfig::spot_vol)
        .def_readwrite("gap_init", &synth::SynthConfig::gap_init)
        .def_readwrite("gap_mean", &synth::SynthConfig::gap_mean)
        .def_readwrite("gap_reversion", &synth::SynthConfig::gap_reversion)
        .def_readwrite("gap_vol", &synth::SynthConfig::gap_vol)
        .def_readwrite("gap_bound", &synth::SynthConfig::gap_bound);

    py::class_<synth::SynthResult>(m, "SynthResult")
        .def_readonly("prices", &synth::SynthResult::prices)
        .def_readonly("funding", &synth::SynthResult::funding);

    m.def("generate", &synth::generate, py::arg("config"),
          "Deterministic synthetic hourly market for a config");

    // ---- strategy & backtest -------------------------------------------------
    py::enum_<strategy::Restriction>(m, "Restriction")
        .value("unrestricted", strategy::Restriction::unrestricted)
        .value("long_spot_only", strategy::Restriction::long_spot_only);

    py::class_<strategy::StrategySpec>(m, "StrategySpec")
        .def_static("two_threshold", &strategy::StrategySpec::two_threshold, py::arg("u"),
                    py::arg("l"), py::arg("restriction") = strategy::Restriction::unrestricted)
        .def_static("random_maturity", &strategy::StrategySpec::random_maturity,
                    py::arg("bounds"), py::arg("close_target"),
                    py::arg("restriction") = strategy::Restriction::unrestricted)
        .def_readonly("open_upper", &strategy::StrategySpec::open_upper)
        .def_readonly("open_lower", &strategy::StrategySpec::open_lower)
        .def_readonly("close_level", &strategy::StrategySpec::close_level);

    py::class_<strategy::GridSearchConfig>(m, "GridSearchConfig")
        .def(py::init<>())
        .def_readwrite("grid_min", &strategy::GridSearchConfig::grid_min)
        .def_readwrite("grid_max", &strategy::GridSearchConfig::grid_max)
        .def_readwrite("grid_step", &strategy::GridSearchConfig::grid_step)
        .def_readwrite("lookback_months", &strategy::GridSearchConfig::lookback_months);

    m.def("enumerate_grid", &strategy::enumerate_grid, py::arg("config"));
    m.def("select_thresholds", &strategy::select_thresholds, py::arg("history"),
          py::arg("funding"), py::arg("config"), py::arg("tier"),
          py::arg("restriction") = strategy::Restriction::unrestricted,
          py::call_guard<py::gil_scoped_release>(),
          "Best (u, l) by adjusted Sharpe over the grid");

    py::class_<backtest::PeriodMetrics>(m, "PeriodMetrics")
        .def_readonly("year", &backtest::PeriodMetrics::year)
        .def_readonly("n_hours", &backtest::PeriodMetrics::n_hours)
        .def_readonly("n_active", &backtest::PeriodMetrics::n_active)
        .def_readonly("active_pct", &backtest::PeriodMetrics::active_pct)
        .def_readonly("return_ann", &backtest::PeriodMetrics::return_ann)
        .def_readonly("vol_ann", &backtest::PeriodMetrics::vol_ann)
        .def_readonly("sharpe", &backtest::PeriodMetrics::sharpe)
        .def_readonly("sharpe_defined", &backtest::PeriodMetrics::sharpe_defined);

    py::class_<backtest::Decomposition>(m, "Decomposition")
        .def_readonly("price_ann", &backtest::Decomposition::price_ann)
        .def_readonly("funding_ann", &backtest::Decomposition::funding_ann)
        .def_readonly("fee_ann", &backtest::Decomposition::fee_ann)
        .def_readonly("total_ann", &backtest::Decomposition::total_ann);

    py::class_<backtest::BacktestReport>(m, "BacktestReport")
        .def_readonly("overall", &backtest::BacktestReport::overall)
        .def_readonly("by_year", &backtest::BacktestReport::by_year)
        .def_readonly("forced_close", &backtest::BacktestReport::forced_close)
        .def_readonly("n_round_trips", &backtest::BacktestReport::n_round_trips)
        .def("hourly_totals", [](const backtest::BacktestReport& r) {
            std::vector<std::pair<std::int64_t, double>> out;
            out.reserve(r.returns.size());
            for (const backtest::HourlyReturn& h : r.returns)
                out.emplace_back(h.ts.sec, h.total);
            return out;
        });

    m.def("run_backtest", &backtest::run_backtest, py::arg("series"), py::arg("funding"),
          py::arg("spec"), py::arg("tier"), py::call_guard<py::gil_scoped_release>());
    m.def("run_two_threshold_adaptive",
          [](const MarketSeries& series, const FundingSchedule& funding,
             const strategy::GridSearchConfig& config, const theory::FeeTier& tier,
             strategy::Restriction restriction) {
              py::gil_scoped_release release;
              return backtest::run_two_threshold_adaptive(series, funding, config, tier,
                                                          restriction);
          },
          py::arg("series"), py::arg("funding"), py::arg("config"), py::arg("tier"),
          py::arg("restriction") = strategy::Restriction::unrestricted);
    m.def("decompose", &backtest::decompose, py::arg("report"));

    // ---- analysis ------------------------------------------------------------
    py::class_<analysis::RegressionResult>(m, "RegressionResult")
        .def_readonly("names", &analysis::RegressionResult::names)
        .def_readonly("coefficients", &analysis::RegressionResult::coefficients)
        .def_readonly("hac_se", &analysis::RegressionResult::hac_se)
        .def_readonly("hac_t_stats", &analysis::RegressionResult::hac_t_stats)
        .def_readonly("r_squared", &analysis::RegressionResult::r_squared)
        .def_readonly("n", &analysis::RegressionResult::n)
        .def_readonly("lag", &analysis::RegressionResult::lag);

    m.def("ols_hac", &analysis::ols_hac, py::arg("y"), py::arg("columns"),
          py::arg("names"), py::arg("lag") = analysis::kAutoHacLag,
          "OLS with Newey-West standard errors; lag < 0 selects automatically");

    m.attr("PERIODS_PER_YEAR") = kPeriodsPerYear;
    m.attr("AUTO_HAC_LAG") = analysis::kAutoHacLag;
}
