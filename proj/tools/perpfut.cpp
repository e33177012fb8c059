// perpfut: command-line front end for the perpetual-futures toolkit.
// Subcommands: bounds, synth, backtest, analyze, event-study, grid-search.
// Exit codes: 0 success, 1 bad flags/config, 2 bad or insufficient data.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <unordered_map>

#include <CLI11.hpp>

#include "perp/analysis.hpp"
#include "perp/backtest.hpp"
#include "perp/csv_io.hpp"
#include "perp/errors.hpp"
#include "perp/report_io.hpp"
#include "perp/run_config.hpp"
#include "perp/synth.hpp"
#include "perp/theory.hpp"

namespace {

using namespace perp;

theory::FeeTier tier_from(const std::string& name, double spot_fee, double futures_fee) {
    if (spot_fee >= 0.0 || futures_fee >= 0.0) {
        if (spot_fee < 0.0 || futures_fee < 0.0)
            throw ConfigError("custom tiers need both --spot-fee and --futures-fee");
        return theory::FeeTier{"custom", spot_fee, futures_fee};
    }
    return theory::FeeTier::standard(name);
}

strategy::Restriction restriction_from(const std::string& name) {
    if (name == "unrestricted") return strategy::Restriction::unrestricted;
    if (name == "long_spot_only") return strategy::Restriction::long_spot_only;
    throw ConfigError("unknown restriction '" + name + "'");
}

void ensure_output_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output dir " + dir + ": " + ec.message());
}

std::string out_path(const std::string& dir, const std::string& file) {
    return (std::filesystem::path(dir) / file).string();
}

// ---- bounds ----------------------------------------------------------

struct BoundsArgs {
    std::string tier = "none";
    double r = 0.1095;
    double kappa = kPeriodsPerYear;
    double spot_fee = -1.0;
    double futures_fee = -1.0;
};

void run_bounds(const BoundsArgs& a) {
    theory::TheoryParams params{a.r, a.kappa};
    params.validate();
    const theory::FeeTier tier = tier_from(a.tier, a.spot_fee, a.futures_fee);
    std::cout << report::bounds_line(theory::deviation_bounds(params, tier)) << '\n';
}

// ---- synth -----------------------------------------------------------

struct SynthArgs {
    synth::SynthConfig config;
    std::string start = "2020-01-01T00:00:00Z";
    std::string prices_out;
    std::string funding_out;
};

void run_synth(const SynthArgs& a) {
    synth::SynthConfig config = a.config;
    config.start = Timestamp::parse(a.start);
    config.validate();
    const synth::SynthResult result = synth::generate(config);
    emit_prices(a.prices_out, result.prices);
    emit_funding(a.funding_out, result.funding);
    std::cout << "wrote " << result.prices.size() << " hours to " << a.prices_out
              << " and " << result.funding.size() << " funding events to "
              << a.funding_out << '\n';
}

// ---- backtest --------------------------------------------------------

void run_backtest_cmd(const std::string& config_path) {
    const RunConfig cfg = RunConfig::load(config_path);
    cfg.validate();
    ensure_output_dir(cfg.output_dir);
    const theory::FeeTier tier = theory::FeeTier::standard(cfg.tier);

    std::string combined;
    for (const AssetConfig& asset : cfg.assets) {
        const MarketSeries series = ingest_prices(asset.prices_path, asset.symbol, kHourSec);
        const FundingSchedule funding = ingest_funding(asset.funding_path, asset.symbol);

        backtest::BacktestReport report;
        std::vector<backtest::MonthlySelection> selections;
        if (cfg.kind == RunStrategyKind::adaptive)
            report = backtest::run_two_threshold_adaptive(series, funding, cfg.grid, tier,
                                                          cfg.restriction, &selections);
        else
            report = backtest::run_backtest(series, funding, cfg.fixed_spec(), tier);
        const backtest::Decomposition decomp = backtest::decompose(report);

        const std::string summary = report::summary_table_text(report);
        report::write_text(out_path(cfg.output_dir, asset.symbol + "_report.json"),
                           report::backtest_report_json(report, decomp, asset.symbol,
                                                        cfg.tier, selections));
        report::write_text(out_path(cfg.output_dir, asset.symbol + "_summary.txt"),
                           summary + "\n" + report::decomposition_table_text(decomp));
        report::write_hourly_returns_csv(
            out_path(cfg.output_dir, asset.symbol + "_hourly.csv"), report.returns);

        combined += asset.symbol + " (" + cfg.tier + " tier)\n" + summary + "\n";
    }
    report::write_text(out_path(cfg.output_dir, "summary.txt"), combined);
    std::cout << combined;
}

// ---- analyze ---------------------------------------------------------

// Daily (00:00 UTC) inner join of the dependent deviation samples with the
// regressor series, dropping days any column lacks.
void daily_regression_rows(const TimeSeries& rho_daily,
                           const std::vector<const TimeSeries*>& regressors,
                           std::vector<double>& y, std::vector<std::vector<double>>& x) {
    std::vector<std::unordered_map<std::int64_t, double>> maps;
    for (const TimeSeries* reg : regressors) {
        maps.emplace_back();
        for (const auto& [ts, value] : reg->points) maps.back()[ts.sec] = value;
    }
    x.assign(regressors.size(), {});
    for (const auto& [ts, value] : rho_daily.points) {
        bool covered = true;
        for (const auto& m : maps)
            if (!m.count(ts.sec)) {
                covered = false;
                break;
            }
        if (!covered) continue;
        y.push_back(value);
        for (std::size_t c = 0; c < maps.size(); ++c) x[c].push_back(maps[c].at(ts.sec));
    }
}

void run_analyze(const std::string& config_path) {
    const RunConfig cfg = RunConfig::load(config_path);
    cfg.validate();
    ensure_output_dir(cfg.output_dir);

    TimeSeries exog;
    if (!cfg.exogenous_path.empty())
        exog = ingest_exogenous(cfg.exogenous_path,
                                std::filesystem::path(cfg.exogenous_path).stem().string());

    std::vector<TimeSeries> deviations;
    for (const AssetConfig& asset : cfg.assets) {
        const MarketSeries series = ingest_prices(asset.prices_path, asset.symbol, kHourSec);

        const TimeSeries rho = deviation_series(series);
        const TimeSeries ma = moving_average(rho, 7 * 86400);
        report::write_deviation_ma_csv(
            out_path(cfg.output_dir, asset.symbol + "_deviation.csv"), rho, ma);
        deviations.push_back(rho);

        // Regression of the daily deviation on trailing spot returns (plus
        // the optional exogenous column).
        TimeSeries rho_daily{asset.symbol + ".rho", {}};
        for (const auto& [ts, value] : rho.points)
            if (ts.sec % 86400 == 0) rho_daily.points.emplace_back(ts, value);
        try {
            const TimeSeries past = analysis::past_return_regressor(series,
                                                                    cfg.past_return_months);
            std::vector<const TimeSeries*> regressors{&past};
            std::vector<std::string> names{"Ret"};
            if (!exog.points.empty()) {
                regressors.push_back(&exog);
                names.push_back(exog.name);
            }
            std::vector<double> y;
            std::vector<std::vector<double>> x;
            daily_regression_rows(rho_daily, regressors, y, x);
            const analysis::RegressionResult reg =
                analysis::ols_hac(y, x, names, cfg.hac_lag);
            report::write_text(out_path(cfg.output_dir, asset.symbol + "_regression.txt"),
                               report::regression_table_text(reg, "rho"));
        } catch (const std::exception& e) {
            std::cerr << "warning: " << asset.symbol << ": regression skipped: " << e.what()
                      << '\n';
        }
    }

    if (deviations.size() >= 2) {
        try {
            const AlignedTable table = align(deviations);
            report::write_correlation_csv(out_path(cfg.output_dir, "correlation.csv"),
                                          table.names, analysis::correlation_matrix(table));
        } catch (const std::exception& e) {
            std::cerr << "warning: correlation skipped: " << e.what() << '\n';
        }
    } else {
        std::cerr << "warning: correlation skipped: needs at least two assets\n";
    }
    std::cout << "analysis written to " << cfg.output_dir << '\n';
}

// ---- event-study -----------------------------------------------------

struct EventStudyArgs {
    std::string prices;
    std::string funding;
    std::string asset = "ASSET";
    std::string tier = "none";
    std::string out;
};

void run_event_study(const EventStudyArgs& a) {
    const MarketSeries series = ingest_prices(a.prices, a.asset, kMinuteSec);
    const FundingSchedule schedule = ingest_funding(a.funding, a.asset);
    const theory::FeeTier tier = theory::FeeTier::standard(a.tier);

    const analysis::EventStudyResult study = analysis::event_study(series, schedule);
    report::write_event_study_csv(a.out, study);

    const analysis::FundingCaptureSummary capture =
        analysis::funding_capture_backtest(series, schedule, tier);
    char line[256];
    std::snprintf(line, sizeof(line),
                  "events: %zu positive, %zu negative, %zu skipped\n"
                  "capture: %zu events, mean %.2f bps/event, annualized %s%%\n",
                  study.n_positive, study.n_negative, study.n_skipped, capture.n_events,
                  1e4 * capture.mean_return,
                  report::format_pct(100.0 * capture.annualized_return).c_str());
    std::cout << line << "curves written to " << a.out << '\n';
}

// ---- grid-search -----------------------------------------------------

struct GridArgs {
    std::string prices;
    std::string funding;
    std::string asset = "ASSET";
    std::string tier = "none";
    std::string restriction = "unrestricted";
    strategy::GridSearchConfig grid;
};

void run_grid_search(const GridArgs& a) {
    const MarketSeries series = ingest_prices(a.prices, a.asset, kHourSec);
    const FundingSchedule funding = ingest_funding(a.funding, a.asset);
    const auto [u, l] =
        strategy::select_thresholds(series, funding, a.grid,
                                    theory::FeeTier::standard(a.tier),
                                    restriction_from(a.restriction));
    std::cout << "u=" << report::format_pct(100.0 * u)
              << "% l=" << report::format_pct(100.0 * l) << "%\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"perpetual futures toolkit"};
    app.require_subcommand(1);

    BoundsArgs bounds;
    CLI::App* cmd_bounds = app.add_subcommand("bounds", "no-arbitrage deviation band");
    cmd_bounds->add_option("--tier", bounds.tier, "fee tier: none, low, medium, high");
    cmd_bounds->add_option("--r", bounds.r, "annualized interest rate");
    cmd_bounds->add_option("--kappa", bounds.kappa, "funding periods per year");
    cmd_bounds->add_option("--spot-fee", bounds.spot_fee, "custom per-leg spot fee");
    cmd_bounds->add_option("--futures-fee", bounds.futures_fee, "custom per-leg futures fee");

    SynthArgs synth_args;
    CLI::App* cmd_synth = app.add_subcommand("synth", "generate a synthetic market");
    cmd_synth->add_option("--seed", synth_args.config.seed, "random seed");
    cmd_synth->add_option("--hours", synth_args.config.n_hours, "number of hourly steps");
    cmd_synth->add_option("--start", synth_args.start, "first timestamp (ISO or epoch)");
    cmd_synth->add_option("--asset", synth_args.config.asset_id, "asset symbol");
    cmd_synth->add_option("--spot-init", synth_args.config.spot_init, "initial spot");
    cmd_synth->add_option("--drift", synth_args.config.spot_drift, "annualized spot drift");
    cmd_synth->add_option("--vol", synth_args.config.spot_vol, "annualized spot vol");
    cmd_synth->add_option("--gap-init", synth_args.config.gap_init, "initial deviation");
    cmd_synth->add_option("--gap-mean", synth_args.config.gap_mean, "long-run deviation");
    cmd_synth->add_option("--gap-reversion", synth_args.config.gap_reversion,
                          "mean-reversion speed per year");
    cmd_synth->add_option("--gap-vol", synth_args.config.gap_vol, "deviation vol");
    cmd_synth->add_option("--gap-bound", synth_args.config.gap_bound,
                          "reflecting bound on |deviation|");
    cmd_synth->add_option("--prices-out", synth_args.prices_out, "prices CSV path")
        ->required();
    cmd_synth->add_option("--funding-out", synth_args.funding_out, "funding CSV path")
        ->required();

    std::string backtest_config;
    CLI::App* cmd_backtest = app.add_subcommand("backtest", "run configured backtests");
    cmd_backtest->add_option("config", backtest_config, "run configuration file")
        ->required();

    std::string analyze_config;
    CLI::App* cmd_analyze = app.add_subcommand("analyze", "deviation/correlation/regression");
    cmd_analyze->add_option("config", analyze_config, "run configuration file")->required();

    EventStudyArgs es;
    CLI::App* cmd_event = app.add_subcommand("event-study",
                                             "minute curves around funding events");
    cmd_event->add_option("--prices", es.prices, "minute prices CSV")->required();
    cmd_event->add_option("--funding", es.funding, "funding CSV")->required();
    cmd_event->add_option("--asset", es.asset, "asset symbol");
    cmd_event->add_option("--tier", es.tier, "fee tier for the capture run");
    cmd_event->add_option("--out", es.out, "output curve CSV")->required();

    GridArgs grid;
    CLI::App* cmd_grid = app.add_subcommand("grid-search", "two-threshold selection");
    cmd_grid->add_option("--prices", grid.prices, "hourly prices CSV")->required();
    cmd_grid->add_option("--funding", grid.funding, "funding CSV")->required();
    cmd_grid->add_option("--asset", grid.asset, "asset symbol");
    cmd_grid->add_option("--tier", grid.tier, "fee tier");
    cmd_grid->add_option("--restriction", grid.restriction,
                         "unrestricted or long_spot_only");
    cmd_grid->add_option("--min", grid.grid.grid_min, "grid lower edge");
    cmd_grid->add_option("--max", grid.grid.grid_max, "grid upper edge");
    cmd_grid->add_option("--step", grid.grid.grid_step, "grid step");
    cmd_grid->add_option("--lookback", grid.grid.lookback_months, "lookback months");

    try {
        app.parse(argc, argv);
        if (cmd_bounds->parsed()) run_bounds(bounds);
        if (cmd_synth->parsed()) run_synth(synth_args);
        if (cmd_backtest->parsed()) run_backtest_cmd(backtest_config);
        if (cmd_analyze->parsed()) run_analyze(analyze_config);
        if (cmd_event->parsed()) run_event_study(es);
        if (cmd_grid->parsed()) run_grid_search(grid);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
