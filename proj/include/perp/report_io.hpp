#pragma once

#include <string>
#include <vector>

#include "perp/analysis.hpp"
#include "perp/backtest.hpp"
#include "perp/marketdata.hpp"
#include "perp/theory.hpp"

namespace perp::report {

// Percentages render with one decimal place everywhere; Sharpe ratios with
// two. Machine outputs (CSV/JSON) keep full precision via shortest
// round-trip formatting. All writers throw DataError when the file cannot
// be opened, and reruns over identical inputs produce byte-identical files.

std::string format_pct(double pct);     // "12.3"
std::string format_sharpe(double sr);   // "1.81"

// "rho_l% rho_u%", e.g. "-168.5% 190.1%".
std::string bounds_line(const theory::DeviationBounds& bounds);

// Aligned text table: one row per calendar year plus an "all" row, columns
// period / active% / return% / vol% / sharpe, then a round-trip tally.
std::string summary_table_text(const backtest::BacktestReport& report);

// Text table of the annualized return split (price / funding / fee / total).
std::string decomposition_table_text(const backtest::Decomposition& d);

// Coefficient column with HAC t-statistics in parentheses underneath, then
// r-squared, observation count and the Bartlett lag.
std::string regression_table_text(const analysis::RegressionResult& result,
                                  const std::string& dependent_name);

// Whole-report JSON (metrics, by-year, decomposition, threshold selections
// when present), keys sorted, two-space indent.
std::string backtest_report_json(
    const backtest::BacktestReport& report, const backtest::Decomposition& d,
    const std::string& asset, const std::string& tier,
    const std::vector<backtest::MonthlySelection>& selections);

void write_text(const std::string& path, const std::string& content);

// CSV writers. Column layouts:
//   hourly returns: timestamp,total,price,funding,fee,active
//   correlation:    name,<name...> (symmetric, unit diagonal)
//   event study:    minute_offset,mean_cum_return_pos,mean_cum_return_neg
//   deviation/MA:   timestamp,rho,rho_ma7d
void write_hourly_returns_csv(const std::string& path,
                              const std::vector<backtest::HourlyReturn>& returns);
void write_correlation_csv(const std::string& path, const std::vector<std::string>& names,
                           const std::vector<std::vector<double>>& matrix);
void write_event_study_csv(const std::string& path, const analysis::EventStudyResult& result);
void write_deviation_ma_csv(const std::string& path, const TimeSeries& rho,
                            const TimeSeries& ma);

}  // namespace perp::report
