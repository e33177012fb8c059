#include "perp/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "perp/csv_io.hpp"
#include "perp/errors.hpp"

namespace perp::report {

namespace {

using nlohmann::json;

std::string printf_str(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

std::ofstream open_or_throw(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    return out;
}

void append_row(std::string& out, const std::string& a, const std::string& b,
                const std::string& c, const std::string& d, const std::string& e) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%-8s %9s %9s %9s %8s\n", a.c_str(), b.c_str(),
                  c.c_str(), d.c_str(), e.c_str());
    out += buf;
}

void metrics_row(std::string& out, const std::string& label,
                 const backtest::PeriodMetrics& m) {
    append_row(out, label, format_pct(m.active_pct), format_pct(m.return_ann),
               format_pct(m.vol_ann), m.sharpe_defined ? format_sharpe(m.sharpe) : "-");
}

json metrics_json(const backtest::PeriodMetrics& m) {
    return json{{"year", m.year},
                {"n_hours", m.n_hours},
                {"n_active", m.n_active},
                {"active_pct", m.active_pct},
                {"return_ann", m.return_ann},
                {"vol_ann", m.vol_ann},
                {"sharpe", m.sharpe},
                {"sharpe_defined", m.sharpe_defined}};
}

}  // namespace

std::string format_pct(double pct) { return printf_str("%.1f", pct); }

std::string format_sharpe(double sr) { return printf_str("%.2f", sr); }

std::string bounds_line(const theory::DeviationBounds& bounds) {
    return format_pct(100.0 * bounds.rho_l) + "% " + format_pct(100.0 * bounds.rho_u) + "%";
}

std::string summary_table_text(const backtest::BacktestReport& report) {
    std::string out;
    append_row(out, "period", "active%", "return%", "vol%", "sharpe");
    for (const backtest::PeriodMetrics& m : report.by_year)
        metrics_row(out, std::to_string(m.year), m);
    metrics_row(out, "all", report.overall);
    out += "round trips: " + std::to_string(report.n_round_trips);
    if (report.forced_close) out += " (position closed at end of data)";
    out += '\n';
    return out;
}

std::string decomposition_table_text(const backtest::Decomposition& d) {
    std::string out;
    char buf[64];
    const auto row = [&](const char* label, double v) {
        std::snprintf(buf, sizeof(buf), "%-8s %9s\n", label, format_pct(v).c_str());
        out += buf;
    };
    std::snprintf(buf, sizeof(buf), "%-8s %9s\n", "source", "ann%");
    out += buf;
    row("price", d.price_ann);
    row("funding", d.funding_ann);
    row("fee", d.fee_ann);
    row("total", d.total_ann);
    return out;
}

std::string regression_table_text(const analysis::RegressionResult& result,
                                  const std::string& dependent_name) {
    std::string out;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%-12s %12s\n", "", dependent_name.c_str());
    out += buf;
    for (std::size_t i = 0; i < result.names.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%-12s %12s\n", result.names[i].c_str(),
                      printf_str("%.4f", result.coefficients[i]).c_str());
        out += buf;
        std::snprintf(buf, sizeof(buf), "%-12s %12s\n", "",
                      ("(" + printf_str("%.2f", result.hac_t_stats[i]) + ")").c_str());
        out += buf;
    }
    std::snprintf(buf, sizeof(buf), "%-12s %12s\n", "R2",
                  printf_str("%.3f", result.r_squared).c_str());
    out += buf;
    std::snprintf(buf, sizeof(buf), "%-12s %12zu\n", "N", result.n);
    out += buf;
    std::snprintf(buf, sizeof(buf), "%-12s %12d\n", "lag", result.lag);
    out += buf;
    return out;
}

std::string backtest_report_json(
    const backtest::BacktestReport& report, const backtest::Decomposition& d,
    const std::string& asset, const std::string& tier,
    const std::vector<backtest::MonthlySelection>& selections) {
    json doc;
    doc["asset"] = asset;
    doc["tier"] = tier;
    doc["overall"] = metrics_json(report.overall);
    doc["by_year"] = json::array();
    for (const backtest::PeriodMetrics& m : report.by_year)
        doc["by_year"].push_back(metrics_json(m));
    doc["decomposition"] = json{{"price_ann", d.price_ann},
                                {"funding_ann", d.funding_ann},
                                {"fee_ann", d.fee_ann},
                                {"total_ann", d.total_ann}};
    doc["forced_close"] = report.forced_close;
    doc["n_round_trips"] = report.n_round_trips;
    if (!selections.empty()) {
        doc["selections"] = json::array();
        for (const backtest::MonthlySelection& s : selections)
            doc["selections"].push_back(
                json{{"year", s.year}, {"month", s.month}, {"u", s.u}, {"l", s.l}});
    }
    return doc.dump(2) + "\n";
}

void write_text(const std::string& path, const std::string& content) {
    auto out = open_or_throw(path);
    out << content;
    if (!out) throw DataError("cannot write " + path);
}

void write_hourly_returns_csv(const std::string& path,
                              const std::vector<backtest::HourlyReturn>& returns) {
    auto out = open_or_throw(path);
    out << "timestamp,total,price,funding,fee,active\n";
    for (const backtest::HourlyReturn& h : returns)
        out << h.ts.to_iso() << ',' << format_double(h.total) << ','
            << format_double(h.price) << ',' << format_double(h.funding) << ','
            << format_double(h.fee) << ',' << (h.active ? '1' : '0') << '\n';
    if (!out) throw DataError("cannot write " + path);
}

void write_correlation_csv(const std::string& path, const std::vector<std::string>& names,
                           const std::vector<std::vector<double>>& matrix) {
    auto out = open_or_throw(path);
    out << "name";
    for (const std::string& n : names) out << ',' << n;
    out << '\n';
    for (std::size_t i = 0; i < names.size(); ++i) {
        out << names[i];
        for (std::size_t j = 0; j < names.size(); ++j)
            out << ',' << format_double(matrix[i][j]);
        out << '\n';
    }
    if (!out) throw DataError("cannot write " + path);
}

void write_event_study_csv(const std::string& path,
                           const analysis::EventStudyResult& result) {
    auto out = open_or_throw(path);
    out << "minute_offset,mean_cum_return_pos,mean_cum_return_neg\n";
    for (std::size_t i = 0; i < result.minute_offsets.size(); ++i)
        out << result.minute_offsets[i] << ','
            << format_double(result.mean_cum_returns_positive[i]) << ','
            << format_double(result.mean_cum_returns_negative[i]) << '\n';
    if (!out) throw DataError("cannot write " + path);
}

void write_deviation_ma_csv(const std::string& path, const TimeSeries& rho,
                            const TimeSeries& ma) {
    if (rho.points.size() != ma.points.size())
        throw std::invalid_argument("deviation/MA series must align");
    auto out = open_or_throw(path);
    out << "timestamp,rho,rho_ma7d\n";
    for (std::size_t i = 0; i < rho.points.size(); ++i) {
        if (rho.points[i].first != ma.points[i].first)
            throw std::invalid_argument("deviation/MA series must align");
        out << rho.points[i].first.to_iso() << ',' << format_double(rho.points[i].second)
            << ',' << format_double(ma.points[i].second) << '\n';
    }
    if (!out) throw DataError("cannot write " + path);
}

}  // namespace perp::report
