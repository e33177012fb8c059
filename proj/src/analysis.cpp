#include "perp/analysis.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "perp/backtest.hpp"
#include "perp/errors.hpp"

namespace perp::analysis {

namespace {

int default_lag(std::size_t n) {
    return static_cast<int>(
        std::floor(4.0 * std::pow(static_cast<double>(n) / 100.0, 2.0 / 9.0)));
}

}  // namespace

RegressionResult ols_hac(const std::vector<double>& y,
                         const std::vector<std::vector<double>>& columns,
                         const std::vector<std::string>& names, int lag) {
    if (columns.empty()) throw std::invalid_argument("ols_hac: no regressors");
    if (names.size() != columns.size())
        throw std::invalid_argument("ols_hac: one name per column required");
    const std::size_t n = y.size();
    const std::size_t k = columns.size() + 1;  // + intercept
    for (const auto& col : columns)
        if (col.size() != n)
            throw std::invalid_argument("ols_hac: column length differs from y");
    if (n <= k) throw std::invalid_argument("ols_hac: need more observations than regressors");

    Eigen::MatrixXd x(n, k);
    Eigen::VectorXd yv(n);
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t c = 0; c < columns.size(); ++c) x(t, c) = columns[c][t];
        x(t, k - 1) = 1.0;
        yv(t) = y[t];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    if (static_cast<std::size_t>(qr.rank()) < k)
        throw DataError("ols_hac: singular design matrix");
    const Eigen::VectorXd beta = qr.solve(yv);
    const Eigen::VectorXd resid = yv - x * beta;

    if (lag < 0) lag = default_lag(n);

    // Newey-West meat: Gamma_0 + sum_j w_j (Gamma_j + Gamma_j'), Bartlett
    // weights w_j = 1 - j/(lag+1). No small-sample correction, so lag 0 is
    // exactly the White (HC0) estimator.
    const Eigen::MatrixXd xtx_inv = (x.transpose() * x).inverse();
    Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(k, k);
    for (int j = 0; j <= lag && static_cast<std::size_t>(j) < n; ++j) {
        Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(k, k);
        for (std::size_t t = j; t < n; ++t)
            gamma += resid(t) * resid(t - j) * x.row(t).transpose() * x.row(t - j);
        if (j == 0)
            meat += gamma;
        else
            meat += (1.0 - static_cast<double>(j) / (lag + 1.0)) *
                    (gamma + gamma.transpose());
    }
    const Eigen::MatrixXd cov = xtx_inv * meat * xtx_inv;

    RegressionResult out;
    out.names.assign(names.begin(), names.end());
    out.names.push_back("const");
    out.n = n;
    out.lag = lag;
    for (std::size_t i = 0; i < k; ++i) {
        out.coefficients.push_back(beta(i));
        const double se = std::sqrt(std::max(cov(i, i), 0.0));
        out.hac_se.push_back(se);
        out.hac_t_stats.push_back(se > 0.0 ? beta(i) / se : 0.0);
    }

    const double mean_y = yv.mean();
    const double ss_tot = (yv.array() - mean_y).square().sum();
    const double ss_res = resid.squaredNorm();
    out.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    out.r_squared = std::min(1.0, std::max(0.0, out.r_squared));
    return out;
}

std::vector<std::vector<double>> correlation_matrix(const AlignedTable& table) {
    const std::size_t k = table.columns.size();
    const std::size_t n = table.timestamps.size();
    if (k < 2) throw std::invalid_argument("correlation_matrix: need at least two columns");
    if (n < 3) throw DataError("correlation_matrix: need at least three aligned rows");

    std::vector<double> mean(k, 0.0), sd(k, 0.0);
    for (std::size_t c = 0; c < k; ++c) {
        for (double v : table.columns[c]) mean[c] += v;
        mean[c] /= static_cast<double>(n);
        for (double v : table.columns[c]) sd[c] += (v - mean[c]) * (v - mean[c]);
        if (!(sd[c] > 0.0))
            throw DataError("correlation_matrix: zero-variance column " + table.names[c]);
        sd[c] = std::sqrt(sd[c]);
    }

    std::vector<std::vector<double>> corr(k, std::vector<double>(k, 1.0));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) {
            double cross = 0.0;
            for (std::size_t t = 0; t < n; ++t)
                cross += (table.columns[a][t] - mean[a]) * (table.columns[b][t] - mean[b]);
            corr[a][b] = corr[b][a] = cross / (sd[a] * sd[b]);
        }
    return corr;
}

TimeSeries past_return_regressor(const MarketSeries& spot, int lookback_months) {
    if (lookback_months < 1)
        throw std::invalid_argument("past_return_regressor: lookback must be >= 1 month");
    const std::int64_t window_sec = static_cast<std::int64_t>(lookback_months) * 30 * 86400;
    const double window_years = static_cast<double>(window_sec) / kSecondsPerYear;

    TimeSeries out;
    out.name = spot.asset_id() + ".past_return";
    for (std::size_t i = 0; i < spot.size(); ++i) {
        const Timestamp ts = spot[i].ts;
        if (ts.sec % 86400 != 0) continue;
        const std::size_t j = spot.index_of(ts - window_sec);
        if (j == MarketSeries::npos) continue;
        const double ret = std::log(spot[i].spot / spot[j].spot) / window_years;
        out.points.emplace_back(ts, ret);
    }
    if (out.points.empty())
        throw DataError("past_return_regressor: history shorter than the lookback window");
    return out;
}

EventStudyResult event_study(const MarketSeries& minute_series,
                             const FundingSchedule& schedule) {
    if (minute_series.cadence_sec() != 60)
        throw std::invalid_argument("event_study: minute cadence required");

    constexpr int w = kEventWindowMinutes;
    constexpr std::size_t n_points = 2 * w + 1;

    EventStudyResult out;
    for (int m = -w; m <= w; ++m) out.minute_offsets.push_back(m);
    out.mean_cum_returns_positive.assign(n_points, 0.0);
    out.mean_cum_returns_negative.assign(n_points, 0.0);

    for (const FundingEvent& ev : schedule.events()) {
        const std::size_t center = minute_series.index_of(ev.ts);
        // Exact endpoint timestamps guarantee every step inside is one
        // minute: any gap would push the right endpoint past +240.
        const bool covered = ev.rate != 0.0 && center != MarketSeries::npos &&
                             center >= static_cast<std::size_t>(w) &&
                             center + w < minute_series.size() &&
                             minute_series[center - w].ts == ev.ts - w * kMinuteSec &&
                             minute_series[center + w].ts == ev.ts + w * kMinuteSec;
        if (!covered) {
            ++out.n_skipped;
            continue;
        }
        const auto side = ev.rate > 0.0
                              ? strategy::PositionSide::short_futures_long_spot
                              : strategy::PositionSide::long_futures_short_spot;
        auto& sums = ev.rate > 0.0 ? out.mean_cum_returns_positive
                                   : out.mean_cum_returns_negative;
        double cum = 0.0;
        for (std::size_t p = 1; p < n_points; ++p) {
            const PriceObs& prev = minute_series[center - w + p - 1];
            const PriceObs& cur = minute_series[center - w + p];
            cum += backtest::leg_return(side, prev.futures, cur.futures, prev.spot, cur.spot);
            sums[p] += cum;
        }
        ++(ev.rate > 0.0 ? out.n_positive : out.n_negative);
    }

    if (out.n_positive + out.n_negative == 0)
        throw DataError("event_study: no funding event with a full window");
    for (std::size_t p = 0; p < n_points; ++p) {
        if (out.n_positive > 0)
            out.mean_cum_returns_positive[p] /= static_cast<double>(out.n_positive);
        if (out.n_negative > 0)
            out.mean_cum_returns_negative[p] /= static_cast<double>(out.n_negative);
    }
    return out;
}

FundingCaptureSummary funding_capture_backtest(const MarketSeries& minute_series,
                                               const FundingSchedule& schedule,
                                               const theory::FeeTier& tier) {
    if (minute_series.cadence_sec() != 60)
        throw std::invalid_argument("funding_capture_backtest: minute cadence required");

    constexpr std::int64_t lead = 5 * kMinuteSec;
    FundingCaptureSummary out;
    double sum = 0.0;
    for (const FundingEvent& ev : schedule.events()) {
        const std::size_t i = minute_series.index_of(ev.ts - lead);
        const std::size_t j = minute_series.index_of(ev.ts + lead);
        if (i == MarketSeries::npos || j == MarketSeries::npos) {
            ++out.n_skipped;
            continue;
        }
        const auto side = ev.rate >= 0.0
                              ? strategy::PositionSide::short_futures_long_spot
                              : strategy::PositionSide::long_futures_short_spot;
        const double price = backtest::leg_return(side, minute_series[i].futures,
                                                  minute_series[j].futures,
                                                  minute_series[i].spot, minute_series[j].spot);
        sum += price + std::fabs(ev.rate) - tier.round_trip_cost();
        ++out.n_events;
    }
    if (out.n_events == 0)
        throw DataError("funding_capture_backtest: no funding event with both legs");
    out.mean_return = sum / static_cast<double>(out.n_events);
    out.annualized_return = out.mean_return * kPeriodsPerYear;
    return out;
}

}  // namespace perp::analysis
