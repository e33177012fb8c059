"""Perpetual-futures no-arbitrage bounds, synthetic markets, and backtests."""

from perpetuals._core import (
    AUTO_HAC_LAG,
    PERIODS_PER_YEAR,
    BacktestReport,
    ConfigError,
    DataError,
    Decomposition,
    DeviationBounds,
    FeeTier,
    FundingSchedule,
    GridSearchConfig,
    MarketSeries,
    PeriodMetrics,
    RegressionResult,
    Restriction,
    StrategySpec,
    SynthConfig,
    SynthResult,
    TheoryParams,
    benchmark_deviation,
    benchmark_price,
    bound_process,
    decompose,
    deviation,
    deviation_bounds,
    deviation_series,
    enumerate_grid,
    generate,
    moving_average,
    ols_hac,
    run_backtest,
    run_two_threshold_adaptive,
    select_thresholds,
)

__all__ = [
    "AUTO_HAC_LAG",
    "PERIODS_PER_YEAR",
    "BacktestReport",
    "ConfigError",
    "DataError",
    "Decomposition",
    "DeviationBounds",
    "FeeTier",
    "FundingSchedule",
    "GridSearchConfig",
    "MarketSeries",
    "PeriodMetrics",
    "RegressionResult",
    "Restriction",
    "StrategySpec",
    "SynthConfig",
    "SynthResult",
    "TheoryParams",
    "benchmark_deviation",
    "benchmark_price",
    "bound_process",
    "decompose",
    "deviation",
    "deviation_bounds",
    "deviation_series",
    "enumerate_grid",
    "generate",
    "moving_average",
    "ols_hac",
    "run_backtest",
    "run_two_threshold_adaptive",
    "select_thresholds",
]

__version__ = "0.1.0"
