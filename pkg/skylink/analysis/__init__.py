"""Post-processing of simulation logs: conflicts, density maps and the metric suite."""

from .conflicts import ConflictEvent, ConflictReport, conflict_ratio, detect_conflicts, positions_to_frame
from .density import (
    DENSITY_MODES,
    DensityMap,
    DistributionMap,
    density_map,
    distribution_at,
    max_density_map,
    peak_distribution,
    window_count,
)
from .metrics import (
    CHANNEL_USAGE_FILE,
    CORE_METRICS_COLUMNS,
    METRICS_COLUMNS,
    METRICS_FILE,
    MetricsReport,
    airborne_series,
    channel_usage,
    flight_times,
    metrics_table,
    summarize_metrics,
    warmup_ratio,
    write_metrics,
)

__all__ = [
    "CHANNEL_USAGE_FILE",
    "ConflictEvent",
    "ConflictReport",
    "DENSITY_MODES",
    "DensityMap",
    "DistributionMap",
    "CORE_METRICS_COLUMNS",
    "METRICS_COLUMNS",
    "METRICS_FILE",
    "MetricsReport",
    "airborne_series",
    "channel_usage",
    "conflict_ratio",
    "density_map",
    "detect_conflicts",
    "distribution_at",
    "flight_times",
    "max_density_map",
    "metrics_table",
    "peak_distribution",
    "positions_to_frame",
    "summarize_metrics",
    "warmup_ratio",
    "window_count",
    "write_metrics",
]
