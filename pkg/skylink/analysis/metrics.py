"""
metrics.py 📊
--------------
Run-level metric suite: throughput, flight time, conflict ratio, link-rate
statistics and cancellations, plus channel usage and airborne counts.
"""

import logging
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict

from ..comms.links import LinkClass, LinkSample
from ..engine.log import KIND_CANCEL, KIND_LAND, KIND_LAUNCH, FLOAT_FORMAT, LogFrames, SimulationLog
from ..scenario.models import BaseStationConfig
from .conflicts import conflict_ratio, detect_conflicts

logger = logging.getLogger(__name__)

METRICS_FILE = "metrics.csv"
CHANNEL_USAGE_FILE = "channel_usage.csv"

# the six core figures, in their fixed order
CORE_METRICS_COLUMNS = [
    "throughput",
    "avg_flight_time_s",
    "conflict_ratio",
    "no_link_rate",
    "poor_link_rate",
    "cancellations",
]
METRICS_COLUMNS = ["seed", *CORE_METRICS_COLUMNS, "good_link_rate"]
CHANNEL_USAGE_COLUMNS = ["station", "channels", "peak_in_use", "mean_in_use", "congested_samples"]
MEAN_ROW_LABEL = "mean"


class MetricsReport(BaseModel):
    """Rates are None when their denominator is empty."""
    model_config = ConfigDict(frozen=True)

    throughput: int
    avg_flight_time_s: Optional[float] = None
    conflict_ratio: Optional[float] = None
    no_link_rate: Optional[float] = None
    poor_link_rate: Optional[float] = None
    cancellations: int = 0
    good_link_rate: Optional[float] = None

    def row(self, seed: Union[int, str]) -> dict:
        return {"seed": seed, **self.model_dump()}


def _frames(log: Union[SimulationLog, LogFrames]) -> LogFrames:
    return log.to_frames() if isinstance(log, SimulationLog) else log


def flight_times(frames: LogFrames) -> pd.Series:
    """land_step - launch_step per landed agent, in steps, indexed by agent."""
    launches = frames.events_of(KIND_LAUNCH).set_index("agent")["step"]
    landings = frames.events_of(KIND_LAND).set_index("agent")["step"]
    return (landings - launches.reindex(landings.index)).dropna().astype("int64")


def _rate(count: int, total: int) -> Optional[float]:
    return count / total if total else None


def summarize_metrics(log: Union[SimulationLog, LogFrames]) -> MetricsReport:
    frames = _frames(log)
    throughput = len(frames.events_of(KIND_LAUNCH))
    cancellations = len(frames.events_of(KIND_CANCEL))

    durations = flight_times(frames)
    avg_flight = float(durations.mean()) * frames.step_seconds if len(durations) else None

    conflicts = detect_conflicts(frames.positions)

    classes = frames.links["class"].value_counts()
    total = int(classes.sum())

    return MetricsReport(
        throughput=throughput,
        avg_flight_time_s=avg_flight,
        conflict_ratio=conflict_ratio(conflicts.flagged, throughput),
        no_link_rate=_rate(int(classes.get(LinkClass.NO_LINK.value, 0)), total),
        poor_link_rate=_rate(int(classes.get(LinkClass.POOR.value, 0)), total),
        cancellations=cancellations,
        good_link_rate=_rate(int(classes.get(LinkClass.GOOD.value, 0)), total),
    )


def metrics_table(results: Sequence[Tuple[int, MetricsReport]]) -> pd.DataFrame:
    """One row per seed in the given order, followed by the column-wise mean (absent values skipped)."""
    rows = [report.row(seed) for seed, report in results]
    if rows:
        frame = pd.DataFrame(rows, columns=METRICS_COLUMNS)
        mean = frame.drop(columns="seed").astype("float64").mean(skipna=True)
        rows.append({"seed": MEAN_ROW_LABEL, **{k: (None if pd.isna(v) else float(v)) for k, v in mean.items()}})
    return pd.DataFrame(rows, columns=METRICS_COLUMNS, dtype=object)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return FLOAT_FORMAT % value
    return str(value)


def write_metrics(results: Sequence[Tuple[int, MetricsReport]], path: Union[str, Path]) -> Path:
    path = Path(path)
    table = metrics_table(results).map(_cell)
    table.to_csv(path, index=False, lineterminator="\n")
    logger.info(f"Wrote {path}")
    return path


# -------- channels and traffic level --------

def channel_usage(
    samples: Sequence[LinkSample],
    stations: Sequence[BaseStationConfig],
    sim_steps: int,
) -> pd.DataFrame:
    """
    Per-station peak and mean channels in use per step. A trailing row with
    station -1 describes unassigned samples: their peak and mean per step
    and how many of them were denied by a full station.
    """
    steps = max(sim_steps, 1)
    in_use = np.zeros((len(stations) + 1, steps), dtype=np.int64)
    congested = 0
    for sample in samples:
        row = len(stations) if sample.station is None else sample.station
        in_use[row, sample.step] += 1
        congested += sample.congested

    rows: List[dict] = [
        {
            "station": index,
            "channels": station.channels,
            "peak_in_use": int(in_use[index].max()),
            "mean_in_use": float(in_use[index].mean()),
            "congested_samples": 0,
        }
        for index, station in enumerate(stations)
    ]
    rows.append({
        "station": -1,
        "channels": 0,
        "peak_in_use": int(in_use[-1].max()),
        "mean_in_use": float(in_use[-1].mean()),
        "congested_samples": int(congested),
    })
    return pd.DataFrame(rows, columns=CHANNEL_USAGE_COLUMNS)


def airborne_series(positions: pd.DataFrame, sim_steps: int) -> np.ndarray:
    """Agents present at each step."""
    steps = positions["step"].to_numpy(dtype=np.int64)
    return np.bincount(steps, minlength=sim_steps)[:sim_steps]


def warmup_ratio(series: np.ndarray, early: int, late: int) -> Optional[float]:
    """Mean of the first `early` steps over mean of the last `late` steps."""
    if early < 1 or late < 1 or len(series) == 0:
        return None
    tail = float(np.mean(series[-late:]))
    if tail == 0:
        return None
    return float(np.mean(series[:early])) / tail
