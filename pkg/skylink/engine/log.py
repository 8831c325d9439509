"""SimulationLog 📝
────────────────────────────────────────────
Append-only record of one run, and its CSV form.

Tracks:
- Launch, landing and cancellation events (events.csv)
- Per-step agent cells (positions.csv)
- Per-step link samples (links.csv)

Rows are sorted by step, then agent; floats carry 6 decimals.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Union

import pandas as pd

from ..comms.links import LinkSample
from ..core.utils.error_handlers import LogDirectoryError
from ..scenario.models import Cell

logger = logging.getLogger(__name__)

POSITIONS_FILE = "positions.csv"
LINKS_FILE = "links.csv"
EVENTS_FILE = "events.csv"
SCENARIO_FILE = "scenario.yaml"

POSITION_COLUMNS = ["step", "agent", "cell_x", "cell_y"]
LINK_COLUMNS = ["step", "agent", "station", "path_loss_db", "class"]
EVENT_COLUMNS = ["step", "kind", "agent", "origin_x", "origin_y", "dest_x", "dest_y", "hold", "reason"]

KIND_LAUNCH = "launch"
KIND_LAND = "land"
KIND_CANCEL = "cancel"
_KIND_ORDER = {KIND_CANCEL: 0, KIND_LAUNCH: 1, KIND_LAND: 2}

FLOAT_FORMAT = "%.6f"


@dataclass(frozen=True, slots=True)
class LaunchEvent:
    step: int
    agent: int
    origin: Cell
    dest: Cell
    hold: int = 0


@dataclass(frozen=True, slots=True)
class LandEvent:
    step: int
    agent: int
    origin: Cell
    dest: Cell
    hold: int = 0


@dataclass(frozen=True, slots=True)
class CancelEvent:
    step: int
    origin: Cell
    dest: Cell
    reason: str


@dataclass(frozen=True, slots=True)
class PositionRecord:
    step: int
    agent: int
    cell: Cell


@dataclass
class LogFrames:
    """Tabular view of a log, from a finished run or read back from disk."""
    positions: pd.DataFrame
    links: pd.DataFrame
    events: pd.DataFrame
    step_seconds: float = 1.0
    sim_steps: Optional[int] = None

    def events_of(self, kind: str) -> pd.DataFrame:
        return self.events[self.events["kind"] == kind]


@dataclass
class SimulationLog:
    sim_steps: int = 0
    step_seconds: float = 1.0
    launches: List[LaunchEvent] = field(default_factory=list)
    landings: List[LandEvent] = field(default_factory=list)
    cancellations: List[CancelEvent] = field(default_factory=list)
    positions: List[PositionRecord] = field(default_factory=list)
    links: List[LinkSample] = field(default_factory=list)

    def __len__(self) -> int:
        return (
            len(self.launches) + len(self.landings) + len(self.cancellations)
            + len(self.positions) + len(self.links)
        )

    # -------- tabular view --------

    def positions_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(
            [(r.step, r.agent, r.cell[0], r.cell[1]) for r in self.positions],
            columns=POSITION_COLUMNS,
        ).astype("int64")
        return frame.sort_values(["step", "agent"], kind="stable").reset_index(drop=True)

    def links_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(
            [
                (s.step, s.agent, -1 if s.station is None else s.station, float(s.path_loss_db), s.link_class.value)
                for s in self.links
            ],
            columns=LINK_COLUMNS,
        )
        frame = frame.astype({"step": "int64", "agent": "int64", "station": "int64", "path_loss_db": "float64"})
        return frame.sort_values(["step", "agent"], kind="stable").reset_index(drop=True)

    def events_frame(self) -> pd.DataFrame:
        rows = [
            (e.step, KIND_LAUNCH, e.agent, *e.origin, *e.dest, e.hold, "") for e in self.launches
        ] + [
            (e.step, KIND_LAND, e.agent, *e.origin, *e.dest, e.hold, "") for e in self.landings
        ] + [
            (e.step, KIND_CANCEL, -1, *e.origin, *e.dest, 0, e.reason) for e in self.cancellations
        ]
        frame = pd.DataFrame(rows, columns=EVENT_COLUMNS)
        int_columns = ["step", "agent", "origin_x", "origin_y", "dest_x", "dest_y", "hold"]
        frame = frame.astype({c: "int64" for c in int_columns} | {"kind": "object", "reason": "object"})
        frame["_kind"] = frame["kind"].map(_KIND_ORDER)
        frame = frame.sort_values(["step", "agent", "_kind"], kind="stable")
        return frame.drop(columns="_kind").reset_index(drop=True)

    def to_frames(self) -> LogFrames:
        return LogFrames(
            positions=self.positions_frame(),
            links=self.links_frame(),
            events=self.events_frame(),
            step_seconds=self.step_seconds,
            sim_steps=self.sim_steps,
        )

    # -------- files --------

    def write(self, directory: Union[str, Path]) -> Path:
        return write_frames(self.to_frames(), directory)


def write_frames(frames: LogFrames, directory: Union[str, Path]) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    frames.positions.to_csv(directory / POSITIONS_FILE, index=False, lineterminator="\n")
    frames.links.to_csv(directory / LINKS_FILE, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    frames.events.to_csv(directory / EVENTS_FILE, index=False, lineterminator="\n")
    logger.debug(f"Wrote log CSVs to {directory}")
    return directory


def read_frames(directory: Union[str, Path], step_seconds: float = 1.0, sim_steps: Optional[int] = None) -> LogFrames:
    """Load the three log CSVs of one run directory."""
    directory = Path(directory)
    missing = [name for name in (POSITIONS_FILE, LINKS_FILE, EVENTS_FILE) if not (directory / name).is_file()]
    if missing:
        raise LogDirectoryError(
            f"missing log files in {directory}: {', '.join(missing)}",
            details={"directory": str(directory), "missing": missing},
        )
    positions = pd.read_csv(directory / POSITIONS_FILE, dtype="int64")
    links = pd.read_csv(
        directory / LINKS_FILE,
        dtype={"step": "int64", "agent": "int64", "station": "int64", "path_loss_db": "float64", "class": "object"},
    )
    events = pd.read_csv(
        directory / EVENTS_FILE,
        dtype={"kind": "object", "reason": "object"},
        keep_default_na=False,
    )
    int_columns = ["step", "agent", "origin_x", "origin_y", "dest_x", "dest_y", "hold"]
    events = events.astype({c: "int64" for c in int_columns})
    return LogFrames(positions, links, events, step_seconds=step_seconds, sim_steps=sim_steps)
