"""
conflicts.py 💥
----------------
Co-occupancy detection over position records.

A conflict is two or more agents in the same cell at the same step. Each
(step, cell) group is one event; a mission counts once toward the ratio no
matter how many events it appears in.
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Set, Tuple, Union

import pandas as pd

from ..engine.log import POSITION_COLUMNS, PositionRecord
from ..scenario.models import Cell

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class ConflictEvent:
    step: int
    cell: Cell
    agents: Tuple[int, ...]


@dataclass(frozen=True)
class ConflictReport:
    events: Tuple[ConflictEvent, ...]
    flagged: FrozenSet[int]

    def __len__(self) -> int:
        return len(self.events)


def positions_to_frame(records: Union[pd.DataFrame, Iterable[PositionRecord]]) -> pd.DataFrame:
    if isinstance(records, pd.DataFrame):
        return records
    return pd.DataFrame(
        [(r.step, r.agent, r.cell[0], r.cell[1]) for r in records],
        columns=POSITION_COLUMNS,
    )


def detect_conflicts(positions: Union[pd.DataFrame, Iterable[PositionRecord]]) -> ConflictReport:
    """Group agents by (step, cell); every group of two or more is one event."""
    frame = positions_to_frame(positions)
    if frame.empty:
        return ConflictReport(events=(), flagged=frozenset())

    sizes = frame.groupby(["step", "cell_x", "cell_y"], sort=True)["agent"].transform("size")
    crowded = frame[sizes >= 2]

    events: List[ConflictEvent] = []
    flagged: Set[int] = set()
    for (t, x, y), group in crowded.groupby(["step", "cell_x", "cell_y"], sort=True):
        agents = tuple(sorted(int(a) for a in group["agent"]))
        events.append(ConflictEvent(int(t), (int(x), int(y)), agents))
        flagged.update(agents)

    if events:
        logger.debug(f"Detected {len(events)} conflict events involving {len(flagged)} missions")
    return ConflictReport(events=tuple(events), flagged=frozenset(flagged))


def conflict_ratio(flags: Iterable[int], launched_count: int) -> Optional[float]:
    """Flagged missions over launched missions; None when nothing launched."""
    if launched_count <= 0:
        return None
    return len(set(flags)) / launched_count
