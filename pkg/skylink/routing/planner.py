"""
planner.py 🛫
--------------
Managed (centrally coordinated) launch planning.

For each hold value h = 0..max_hold the planner walks a fixed candidate
list and books the first candidate whose every (cell, step) is free and
whose every cell is covered by the cellular layer. When nothing fits the
launch is cancelled.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from ..scenario.models import Cell, TrajectoryType
from .reservations import ReservationTable, reserve
from .trajectories import (
    AxisOrder,
    CellPredicate,
    Trajectory,
    constrained_route,
    manhattan_trajectory,
    p2p_trajectory,
)

logger = logging.getLogger(__name__)

REASON_ENDPOINT_BLOCKED = "endpoint blocked"
REASON_ENDPOINT_UNCOVERED = "endpoint not covered"
REASON_NO_ROUTE = "no route"
REASON_CONFLICT = "reservation conflict"
REASON_ROUTE_UNCOVERED = "route not covered"


def _always(_cell: Cell) -> bool:
    return True


def _never(_cell: Cell) -> bool:
    return False


@dataclass(frozen=True)
class Mission:
    agent_id: int
    origin: Cell
    dest: Cell


@dataclass(frozen=True)
class Planned:
    trajectory: Trajectory
    hold: int = 0


@dataclass(frozen=True)
class Cancelled:
    reason: str


PlanOutcome = Union[Planned, Cancelled]


class ManagedPlanner:
    """
    Holds the static planning context of one run: grid, no-fly mask,
    coverage predicate and trajectory style. Base candidates depend only
    on the endpoints and are cached per (origin, dest).
    """

    def __init__(
        self,
        grid: Tuple[int, int],
        blocked: Optional[CellPredicate] = None,
        coverage: Optional[CellPredicate] = None,
        max_hold: int = 0,
        trajectory_type: TrajectoryType = TrajectoryType.MANHATTAN,
        cell_size_m: float = 18.0,
        speed_m_per_step: float = 18.0,
    ):
        self.grid = grid
        self.blocked = blocked if blocked is not None else _never
        self.coverage = coverage if coverage is not None else _always
        self.max_hold = max_hold
        self.trajectory_type = trajectory_type
        self.cell_size_m = cell_size_m
        self.speed_m_per_step = speed_m_per_step
        self._candidates: Dict[Tuple[Cell, Cell], List[Trajectory]] = {}

    def _clear(self, trajectory: Trajectory) -> bool:
        return not any(self.blocked(c) for c in trajectory.cells)

    def _covered(self, trajectory: Trajectory) -> bool:
        return all(self.coverage(c) for c in trajectory.cells)

    def preferred(self, origin: Cell, dest: Cell) -> List[Trajectory]:
        if self.trajectory_type == TrajectoryType.P2P:
            half = self.cell_size_m / 2.0
            return [p2p_trajectory(
                (origin[0] * self.cell_size_m + half, origin[1] * self.cell_size_m + half),
                (dest[0] * self.cell_size_m + half, dest[1] * self.cell_size_m + half),
                self.speed_m_per_step,
                self.cell_size_m,
            )]
        x_first = manhattan_trajectory(origin, dest, AxisOrder.X_FIRST)
        y_first = manhattan_trajectory(origin, dest, AxisOrder.Y_FIRST)
        return [x_first] if x_first.cells == y_first.cells else [x_first, y_first]

    def candidates(self, origin: Cell, dest: Cell) -> List[Trajectory]:
        """
        Base candidates (launch_step 0) in evaluation order; empty when no route
        exists. Only the no-fly mask shapes them: the detour is searched when
        every preferred path enters a blocked cell.
        """
        key = (origin, dest)
        if key not in self._candidates:
            usable = [t for t in self.preferred(origin, dest) if self._clear(t)]
            if not usable:
                detour = constrained_route(origin, dest, self.blocked, self.grid)
                usable = [detour] if detour is not None else []
            self._candidates[key] = usable
        return self._candidates[key]

    def plan(self, mission: Mission, t0: int, reservations: ReservationTable) -> PlanOutcome:
        """Evaluate candidates for launch decision step t0 and book the first feasible one."""
        if self.blocked(mission.origin) or self.blocked(mission.dest):
            return Cancelled(REASON_ENDPOINT_BLOCKED)
        if not (self.coverage(mission.origin) and self.coverage(mission.dest)):
            return Cancelled(REASON_ENDPOINT_UNCOVERED)
        base = self.candidates(mission.origin, mission.dest)
        if not base:
            return Cancelled(REASON_NO_ROUTE)
        covered = [c for c in base if self._covered(c)]
        if not covered:
            return Cancelled(REASON_ROUTE_UNCOVERED)

        for hold in range(self.max_hold + 1):
            for candidate in covered:
                trajectory = candidate.shifted(t0 + hold)
                if reservations.all_free(trajectory.occupancy(hold)):
                    reserve(trajectory, mission.agent_id, reservations, hold)
                    return Planned(trajectory, hold)
        return Cancelled(REASON_CONFLICT)


def plan_managed(
    mission: Mission,
    t0: int,
    reservations: ReservationTable,
    blocked: Optional[CellPredicate],
    coverage: Optional[CellPredicate],
    max_hold: int,
    grid: Tuple[int, int],
) -> PlanOutcome:
    """One-shot Manhattan planning; the engine keeps a ManagedPlanner for its candidate cache."""
    planner = ManagedPlanner(grid, blocked, coverage, max_hold)
    return planner.plan(mission, t0, reservations)
