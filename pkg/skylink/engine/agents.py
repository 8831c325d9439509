"""UasAgent 🛩️
────────────────────────────────────────────
One package-delivery flight: endpoints, plan and Flying/Landed state.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from ..scenario.models import Cell, Point
from ..routing.trajectories import Trajectory


class AgentState(str, Enum):
    FLYING = "Flying"
    LANDED = "Landed"


@dataclass(slots=True)
class UasAgent:
    """
    `launch_step` is the decision step; the agent parks at its origin for
    `hold` steps and then follows `trajectory` (whose own launch_step is
    launch_step + hold).
    """
    id: int
    origin_cell: Cell
    dest_cell: Cell
    trajectory: Trajectory
    launch_step: int
    hold: int = 0
    state: AgentState = AgentState.FLYING
    land_step: Optional[int] = None

    @property
    def final_offset(self) -> int:
        return self.hold + self.trajectory.flight_steps

    @property
    def planned_land_step(self) -> int:
        return self.launch_step + self.final_offset

    def cell_at(self, step: int) -> Cell:
        offset = step - self.launch_step
        if offset < self.hold:
            return self.trajectory.cells[0]
        return self.trajectory.cells[offset - self.hold]

    def position_at(self, step: int, cell_size_m: float) -> Point:
        """Continuous position for link budgets: free-flight sample or cell center."""
        offset = step - self.launch_step
        index = max(offset - self.hold, 0)
        positions = self.trajectory.positions_m
        if positions is not None:
            return positions[index]
        x, y = self.trajectory.cells[index]
        return ((x + 0.5) * cell_size_m, (y + 0.5) * cell_size_m)

    def land(self, step: int) -> None:
        self.state = AgentState.LANDED
        self.land_step = step
