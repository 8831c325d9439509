from .planner import Cancelled, ManagedPlanner, Mission, PlanOutcome, Planned, plan_managed
from .reservations import ReservationTable, release_landed, reserve
from .trajectories import (
    AxisOrder,
    GridMask,
    Trajectory,
    constrained_route,
    l1_distance,
    manhattan_trajectory,
    p2p_trajectory,
)

__all__ = [
    "AxisOrder",
    "Cancelled",
    "GridMask",
    "ManagedPlanner",
    "Mission",
    "PlanOutcome",
    "Planned",
    "ReservationTable",
    "Trajectory",
    "constrained_route",
    "l1_distance",
    "manhattan_trajectory",
    "p2p_trajectory",
    "plan_managed",
    "release_landed",
    "reserve",
]
