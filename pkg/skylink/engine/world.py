"""
world.py 🌍
------------
Mutable state of one run and the fixed RNG substreams it draws from.
"""

import logging
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Dict, List, Optional

import numpy as np

from ..comms.links import BaseStationState, CoverageMap, coverage_mask, station_states
from ..routing.planner import ManagedPlanner
from ..routing.reservations import ReservationTable
from ..routing.trajectories import GridMask
from ..scenario.models import ScenarioConfig
from .agents import UasAgent
from .log import SimulationLog

logger = logging.getLogger(__name__)


class Stream(IntEnum):
    """Fixed labels of the RNG substreams derived from rng_seed."""
    LAUNCH = 0
    LANDING = 1
    SHADOWING = 2
    ENDPOINTS = 3


def substream(seed: int, label: Stream) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(int(label),)))


def replicate_seed(base_seed: int, k: int) -> int:
    return base_seed + k


@dataclass
class WorldState:
    config: ScenarioConfig
    planner: ManagedPlanner
    router: ManagedPlanner
    coverage: Optional[CoverageMap]
    clock: int = 0
    next_agent_id: int = 0
    agents: Dict[int, UasAgent] = field(default_factory=dict)
    active: Dict[int, UasAgent] = field(default_factory=dict)
    reservations: ReservationTable = field(default_factory=ReservationTable)
    stations: List[BaseStationState] = field(default_factory=list)
    streams: Dict[Stream, np.random.Generator] = field(default_factory=dict)
    log: SimulationLog = field(default_factory=SimulationLog)

    def stream(self, label: Stream) -> np.random.Generator:
        return self.streams[label]


def new_world(config: ScenarioConfig) -> WorldState:
    """Empty world at clock 0 with planners, coverage and RNG streams prepared."""
    grid = (config.grid_width, config.grid_height)
    blocked = GridMask.from_rects(config.no_fly_zones, grid)

    coverage = None
    if config.base_stations:
        coverage = coverage_mask(config.base_stations, config.path_loss, grid, config.cell_size_m)
    planning_coverage = coverage if (coverage is not None and config.require_coverage) else None

    common = dict(
        grid=grid,
        blocked=blocked,
        trajectory_type=config.trajectory_type,
        cell_size_m=config.cell_size_m,
        speed_m_per_step=config.speed_m_per_step,
    )
    planner = ManagedPlanner(coverage=planning_coverage, max_hold=config.max_hold, **common)
    # unmanaged flights only steer around no-fly zones
    router = ManagedPlanner(coverage=None, max_hold=0, **common)

    return WorldState(
        config=config,
        planner=planner,
        router=router,
        coverage=coverage,
        stations=station_states(config.base_stations),
        streams={label: substream(config.rng_seed, label) for label in Stream},
        log=SimulationLog(sim_steps=config.sim_steps, step_seconds=config.step_seconds),
    )
