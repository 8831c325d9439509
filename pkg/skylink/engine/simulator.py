"""
simulator.py ⚙️
────────────────────────────────────────────
Discrete-time driver. Every step runs five fixed phases:

1. launch decisions (when clock mod t_min == 0)
2. move every agent to its cell for this step (held agents stay at origin)
3. land agents that reached their last cell and release their bookings
4. allocate channels over every agent present this step
5. append the step's records

One run is single-threaded and fully determined by the scenario and
its rng_seed.
"""

import logging
import time
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from ..comms.links import allocate_channels, reset_stations
from ..core.utils.error_handlers import InvariantViolation
from ..core.utils.logger import run_context
from ..routing.planner import Cancelled, Mission
from ..scenario.models import Cell, Rect, ScenarioConfig
from .agents import UasAgent
from .log import CancelEvent, LandEvent, LaunchEvent, PositionRecord, SimulationLog
from .world import Stream, WorldState, new_world, replicate_seed

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LaunchDecision:
    step: int
    launch_area: int
    landing_area: int
    origin: Cell
    dest: Cell


def _endpoint(region: Rect, rng: np.random.Generator, randomize: bool) -> Cell:
    if not randomize:
        return region.center
    x = int(rng.integers(region.x_min, region.x_max + 1))
    y = int(rng.integers(region.y_min, region.y_max + 1))
    return (x, y)


def _pick_landing(rng: np.random.Generator, cumulative: np.ndarray) -> int:
    index = int(np.searchsorted(cumulative, rng.random(), side="right"))
    return min(index, len(cumulative) - 1)


def schedule_launches(world: WorldState, config: ScenarioConfig) -> List[LaunchDecision]:
    """
    One Bernoulli draw per launch area, in declaration order; each success
    draws its landing area from the selection distribution.
    """
    launch_rng = world.stream(Stream.LAUNCH)
    landing_rng = world.stream(Stream.LANDING)
    endpoint_rng = world.stream(Stream.ENDPOINTS)
    cumulative = np.cumsum([a.selection_probability for a in config.landing_areas])

    decisions: List[LaunchDecision] = []
    for index, area in enumerate(config.launch_areas):
        if launch_rng.random() >= area.launch_probability:
            continue
        landing = _pick_landing(landing_rng, cumulative)
        origin = _endpoint(area.region, endpoint_rng, config.random_endpoints)
        dest = _endpoint(config.landing_areas[landing].region, endpoint_rng, config.random_endpoints)
        decisions.append(LaunchDecision(world.clock, index, landing, origin, dest))
    return decisions


def _launch(world: WorldState, config: ScenarioConfig, decision: LaunchDecision) -> None:
    agent_id = world.next_agent_id
    t0 = decision.step

    if config.managed:
        outcome = world.planner.plan(Mission(agent_id, decision.origin, decision.dest), t0, world.reservations)
        if isinstance(outcome, Cancelled):
            world.log.cancellations.append(CancelEvent(t0, decision.origin, decision.dest, outcome.reason))
            logger.debug(f"Cancelled launch {decision.origin}->{decision.dest} at step {t0}: {outcome.reason}")
            return
        trajectory, hold = outcome.trajectory, outcome.hold
    else:
        candidates = world.router.candidates(decision.origin, decision.dest)
        if candidates:
            trajectory = candidates[0].shifted(t0)
        else:
            # enclosed endpoint: fly the plain route, unmanaged traffic never cancels
            trajectory = world.router.preferred(decision.origin, decision.dest)[0].shifted(t0)
            logger.warning(f"No route around no-fly zones for {decision.origin}->{decision.dest}")
        hold = 0

    agent = UasAgent(agent_id, decision.origin, decision.dest, trajectory, launch_step=t0, hold=hold)
    world.next_agent_id += 1
    world.agents[agent_id] = agent
    world.active[agent_id] = agent
    world.log.launches.append(LaunchEvent(t0, agent_id, decision.origin, decision.dest, hold))


def step(world: WorldState, config: ScenarioConfig) -> WorldState:
    t = world.clock
    if t >= config.sim_steps:
        raise InvariantViolation(f"step called at clock {t} beyond sim_steps {config.sim_steps}")

    # (1) launches
    if t % config.t_min == 0:
        for decision in schedule_launches(world, config):
            _launch(world, config, decision)

    # (2) advance
    present = sorted(world.active.values(), key=lambda a: a.id)
    positions: List[PositionRecord] = []
    occupied: Dict[Cell, int] = {}
    for agent in present:
        cell = agent.cell_at(t)
        positions.append(PositionRecord(t, agent.id, cell))
        if config.managed:
            other = occupied.setdefault(cell, agent.id)
            if other != agent.id:
                raise InvariantViolation(
                    f"managed agents {other} and {agent.id} share cell {cell} at step {t}",
                    details={"cell": cell, "step": t, "agents": [other, agent.id]},
                )

    # (3) land
    landings: List[LandEvent] = []
    for agent in present:
        if t - agent.launch_step >= agent.final_offset:
            agent.land(t)
            landings.append(LandEvent(t, agent.id, agent.origin_cell, agent.dest_cell, agent.hold))
            world.reservations.release(agent.id)
            del world.active[agent.id]

    # (4) links
    reset_stations(world.stations)
    shadowing = None
    if config.path_loss.sigma > 0:
        rng = world.stream(Stream.SHADOWING)
        shadowing = {a.id: float(rng.normal(0.0, config.path_loss.sigma)) for a in present}
    samples = allocate_channels(
        [(a.id, a.position_at(t, config.cell_size_m)) for a in present],
        world.stations,
        config.path_loss,
        step=t,
        shadowing=shadowing,
    )

    # (5) records
    world.log.positions.extend(positions)
    world.log.links.extend(samples)
    world.log.landings.extend(landings)
    world.clock = t + 1
    return world


def run(config: ScenarioConfig) -> SimulationLog:
    """Execute sim_steps steps from an empty world."""
    with run_context(scenario=config.name, seed=config.rng_seed):
        world = new_world(config)
        logger.info(
            f"Run started: {config.grid_width}x{config.grid_height} grid, {config.sim_steps} steps, "
            f"{'managed' if config.managed else 'unmanaged'} {config.trajectory_type.value}"
        )
        started = time.perf_counter()
        for _ in range(config.sim_steps):
            step(world, config)
        log = world.log
        logger.info(
            f"Run finished: {config.sim_steps} steps, {len(log.launches)} launches, "
            f"{len(log.landings)} landings, {len(log.cancellations)} cancellations, "
            f"{len(world.active)} airborne at end ({time.perf_counter() - started:.2f}s)"
        )
        return log


def run_replicates(config: ScenarioConfig, count: int) -> List[Tuple[int, SimulationLog]]:
    """Replicate k runs with seed rng_seed + k."""
    results = []
    for k in range(count):
        seed = replicate_seed(config.rng_seed, k)
        results.append((seed, run(config.with_seed(seed))))
    return results
