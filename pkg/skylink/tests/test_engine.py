import filecmp

import numpy as np
import pandas as pd
import pytest

from skylink.analysis import detect_conflicts
from skylink.core.utils.error_handlers import InvariantViolation, LogDirectoryError
from skylink.engine import (
    AgentState,
    LogFrames,
    Stream,
    UasAgent,
    new_world,
    read_frames,
    replicate_seed,
    run,
    run_replicates,
    schedule_launches,
    step,
    substream,
)
from skylink.routing import manhattan_trajectory
from skylink.routing.planner import REASON_CONFLICT


def launched_agents(log):
    return {e.agent for e in log.launches}


# -------- launch scheduling --------

def test_certain_launches_every_t_min(minimal_config):
    log = run(minimal_config.model_copy(update={"sim_steps": 100}))
    assert [e.step for e in log.launches] == list(range(0, 100, 10))
    assert [e.agent for e in log.launches] == list(range(10))


def test_zero_probability_never_launches(make_config):
    config = make_config(
        sim_steps=500,
        launch_areas=[{"region": [0, 0, 1, 1], "launch_probability": 0.0}],
    )
    log = run(config)
    assert log.launches == [] and log.positions == [] and log.links == []


def test_launch_decisions_are_reproducible(make_config):
    config = make_config(
        sim_steps=400,
        launch_areas=[
            {"region": [0, 0, 1, 1], "launch_probability": 0.5},
            {"region": [0, 18, 1, 19], "launch_probability": 0.5},
        ],
    )

    def decisions():
        world = new_world(config)
        out = []
        for t in range(0, 400, 10):
            world.clock = t
            out.extend(schedule_launches(world, config))
        return out

    first = decisions()
    assert first == decisions()
    assert 0 < len(first) < 80


def test_substreams_are_independent():
    a = substream(5, Stream.LAUNCH).random(4)
    b = substream(5, Stream.SHADOWING).random(4)
    assert not np.allclose(a, b)
    assert np.array_equal(a, substream(5, Stream.LAUNCH).random(4))
    assert replicate_seed(5, 3) == 8


def test_random_endpoints_stay_inside_regions(make_config):
    config = make_config(sim_steps=200, random_endpoints=True)
    log = run(config)
    launches = [a.region for a in config.launch_areas]
    landings = [a.region for a in config.landing_areas]
    assert log.launches
    for event in log.launches:
        assert any(r.contains(event.origin) for r in launches)
        assert any(r.contains(event.dest) for r in landings)


# -------- stepping --------

def test_agent_advances_one_cell_per_step(minimal_config):
    config = minimal_config.model_validate({**minimal_config.model_dump(), "trajectory_type": "manhattan", "sim_steps": 5})
    world = new_world(config)
    cells = []
    for _ in range(4):
        step(world, config)
        cells.append(world.log.positions[-1].cell)
    assert cells == [(0, 0), (1, 0), (2, 0), (3, 0)]
    assert world.clock == 4


def test_landing_releases_reservations(head_on):
    config = head_on(managed=True, max_hold=1, sim_steps=9)
    world = new_world(config)
    for _ in range(7):
        step(world, config)
    agent = world.agents[0]
    assert agent.state == AgentState.LANDED and agent.land_step == 6
    assert world.reservations.keys_of(0) == []
    assert 0 not in world.active
    step(world, config)
    assert all(r.agent != 0 for r in world.log.positions if r.step == 7)
    assert all(s.agent != 0 for s in world.log.links if s.step == 7)


def test_step_beyond_horizon_is_an_invariant_violation(minimal_config):
    config = minimal_config.model_copy(update={"sim_steps": 1})
    world = new_world(config)
    step(world, config)
    with pytest.raises(InvariantViolation):
        step(world, config)


def test_hold_keeps_agent_at_origin():
    trajectory = manhattan_trajectory((2, 2), (4, 2), launch_step=13)
    agent = UasAgent(0, (2, 2), (4, 2), trajectory, launch_step=10, hold=3)
    assert [agent.cell_at(t) for t in range(10, 16)] == [(2, 2), (2, 2), (2, 2), (2, 2), (3, 2), (4, 2)]
    assert agent.planned_land_step == 15
    assert agent.position_at(11, 18.0) == (45.0, 45.0)


# -------- head-on pair --------

def test_unmanaged_head_on_pair_conflicts_at_landing_cell(head_on):
    log = run(head_on())
    report = detect_conflicts(log.positions)
    assert [(e.step, e.cell, e.agents) for e in report.events] == [(6, (6, 5), (0, 1))]
    assert [e.step for e in log.landings] == [6, 6]


def test_managed_head_on_pair_cancels_second_without_hold(head_on):
    log = run(head_on(managed=True))
    assert launched_agents(log) == {0}
    assert [(c.step, c.origin, c.reason) for c in log.cancellations] == [(0, (12, 5), REASON_CONFLICT)]
    assert len(detect_conflicts(log.positions)) == 0


def test_managed_head_on_pair_holds_second(head_on):
    log = run(head_on(managed=True, max_hold=1))
    assert [(e.agent, e.hold) for e in log.launches] == [(0, 0), (1, 1)]
    assert [(e.agent, e.step) for e in log.landings] == [(0, 6), (1, 7)]
    held = [r.cell for r in log.positions if r.agent == 1 and r.step <= 1]
    assert held == [(12, 5), (12, 5)]
    assert len(detect_conflicts(log.positions)) == 0


# -------- whole runs --------

def test_conservation_of_launches(unmanaged_config):
    config = unmanaged_config.model_copy(update={"sim_steps": 75})
    world = new_world(config)
    for _ in range(config.sim_steps):
        step(world, config)
    log = world.log
    landed = {e.agent for e in log.landings}
    assert launched_agents(log) == landed | set(world.active)
    assert not landed & set(world.active)
    for event in log.landings:
        agent = world.agents[event.agent]
        assert event.step - agent.launch_step == agent.hold + agent.trajectory.flight_steps


@pytest.mark.parametrize("seed", [0, 1, 2, 3, 4])
def test_managed_runs_never_co_occupy(managed_config, seed):
    config = managed_config.model_copy(update={
        "sim_steps": 400,
        "rng_seed": seed,
        "launch_areas": tuple(a.model_copy(update={"launch_probability": 0.7}) for a in managed_config.launch_areas),
    })
    log = run(config)
    assert len(detect_conflicts(log.positions)) == 0
    assert launched_agents(log)


def test_positions_and_links_cover_the_same_agent_steps(make_config):
    config = make_config(
        sim_steps=120,
        base_stations=[{"position": [180.0, 180.0], "channels": 1}],
        path_loss={"sigma": 3.0},
    )
    log = run(config)
    assert [(r.step, r.agent) for r in log.positions] == [(s.step, s.agent) for s in log.links]


def test_shadowing_does_not_change_traffic(make_config):
    stations = [{"position": [180.0, 180.0], "channels": 2}]
    plain = run(make_config(sim_steps=150, base_stations=stations))
    shadowed = run(make_config(sim_steps=150, base_stations=stations, path_loss={"sigma": 6.0}))
    assert plain.positions == shadowed.positions
    assert plain.launches == shadowed.launches
    assert [s.path_loss_db for s in plain.links] != [s.path_loss_db for s in shadowed.links]


def test_zero_steps_is_an_empty_log(minimal_config):
    log = run(minimal_config.model_copy(update={"sim_steps": 0}))
    assert len(log) == 0


def test_same_seed_gives_identical_files(make_config, tmp_path):
    config = make_config(sim_steps=200, base_stations=[{"position": [100.0, 100.0]}], path_loss={"sigma": 2.0})
    run(config).write(tmp_path / "a")
    run(config).write(tmp_path / "b")
    for name in ("positions.csv", "links.csv", "events.csv"):
        assert filecmp.cmp(tmp_path / "a" / name, tmp_path / "b" / name, shallow=False)


def test_replicates_use_consecutive_seeds(make_config):
    config = make_config(
        sim_steps=100,
        launch_areas=[{"region": [0, 0, 1, 1], "launch_probability": 0.5}],
    )
    results = run_replicates(config, 3)
    assert [seed for seed, _ in results] == [7, 8, 9]


def test_log_files_read_back(make_config, tmp_path):
    log = run(make_config(sim_steps=80, base_stations=[{"position": [90.0, 90.0]}]))
    log.write(tmp_path)
    frames = read_frames(tmp_path, step_seconds=1.0, sim_steps=80)
    assert isinstance(frames, LogFrames)
    original = log.to_frames()
    pd.testing.assert_frame_equal(frames.positions, original.positions)
    pd.testing.assert_frame_equal(frames.events, original.events, check_dtype=False)
    assert list(frames.links.columns) == ["step", "agent", "station", "path_loss_db", "class"]
    assert len(frames.links) == len(original.links)


def test_missing_log_files(tmp_path):
    with pytest.raises(LogDirectoryError) as exc:
        read_frames(tmp_path)
    assert exc.value.details["missing"] == ["positions.csv", "links.csv", "events.csv"]
