"""
End-to-end runs of the crossroads scenarios shipped in scenarios/.
Slow: deselect with `pytest -m "not slow"`.
"""

from pathlib import Path

import numpy as np
import pytest

from skylink.analysis import airborne_series, detect_conflicts, flight_times, summarize_metrics
from skylink.comms.links import LinkClass, coverage_mask
from skylink.engine import run, run_replicates
from skylink.services.run_service import load_validated

pytestmark = pytest.mark.slow

SCENARIOS = Path(__file__).resolve().parents[2] / "scenarios"
SEEDS = 10


@pytest.fixture(scope="module")
def crossroads():
    cache = {}

    def _run(name: str):
        if name not in cache:
            config = load_validated(SCENARIOS / f"crossroads_{name}.yaml")
            cache[name] = (config, run(config))
        return cache[name]
    return _run


@pytest.fixture(scope="module")
def sweep():
    """Seeds rng_seed .. rng_seed + 9 of a crossroads scenario, optionally with fields replaced."""
    cache = {}

    def _run(name: str, **updates):
        key = (name, tuple(sorted(updates.items())))
        if key not in cache:
            config = load_validated(SCENARIOS / f"crossroads_{name}.yaml").model_copy(update=updates)
            cache[key] = run_replicates(config, SEEDS)
        return cache[key]
    return _run


def mean_of(runs, field: str) -> float:
    return float(np.mean([getattr(summarize_metrics(log), field) for _, log in runs]))


def test_manhattan_conflicts_more_than_straight_lines(crossroads):
    _, p2p = crossroads("p2p")
    _, manhattan = crossroads("manhattan")
    p2p_ratio = summarize_metrics(p2p).conflict_ratio
    manhattan_ratio = summarize_metrics(manhattan).conflict_ratio
    assert manhattan_ratio > p2p_ratio > 0


def test_manhattan_flights_take_the_l1_distance(crossroads):
    _, log = crossroads("manhattan")
    durations = flight_times(log.to_frames())
    assert len(durations) > 100
    assert (durations == 180).all()


def test_managed_traffic_is_conflict_free(crossroads):
    _, unmanaged = crossroads("manhattan")
    _, managed = crossroads("managed")
    assert len(detect_conflicts(managed.positions)) == 0
    assert len(managed.launches) + len(managed.cancellations) == len(unmanaged.launches)

    held = summarize_metrics(managed).avg_flight_time_s
    free = summarize_metrics(unmanaged).avg_flight_time_s
    assert held >= free
    assert held / free < 1.05


@pytest.mark.parametrize("name", ["p2p", "manhattan", "managed", "nofly"])
def test_airborne_count_stabilizes(crossroads, name):
    config, log = crossroads(name)
    series = airborne_series(log.positions_frame(), config.sim_steps)
    early = float(np.mean(series[500:1000]))
    late = float(np.mean(series[1000:2000]))
    assert late > 0
    assert 0.5 <= early / late <= 1.5


def test_no_fly_zone_and_coverage_are_respected(crossroads):
    config, log = crossroads("nofly")
    assert len(detect_conflicts(log.positions)) == 0
    assert log.launches

    zone = config.no_fly_zones[0]
    assert not any(zone.contains(r.cell) for r in log.positions)

    coverage = coverage_mask(config.base_stations, config.path_loss, (config.grid_width, config.grid_height),
                             config.cell_size_m)
    usable = ~coverage.mask(LinkClass.NO_LINK)
    assert all(usable[r.cell[1], r.cell[0]] for r in log.positions)


def test_managed_traffic_is_conflict_free_on_every_seed(sweep):
    runs = sweep("managed")
    assert [seed for seed, _ in runs] == list(range(1, SEEDS + 1))
    for seed, log in runs:
        assert log.launches, seed
        assert len(detect_conflicts(log.positions)) == 0, seed
        assert summarize_metrics(log).conflict_ratio == 0, seed


def test_manhattan_conflicts_more_than_straight_lines_on_average(sweep):
    p2p = mean_of(sweep("p2p"), "conflict_ratio")
    manhattan = mean_of(sweep("manhattan"), "conflict_ratio")
    assert manhattan > p2p > 0


def test_cancellations_lower_managed_throughput(sweep):
    unmanaged = sweep("manhattan")
    managed = sweep("managed", max_hold=0)
    for (seed, free), (_, held) in zip(unmanaged, managed):
        assert len(held.launches) <= len(free.launches), seed
        assert len(held.launches) + len(held.cancellations) == len(free.launches), seed

    cancellations = sum(len(log.cancellations) for _, log in managed)
    assert cancellations >= 1
    assert sum(len(log.launches) for _, log in managed) < sum(len(log.launches) for _, log in unmanaged)


def test_no_fly_zone_lowers_poor_link_rate(sweep):
    with_zone = mean_of(sweep("nofly"), "poor_link_rate")
    without_zone = mean_of(sweep("nofly", no_fly_zones=()), "poor_link_rate")
    assert with_zone < without_zone
