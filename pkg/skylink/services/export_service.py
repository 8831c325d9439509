"""
export_service.py 🗺️
----------------------
File artifacts for external viewers: density heatmaps, coverage maps and
timestamped trajectories (KML / GeoJSON).

Every export is a pure function of its inputs; graymaps are binary PGM
(rows are y, columns are x) and pixel = floor(255 * v / max), raised to 1
for nonzero v.
"""

import json
import logging
import math
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd
from lxml import etree
from PIL import Image

from ..analysis.density import DENSITY_MODES, DistributionMap, peak_distribution
from ..comms.links import LINK_CLASS_CODES, LinkClass, coverage_mask
from ..core.utils.error_handlers import LogDirectoryError, ScenarioError
from ..engine.log import KIND_CANCEL, KIND_LAND, KIND_LAUNCH, SCENARIO_FILE, LogFrames, read_frames
from ..scenario.models import ScenarioConfig
from ..scenario.parser import load_scenario

logger = logging.getLogger(__name__)

KML_NS = "http://www.opengis.net/kml/2.2"
GX_NS = "http://www.google.com/kml/ext/2.2"
COORD_FORMAT = "%.8f"

PathLike = Union[str, Path]


@dataclass
class RunFiles:
    """A seed directory read back from disk."""
    directory: Path
    frames: LogFrames
    config: ScenarioConfig

    @property
    def grid(self) -> Tuple[int, int]:
        return (self.config.grid_width, self.config.grid_height)


def load_run(directory: PathLike) -> RunFiles:
    """Log CSVs plus the scenario snapshot written next to them."""
    directory = Path(directory)
    if not directory.is_dir():
        raise LogDirectoryError(f"log directory {directory} does not exist", details={"directory": str(directory)})
    snapshot = directory / SCENARIO_FILE
    if not snapshot.is_file():
        raise LogDirectoryError(
            f"missing log files in {directory}: {SCENARIO_FILE}",
            details={"directory": str(directory), "missing": [SCENARIO_FILE]},
        )
    config = load_scenario(snapshot)
    frames = read_frames(directory, step_seconds=config.step_seconds, sim_steps=config.sim_steps)
    return RunFiles(directory, frames, config)


# -------- graymaps --------

def normalize(values: np.ndarray) -> np.ndarray:
    """Scale to 0..255 by the max; nonzero inputs never map to 0."""
    values = np.asarray(values, dtype=np.float64)
    peak = float(values.max()) if values.size else 0.0
    if peak <= 0:
        return np.zeros(values.shape, dtype=np.uint8)
    pixels = np.floor(255.0 * values / peak).astype(np.int64)
    pixels[(values > 0) & (pixels == 0)] = 1
    return pixels.astype(np.uint8)


def write_graymap(values: np.ndarray, path: PathLike) -> Path:
    path = Path(path)
    Image.fromarray(normalize(values)).save(path, format="PPM")
    logger.debug(f"Wrote {path}")
    return path


def write_matrix(values: np.ndarray, path: PathLike) -> Path:
    """Dense matrix, one CSV row per y."""
    path = Path(path)
    pd.DataFrame(values).to_csv(path, index=False, header=False, lineterminator="\n")
    return path


# -------- density --------

def _write_distribution(dist: DistributionMap, path: Path) -> None:
    pd.DataFrame(
        [(x, y, n) for (x, y), n in dist],
        columns=["cell_x", "cell_y", "count"],
    ).to_csv(path, index=False, lineterminator="\n")


def _write_areas(config: ScenarioConfig, path: Path) -> None:
    rows = [
        ("launch", i, area.name or "", *area.region.model_dump().values())
        for i, area in enumerate(config.launch_areas)
    ] + [
        ("landing", i, area.name or "", *area.region.model_dump().values())
        for i, area in enumerate(config.landing_areas)
    ] + [
        ("no_fly", i, "", *zone.model_dump().values())
        for i, zone in enumerate(config.no_fly_zones)
    ]
    pd.DataFrame(rows, columns=["kind", "index", "name", "x_min", "y_min", "x_max", "y_max"]).to_csv(
        path, index=False, lineterminator="\n"
    )


def export_density(
    log_dir: PathLike,
    out_dir: PathLike,
    window: Optional[int] = None,
    stride: Optional[int] = None,
    mode: str = "max",
) -> List[Path]:
    """
    Peak per-step occupancy filtered by a W x W window with stride S.
    Window and stride default to the scenario's density settings.
    """
    if mode not in DENSITY_MODES:
        raise ScenarioError(f"unknown density mode '{mode}' (expected one of {', '.join(DENSITY_MODES)})")
    run = load_run(log_dir)
    window = window or run.config.density_window_w
    stride = stride or run.config.density_stride_s
    if window < 1 or stride < 1:
        raise ScenarioError(f"window and stride must be ≥ 1 (got W={window}, S={stride})")

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    dist = peak_distribution(run.frames.positions, run.grid)
    density = DENSITY_MODES[mode](dist, window, stride).to_dense()
    if density.size == 0:
        raise ScenarioError(f"window W={window} does not fit the {run.grid[0]}x{run.grid[1]} grid")

    written = [
        write_graymap(density, out / f"density_{mode}.pgm"),
        write_matrix(density, out / f"density_{mode}.csv"),
    ]
    _write_distribution(dist, out / "distribution.csv")
    _write_areas(run.config, out / "areas.csv")
    written += [out / "distribution.csv", out / "areas.csv"]
    logger.info(f"Density ({mode}, W={window}, S={stride}) peak {int(density.max(initial=0))} written to {out}")
    return written


# -------- coverage --------

_CLASS_FILES = {
    LinkClass.GOOD: "coverage_good.pgm",
    LinkClass.POOR: "coverage_poor.pgm",
    LinkClass.NO_LINK: "coverage_nolink.pgm",
}


def export_coverage(config: ScenarioConfig, out_dir: PathLike) -> List[Path]:
    """Best link class per cell: one mask per class, a combined graymap and a CSV of labels."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    coverage = coverage_mask(config.base_stations, config.path_loss, (config.grid_width, config.grid_height),
                             config.cell_size_m)

    written = [write_graymap(coverage.mask(cls).astype(np.uint8), out / name) for cls, name in _CLASS_FILES.items()]
    written.append(write_graymap(coverage.codes, out / "coverage.pgm"))

    names = np.empty(len(LINK_CLASS_CODES), dtype=object)
    for cls, code in LINK_CLASS_CODES.items():
        names[code] = cls.value
    written.append(write_matrix(names[coverage.codes], out / "coverage.csv"))

    counts = {cls.value: int(coverage.mask(cls).sum()) for cls in LinkClass}
    logger.info(f"Coverage map written to {out}: {counts}")
    return written


# -------- trajectories --------

def parse_start_time(text: str) -> datetime:
    stamp = datetime.fromisoformat(text.replace("Z", "+00:00"))
    if stamp.tzinfo is None:
        stamp = stamp.replace(tzinfo=timezone.utc)
    return stamp.astimezone(timezone.utc)


def format_time(stamp: datetime) -> str:
    spec = "seconds" if stamp.microsecond == 0 else "milliseconds"
    return stamp.isoformat(timespec=spec).replace("+00:00", "Z")


class Projection:
    """Cell -> exported coordinate (lon, lat) or planar meters when no anchor is set."""

    def __init__(self, config: ScenarioConfig):
        self.cell_size_m = config.cell_size_m
        self.anchor = config.geo_anchor

    def __call__(self, cell: Tuple[int, int]) -> Tuple[float, float]:
        x_m = (cell[0] + 0.5) * self.cell_size_m
        y_m = (cell[1] + 0.5) * self.cell_size_m
        if self.anchor is None:
            return (x_m, y_m)
        mpd = self.anchor.meters_per_degree
        lat = self.anchor.lat + y_m / mpd
        lon = self.anchor.lon + x_m / (mpd * math.cos(math.radians(self.anchor.lat)))
        return (lon, lat)

    def inverse(self, coord: Tuple[float, float]) -> Tuple[int, int]:
        if self.anchor is None:
            x_m, y_m = coord
        else:
            mpd = self.anchor.meters_per_degree
            x_m = (coord[0] - self.anchor.lon) * mpd * math.cos(math.radians(self.anchor.lat))
            y_m = (coord[1] - self.anchor.lat) * mpd
        return (math.floor(x_m / self.cell_size_m), math.floor(y_m / self.cell_size_m))


@dataclass
class MissionTrack:
    agent: int
    launch_step: int
    land_step: Optional[int]
    steps: List[int]
    coords: List[Tuple[float, float]]
    times: List[str]


def mission_tracks(run: RunFiles) -> List[MissionTrack]:
    """One track per launched mission, in agent order; cancelled missions have no positions."""
    project = Projection(run.config)
    start = parse_start_time(run.config.start_time)
    step_seconds = run.config.step_seconds

    landed = run.frames.events_of(KIND_LAND).set_index("agent")["step"]
    positions = run.frames.positions.sort_values(["agent", "step"], kind="stable")
    by_agent = {int(a): g for a, g in positions.groupby("agent", sort=True)}

    tracks = []
    for launch in run.frames.events_of(KIND_LAUNCH).sort_values("agent").itertuples(index=False):
        agent = int(launch.agent)
        rows = by_agent.get(agent)
        if rows is None:
            continue
        steps = [int(s) for s in rows["step"]]
        coords = [project((int(x), int(y))) for x, y in zip(rows["cell_x"], rows["cell_y"])]
        times = [format_time(start + timedelta(seconds=s * step_seconds)) for s in steps]
        land = int(landed[agent]) if agent in landed.index else None
        tracks.append(MissionTrack(agent, int(launch.step), land, steps, coords, times))
    return tracks


def _kml(tracks: List[MissionTrack], name: str) -> bytes:
    kml = etree.Element(f"{{{KML_NS}}}kml", nsmap={None: KML_NS, "gx": GX_NS})
    document = etree.SubElement(kml, f"{{{KML_NS}}}Document")
    etree.SubElement(document, f"{{{KML_NS}}}name").text = name
    for track in tracks:
        placemark = etree.SubElement(document, f"{{{KML_NS}}}Placemark")
        etree.SubElement(placemark, f"{{{KML_NS}}}name").text = f"agent {track.agent}"
        gx_track = etree.SubElement(placemark, f"{{{GX_NS}}}Track")
        etree.SubElement(gx_track, f"{{{KML_NS}}}altitudeMode").text = "clampToGround"
        for when in track.times:
            etree.SubElement(gx_track, f"{{{KML_NS}}}when").text = when
        for x, y in track.coords:
            etree.SubElement(gx_track, f"{{{GX_NS}}}coord").text = f"{COORD_FORMAT % x} {COORD_FORMAT % y} 0"
    return etree.tostring(kml, pretty_print=True, xml_declaration=True, encoding="UTF-8")


def _geometry(track: MissionTrack) -> dict:
    coordinates = [[round(x, 8), round(y, 8)] for x, y in track.coords]
    # a LineString needs two positions
    if len(coordinates) == 1:
        return {"type": "Point", "coordinates": coordinates[0]}
    return {"type": "LineString", "coordinates": coordinates}


def _geojson(tracks: List[MissionTrack]) -> str:
    features = [
        {
            "type": "Feature",
            "geometry": _geometry(track),
            "properties": {
                "agent": track.agent,
                "launch_step": track.launch_step,
                "land_step": track.land_step,
                "coordTimes": track.times,
            },
        }
        for track in tracks
    ]
    return json.dumps({"type": "FeatureCollection", "features": features}, indent=2) + "\n"


TRAJECTORY_FORMATS = ("kml", "geojson")


def export_trajectories(log_dir: PathLike, out_dir: PathLike, fmt: str = "kml") -> Path:
    fmt = fmt.lower()
    if fmt not in TRAJECTORY_FORMATS:
        raise ScenarioError(f"unknown trajectory format '{fmt}' (expected kml or geojson)")
    run = load_run(log_dir)
    tracks = mission_tracks(run)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if fmt == "kml":
        path = out / "trajectories.kml"
        path.write_bytes(_kml(tracks, run.config.name))
    else:
        path = out / "trajectories.geojson"
        path.write_text(_geojson(tracks), encoding="utf-8", newline="\n")

    skipped = len(run.frames.events_of(KIND_CANCEL))
    logger.info(f"Wrote {len(tracks)} trajectories to {path} ({skipped} cancelled missions excluded)")
    return path


# 📦 Exporters runnable on a finished seed directory, keyed by `run --export` name
EXPORTERS: Dict[str, Callable[[Path, Path], object]] = {
    "density": lambda seed_dir, out: [export_density(seed_dir, out, mode=m) for m in ("sum", "max")],
    "coverage": lambda seed_dir, out: export_coverage(load_run(seed_dir).config, out),
    "kml": lambda seed_dir, out: export_trajectories(seed_dir, out, "kml"),
    "geojson": lambda seed_dir, out: export_trajectories(seed_dir, out, "geojson"),
}
