"""
run_service.py 🚀
------------------
Seed sweeps: load and validate a scenario, run one engine per seed, and
write each seed's logs, scenario snapshot, channel usage and exports,
followed by metrics.csv for the whole sweep.

Output tree:

    <out>/metrics.csv
    <out>/seed_<n>/{positions,links,events}.csv
    <out>/seed_<n>/scenario.yaml
    <out>/seed_<n>/channel_usage.csv
    <out>/seed_<n>/export/...          (only with --export)
"""

import functools
import logging
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field, field_validator

from ..analysis.metrics import (
    CHANNEL_USAGE_FILE,
    METRICS_FILE,
    MetricsReport,
    channel_usage,
    summarize_metrics,
    write_metrics,
)
from ..core.executors import ParallelExecutor
from ..core.utils.error_handlers import LogDirectoryError, ScenarioError
from ..engine.log import FLOAT_FORMAT, POSITIONS_FILE, SCENARIO_FILE
from ..engine.simulator import run
from ..engine.world import replicate_seed
from ..scenario.models import ScenarioConfig
from ..scenario.parser import dump_scenario, load_scenario
from ..scenario.validator import validate
from .export_service import EXPORTERS, load_run

logger = logging.getLogger(__name__)

SEED_DIR_PREFIX = "seed_"
EXPORT_DIR = "export"


class RunManifest(BaseModel):
    """What `run` was asked to do."""
    scenario: Path
    seeds: List[int] = Field(min_length=1)
    out_dir: Path
    exports: List[str] = Field(default_factory=list)
    workers: int = 1

    @field_validator("exports")
    @classmethod
    def known_exports(cls, value: List[str]) -> List[str]:
        unknown = [name for name in value if name not in EXPORTERS]
        if unknown:
            raise ValueError(f"unknown export(s) {', '.join(unknown)}; expected {', '.join(EXPORTERS)}")
        return list(dict.fromkeys(value))


def parse_seeds(text: str, base_seed: int) -> List[int]:
    """
    "N" runs N replicates with seeds base_seed .. base_seed+N-1;
    a comma list ("3,5,8" or "7,") names the seeds explicitly.
    """
    text = str(text).strip()
    try:
        if "," in text:
            seeds = [int(part) for part in text.split(",") if part.strip()]
        else:
            count = int(text)
            if count < 1:
                raise ScenarioError(f"--seeds count must be ≥ 1 (got {count})")
            seeds = [replicate_seed(base_seed, k) for k in range(count)]
    except ValueError as exc:
        raise ScenarioError(f"--seeds expects a count or a comma-separated seed list (got '{text}')") from exc

    if not seeds:
        raise ScenarioError("--seeds list is empty")
    if len(set(seeds)) != len(seeds):
        raise ScenarioError(f"--seeds contains duplicates: {text}")
    if any(s < 0 or s >= 2**64 for s in seeds):
        raise ScenarioError(f"--seeds values must lie in [0, 2^64): {text}")
    return seeds


def load_validated(path: Path) -> ScenarioConfig:
    """Parse and validate; a non-empty report becomes a ScenarioError."""
    config = load_scenario(path)
    report = validate(config)
    if report:
        raise ScenarioError(
            f"scenario {path} failed validation ({len(report)} problem{'s' if len(report) != 1 else ''})",
            details={"report": report},
        )
    return config


def seed_dir(out_dir: Path, seed: int) -> Path:
    return out_dir / f"{SEED_DIR_PREFIX}{seed}"


def run_seed(config: ScenarioConfig, out_dir: Path, exports: Sequence[str], seed: int) -> MetricsReport:
    """One engine run, written to its own directory. Runs inside worker processes."""
    seeded = config.with_seed(seed)
    directory = seed_dir(out_dir, seed)
    log = run(seeded)
    log.write(directory)
    (directory / SCENARIO_FILE).write_text(dump_scenario(seeded), encoding="utf-8", newline="\n")
    channel_usage(log.links, seeded.base_stations, seeded.sim_steps).to_csv(
        directory / CHANNEL_USAGE_FILE, index=False, float_format=FLOAT_FORMAT, lineterminator="\n"
    )
    for name in exports:
        EXPORTERS[name](directory, directory / EXPORT_DIR)
    return summarize_metrics(log)


def cmd_run(manifest: RunManifest) -> List[Tuple[int, MetricsReport]]:
    """Validate, run every seed and write metrics.csv; nothing is written when validation fails."""
    config = load_validated(manifest.scenario)
    manifest.out_dir.mkdir(parents=True, exist_ok=True)

    job = functools.partial(run_seed, config, manifest.out_dir, tuple(manifest.exports))
    reports = ParallelExecutor(job, workers=manifest.workers).run(manifest.seeds)
    results = list(zip(manifest.seeds, reports))

    write_metrics(results, manifest.out_dir / METRICS_FILE)
    logger.info(f"Scenario '{config.name}': {len(results)} seed(s) written to {manifest.out_dir}")
    return results


def seed_dirs(out_dir: Path) -> List[Path]:
    """Seed directories of a finished sweep, in seed order."""
    dirs = [
        p for p in Path(out_dir).iterdir()
        if p.is_dir() and p.name.startswith(SEED_DIR_PREFIX) and p.name[len(SEED_DIR_PREFIX):].isdigit()
    ]
    return sorted(dirs, key=lambda p: int(p.name[len(SEED_DIR_PREFIX):]))


def resolve_out_dir(option: Optional[str], override: Optional[str]) -> Path:
    """SKYLINK_OUTPUT_DIR wins over --out; with neither, ./out."""
    return Path(override or option or "out")


def summarize_dir(directory: Path) -> List[Tuple[int, MetricsReport]]:
    """Metrics of one seed directory, or of every seed directory of a sweep."""
    directory = Path(directory)
    if not directory.is_dir():
        raise LogDirectoryError(f"log directory {directory} does not exist", details={"directory": str(directory)})
    if (directory / POSITIONS_FILE).is_file():
        runs = [load_run(directory)]
    else:
        dirs = seed_dirs(directory)
        if not dirs:
            raise LogDirectoryError(
                f"no run logs in {directory} (expected log CSVs or {SEED_DIR_PREFIX}<n> directories)",
                details={"directory": str(directory)},
            )
        runs = [load_run(d) for d in dirs]
    return [(r.config.rng_seed, summarize_metrics(r.frames)) for r in runs]
