# skylink/main.py 🛰️
"""
Command-line entry point: run scenarios and seed sweeps, summarize logs,
and export density, coverage and trajectory files.

    python -m skylink.main run --scenario scenarios/managed.yaml --seeds 10 --out runs/managed
    python -m skylink.main export-density --out runs/managed/seed_7 --window 5 --stride 5 --mode max
"""

import logging
from pathlib import Path
from typing import Optional, Sequence, Tuple

import click
from rich.console import Console
from rich.table import Table

from .analysis.metrics import METRICS_COLUMNS, MetricsReport, metrics_table
from .core.config.env_loader import default_workers, log_dir, log_level, output_dir_override
from .core.utils.error_handlers import handle_app_errors
from .core.utils.logger import setup_logging
from .services.export_service import (
    EXPORTERS,
    TRAJECTORY_FORMATS,
    export_coverage,
    export_density,
    export_trajectories,
)
from .services.run_service import (
    RunManifest,
    cmd_run,
    load_validated,
    parse_seeds,
    resolve_out_dir,
    summarize_dir,
)
from .version import __version__

logger = logging.getLogger(__name__)
console = Console()


def _print_metrics(results: Sequence[Tuple[int, MetricsReport]], title: str) -> None:
    table = Table(title=title)
    for column in METRICS_COLUMNS:
        table.add_column(column, justify="right")
    for _, row in metrics_table(results).iterrows():
        table.add_row(*("n/a" if value is None else f"{value:.4f}" if isinstance(value, float) else str(value)
                        for value in row))
    console.print(table)


@click.group()
@click.version_option(__version__, prog_name="skylink")
@click.option("--log-level", "level", default=None, help="Root log level (default: SKYLINK_LOG_LEVEL or INFO).")
def cli(level: Optional[str]):
    """Deterministic sUAS traffic and cellular C2-link simulator."""
    setup_logging(log_level=level or log_level(), log_dir=log_dir())


@cli.command("run")
@click.option("--scenario", "scenario_path", required=True, type=click.Path(dir_okay=False, path_type=Path),
              help="Scenario YAML file.")
@click.option("--seeds", default="1", show_default=True,
              help="Replicate count N (seeds rng_seed..rng_seed+N-1) or a comma list of seeds.")
@click.option("--out", "out_dir", default=None, help="Output directory (SKYLINK_OUTPUT_DIR overrides).")
@click.option("--workers", type=click.IntRange(min=1), default=None,
              help="Worker processes for the sweep (default: SKYLINK_WORKERS or 1).")
@click.option("--export", "exports", multiple=True, type=click.Choice(sorted(EXPORTERS)),
              help="Export to produce in every seed directory; repeatable.")
@handle_app_errors
def run_command(scenario_path: Path, seeds: str, out_dir: str, workers: int, exports: Tuple[str, ...]):
    """Run a scenario for one or more seeds and write logs plus metrics.csv."""
    config = load_validated(scenario_path)
    manifest = RunManifest(
        scenario=scenario_path,
        seeds=parse_seeds(seeds, config.rng_seed),
        out_dir=resolve_out_dir(out_dir, output_dir_override()),
        exports=list(exports),
        workers=workers or default_workers(),
    )
    results = cmd_run(manifest)
    _print_metrics(results, f"{config.name} → {manifest.out_dir}")


@cli.command("export-density")
@click.option("--out", "log_dir_path", required=True, type=click.Path(path_type=Path),
              help="Seed directory holding the log CSVs.")
@click.option("--window", type=click.IntRange(min=1), default=None, help="Window size W (default: scenario).")
@click.option("--stride", type=click.IntRange(min=1), default=None, help="Stride S (default: scenario).")
@click.option("--mode", type=click.Choice(["sum", "max"]), default="max", show_default=True)
@handle_app_errors
def export_density_command(log_dir_path: Path, window: int, stride: int, mode: str):
    """Density heatmap (PGM) and CSV matrix from a run's positions."""
    written = export_density(log_dir_path, log_dir_path, window, stride, mode)
    for path in written:
        click.echo(str(path))


@cli.command("export-coverage")
@click.option("--scenario", "scenario_path", required=True, type=click.Path(dir_okay=False, path_type=Path))
@click.option("--out", "out_dir", required=True, type=click.Path(path_type=Path))
@handle_app_errors
def export_coverage_command(scenario_path: Path, out_dir: Path):
    """Per-cell best link class: one graymap per class, a combined graymap and a CSV."""
    for path in export_coverage(load_validated(scenario_path), out_dir):
        click.echo(str(path))


@cli.command("export-trajectories")
@click.option("--out", "log_dir_path", required=True, type=click.Path(path_type=Path),
              help="Seed directory holding the log CSVs.")
@click.option("--format", "fmt", type=click.Choice(TRAJECTORY_FORMATS, case_sensitive=False), default="kml",
              show_default=True)
@handle_app_errors
def export_trajectories_command(log_dir_path: Path, fmt: str):
    """One timestamped track per launched mission."""
    click.echo(str(export_trajectories(log_dir_path, log_dir_path, fmt)))


@cli.command("summarize")
@click.option("--out", "log_dir_path", required=True, type=click.Path(path_type=Path),
              help="Seed directory or sweep directory.")
@handle_app_errors
def summarize_command(log_dir_path: Path):
    """Metrics of logs already on disk."""
    _print_metrics(summarize_dir(log_dir_path), str(log_dir_path))


@cli.command("validate")
@click.option("--scenario", "scenario_path", required=True, type=click.Path(dir_okay=False, path_type=Path))
@handle_app_errors
def validate_command(scenario_path: Path):
    """Check a scenario without running it."""
    config = load_validated(scenario_path)
    click.echo(f"{scenario_path}: ok ({config.grid_width}x{config.grid_height} grid, "
               f"{len(config.launch_areas)} launch / {len(config.landing_areas)} landing areas)")


if __name__ == "__main__":
    cli()
