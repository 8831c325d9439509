from skylink.main import cli
from skylink.version import __version__


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_validate_ok(runner, write_scenario, minimal_text):
    result = runner.invoke(cli, ["validate", "--scenario", str(write_scenario(minimal_text))])
    assert result.exit_code == 0
    assert "ok (20x20 grid, 1 launch / 1 landing areas)" in result.stdout


def test_validate_reports_every_problem(runner, write_scenario, make_config):
    config = make_config(
        landing_areas=[{"region": [18, 18, 19, 19], "selection_probability": 0.6},
                       {"region": [18, 0, 19, 1], "selection_probability": 0.5}],
        no_fly_zones=[[0, 0, 3, 3]],
    )
    result = runner.invoke(cli, ["validate", "--scenario", str(write_scenario(config))])
    assert result.exit_code == 1
    assert "landing probabilities sum 1.1" in result.stderr
    assert "overlaps" in result.stderr


def test_syntax_error_exits_with_scenario_code(runner, write_scenario):
    path = write_scenario("grid_width: [1, 2\n")
    result = runner.invoke(cli, ["run", "--scenario", str(path), "--out", str(path.parent / "out")])
    assert result.exit_code == 1
    assert "syntax error at line" in result.stderr
    assert not (path.parent / "out").exists()


def test_missing_scenario_file(runner, tmp_path):
    result = runner.invoke(cli, ["run", "--scenario", str(tmp_path / "nope.yaml"), "--out", str(tmp_path)])
    assert result.exit_code == 1
    assert "cannot read scenario" in result.stderr


def test_usage_errors_exit_two(runner, write_scenario, minimal_text):
    result = runner.invoke(cli, ["run", "--scenario", str(write_scenario(minimal_text)), "--workers", "0"])
    assert result.exit_code == 2


def test_run_then_export_and_summarize(runner, write_scenario, managed_config, tmp_path):
    path = write_scenario(managed_config)
    out = tmp_path / "runs"
    result = runner.invoke(cli, ["run", "--scenario", str(path), "--seeds", "3", "--out", str(out),
                                 "--export", "coverage"])
    assert result.exit_code == 0, result.output
    assert len((out / "metrics.csv").read_text().splitlines()) == 5
    assert (out / "seed_9" / "export" / "coverage.csv").is_file()

    seed_dir = out / "seed_7"
    result = runner.invoke(cli, ["export-density", "--out", str(seed_dir), "--window", "4", "--stride", "4",
                                 "--mode", "sum"])
    assert result.exit_code == 0, result.output
    assert str(seed_dir / "density_sum.pgm") in result.stdout
    assert (seed_dir / "density_sum.csv").read_text().count("\n") == 5

    result = runner.invoke(cli, ["export-trajectories", "--out", str(seed_dir), "--format", "GeoJSON"])
    assert result.exit_code == 0, result.output
    assert (seed_dir / "trajectories.geojson").is_file()

    result = runner.invoke(cli, ["summarize", "--out", str(out)])
    assert result.exit_code == 0, result.output
    result = runner.invoke(cli, ["summarize", "--out", str(seed_dir)])
    assert result.exit_code == 0, result.output


def test_output_dir_from_environment(runner, write_scenario, make_config, tmp_path, monkeypatch):
    forced = tmp_path / "forced"
    monkeypatch.setenv("SKYLINK_OUTPUT_DIR", str(forced))
    result = runner.invoke(cli, ["run", "--scenario", str(write_scenario(make_config())),
                                 "--out", str(tmp_path / "ignored")])
    assert result.exit_code == 0, result.output
    assert (forced / "metrics.csv").is_file()
    assert not (tmp_path / "ignored").exists()


def test_explicit_seed_list(runner, write_scenario, make_config, tmp_path):
    result = runner.invoke(cli, ["run", "--scenario", str(write_scenario(make_config())), "--seeds", "42,3",
                                 "--out", str(tmp_path / "out")])
    assert result.exit_code == 0, result.output
    assert sorted(p.name for p in (tmp_path / "out").iterdir()) == ["metrics.csv", "seed_3", "seed_42"]


def test_exports_need_logs(runner, tmp_path):
    for command in (["export-density", "--out", str(tmp_path)],
                    ["export-trajectories", "--out", str(tmp_path)],
                    ["summarize", "--out", str(tmp_path / "missing")]):
        result = runner.invoke(cli, command)
        assert result.exit_code == 1, command
        assert "error:" in result.stderr


def test_export_coverage(runner, write_scenario, make_config, tmp_path):
    config = make_config(base_stations=[{"position": [180.0, 180.0], "channels": 4}])
    result = runner.invoke(cli, ["export-coverage", "--scenario", str(write_scenario(config)),
                                 "--out", str(tmp_path / "cov")])
    assert result.exit_code == 0, result.output
    assert sorted(p.name for p in (tmp_path / "cov").iterdir()) == [
        "coverage.csv", "coverage.pgm", "coverage_good.pgm", "coverage_nolink.pgm", "coverage_poor.pgm",
    ]
