"""CLI subcommands, exit codes and report outputs."""

from __future__ import annotations

import json

import pytest

from efleet.cli import EXIT_INFEASIBLE, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, main
from efleet.solver import instance_from_dict, solve


def run_cli(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse paths exit directly
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def test_unknown_subcommand_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "definitely-not-a-command")
    assert code == EXIT_USAGE


def test_unknown_flag_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "run", "--bogus-flag")
    assert code == EXIT_USAGE


def test_build_network_stats(capsys, data_dir):
    code, out, _ = run_cli(capsys, "build-network", str(data_dir / "network.json"))
    assert code == EXIT_OK
    assert "nodes: 40" in out
    assert "edges: 58" in out
    assert "cities: 8" in out


def test_build_network_validation_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"nodes": [], "edges": [{"u": 0, "v": 1}]}', encoding="utf-8")
    code, _, err = run_cli(capsys, "build-network", str(bad))
    assert code == EXIT_VALIDATION
    assert "error" in err


def test_gen_routes_writes_files(capsys, data_dir, tmp_path):
    out_dir = tmp_path / "routes"
    code, out, _ = run_cli(capsys, "gen-routes", str(data_dir / "network.json"),
                           "--cities", "Dallas,Houston,Austin", "--k", "3",
                           "--spacing-km", "50", "--out", str(out_dir))
    assert code == EXIT_OK
    files = sorted(p.name for p in out_dir.glob("*.json"))
    assert files == ["Austin__Dallas.json", "Austin__Houston.json",
                     "Dallas__Houston.json"]
    payload = json.loads((out_dir / "Dallas__Houston.json").read_text())
    assert len(payload) == 3
    assert payload[0]["route_id"] == "Dallas-Houston-0"
    assert {"sites", "segments", "nodes", "highways"} <= set(payload[0])


def test_run_on_fixture(capsys, data_dir, tmp_path):
    out_dir = tmp_path / "report"
    code, out, _ = run_cli(capsys, "run", "--config", str(data_dir / "scenario.toml"),
                           "--out", str(out_dir))
    assert code == EXIT_OK
    for name in ("comparison.md", "utility_demand.csv", "county_fuel.csv",
                 "choropleth.json", "sweep.csv", "result.json"):
        assert (out_dir / name).exists(), name
    assert "BEV" in out and "ICEV" in out


def test_run_infeasible_exit_code(capsys, data_dir, tmp_path):
    config = tmp_path / "scenario.toml"
    text = (data_dir / "scenario.toml").read_text(encoding="utf-8")
    text = text.replace('battery_max_kwh = 600.0', 'battery_max_kwh = 100.0')
    text = text.replace('battery_min_kwh = 60.0', 'battery_min_kwh = 10.0')
    text = text.replace('soc_initial_kwh = 600.0', 'soc_initial_kwh = 100.0')
    text = text.replace('soc_terminal_kwh = 600.0', 'soc_terminal_kwh = 100.0')
    text = text.replace('network = "network.json"',
                        f'network = "{data_dir / "network.json"}"')
    text = text.replace('tariffs = "tariffs.csv"',
                        f'tariffs = "{data_dir / "tariffs.csv"}"')
    text = text.replace('diesel_prices = "diesel_prices.csv"',
                        f'diesel_prices = "{data_dir / "diesel_prices.csv"}"')
    text = text.replace('carbon_intensity = "carbon_intensity.csv"',
                        f'carbon_intensity = "{data_dir / "carbon_intensity.csv"}"')
    text = text.replace('freight = "freight.csv"',
                        f'freight = "{data_dir / "freight.csv"}"')
    config.write_text(text, encoding="utf-8")
    code, _, err = run_cli(capsys, "run", "--config", str(config),
                           "--out", str(tmp_path / "r"))
    assert code == EXIT_INFEASIBLE
    assert "infeasible" in err


def test_sweep_command(capsys, data_dir, tmp_path):
    out_dir = tmp_path / "sweep"
    code, out, _ = run_cli(capsys, "sweep", "--config", str(data_dir / "scenario.toml"),
                           "--steps", "5", "--out", str(out_dir))
    assert code == EXIT_OK
    lines = (out_dir / "sweep.csv").read_text().splitlines()
    assert lines[0] == "bev_fraction,cost_usd,co2_kg"
    assert len(lines) == 6


def test_oracle_check_reports_matches(capsys):
    code, out, _ = run_cli(capsys, "oracle-check", "--instances", "25",
                           "--max-k", "6", "--seed", "3")
    assert code == EXIT_OK
    assert "25/25 matched" in out


def test_debug_dump_is_replayable(capsys, data_dir, tmp_path):
    out_dir = tmp_path / "report"
    dump_dir = tmp_path / "instances"
    code, _, _ = run_cli(capsys, "run", "--config", str(data_dir / "scenario.toml"),
                         "--out", str(out_dir), "--cities", "Dallas,Houston",
                         "--debug-dump", str(dump_dir))
    assert code == EXIT_OK
    dumps = sorted(dump_dir.glob("*.json"))
    assert len(dumps) == 3  # one per candidate route of the single pair
    payload = json.loads(dumps[0].read_text(encoding="utf-8"))
    instance = instance_from_dict(payload["instance"])
    plan = solve(instance)
    assert plan.total_cost_usd == pytest.approx(
        payload["plan"]["total_cost_usd"], rel=1e-12)


def test_run_parallel_matches_serial(capsys, data_dir, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    code1, _, _ = run_cli(capsys, "run", "--config", str(data_dir / "scenario.toml"),
                          "--out", str(a))
    code2, _, _ = run_cli(capsys, "run", "--config", str(data_dir / "scenario.toml"),
                          "--out", str(b), "--workers", "4")
    assert code1 == code2 == EXIT_OK
    ra = json.loads((a / "result.json").read_text(encoding="utf-8"))
    rb = json.loads((b / "result.json").read_text(encoding="utf-8"))
    ra["runtime_s"] = rb["runtime_s"] = 0.0
    assert ra == rb
