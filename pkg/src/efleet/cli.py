"""Command-line entry points for the scenario engine."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from .dataio import save_routes
from .errors import EfleetError, InfeasibleChargingError
from .network import build_graph, k_fastest_routes
from .reporting import COMPARISON_FORMATS, render_report
from .scenario import ScenarioError, run_scenario
from .solver import (
    ChargeInstance,
    check_plan,
    instance_to_dict,
    oracle_solve,
    plan_to_dict,
    random_instance,
    solve,
    solve_day,
)
from .vehicle import segment_discharge
from .workflow import load_region, scenario_from_region

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INFEASIBLE = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _cmd_build_network(args) -> int:
    graph = build_graph(args.network)
    print(f"nodes: {len(graph.nodes)}")
    print(f"edges: {len(graph.edges)}")
    print(f"cities: {len(graph.city_index)} ({', '.join(graph.city_index)})")
    counties = sorted({n.county for n in graph.nodes.values()})
    utilities = sorted({n.utility_id for n in graph.nodes.values()})
    print(f"counties: {len(counties)}")
    print(f"utilities: {len(utilities)}")
    if graph.isolated_nodes:
        print(f"isolated nodes: {sorted(graph.isolated_nodes)}")
    return EXIT_OK


def _cmd_gen_routes(args) -> int:
    graph = build_graph(args.network)
    cities = [c.strip() for c in args.cities.split(",") if c.strip()]
    if len(cities) < 2:
        print("error: need at least 2 cities", file=sys.stderr)
        return EXIT_VALIDATION
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    total = 0
    ordered = sorted(cities)
    for i, origin in enumerate(ordered):
        for dest in ordered[i + 1:]:
            routes = k_fastest_routes(graph, origin, dest, k=args.k,
                                      spacing_km=args.spacing_km)
            name = f"{origin}__{dest}.json".replace(" ", "_")
            save_routes(routes, out / name)
            total += len(routes)
    print(f"wrote {total} routes for {len(ordered) * (len(ordered) - 1) // 2} "
          f"O-D pairs to {out}")
    return EXIT_OK


def _dump_debug_instances(scenario, out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    for key in sorted(scenario.routes):
        for route in scenario.routes[key]:
            demand = next(d for d in scenario.od_pairs if d.pair_key == key)
            from .scenario import trips_per_day
            trips = trips_per_day(demand, scenario.spec.capacity_tons, scenario.days)
            if trips == 0:
                continue
            load = min(scenario.spec.capacity_tons,
                       demand.tons_per_year / scenario.days / trips)
            prices = tuple(s.price_usd_per_mwh for s in route.sites)
            energies = tuple(segment_discharge(scenario.spec, seg, load).energy_kwh
                             for seg in route.segments)
            instance = ChargeInstance(prices_usd_per_mwh=prices,
                                      seg_energy_kwh=energies, spec=scenario.spec)
            payload = {"route_id": route.route_id, "load_tons": load,
                       "instance": instance_to_dict(instance)}
            try:
                payload["plan"] = plan_to_dict(solve(instance))
            except InfeasibleChargingError as exc:
                payload["infeasible"] = str(exc)
            name = f"{route.route_id}.json".replace(" ", "_")
            with open(out_dir / name, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, indent=2)
                fh.write("\n")


def _cmd_run(args) -> int:
    region = load_region(args.config)
    overrides = {}
    if args.cities:
        overrides["cities"] = tuple(c.strip() for c in args.cities.split(","))
    if args.bev_fraction is not None:
        overrides["bev_fraction"] = args.bev_fraction
    scenario = scenario_from_region(region, **overrides)
    result = run_scenario(scenario, max_workers=args.workers, partial=args.partial,
                          sweep_steps=region.config.sweep_steps,
                          literal_day_loop=args.literal_days)
    out = Path(args.out)
    written = render_report(result, out, comparison_format=args.format)
    if args.debug_dump:
        _dump_debug_instances(scenario, Path(args.debug_dump))
    print(f"scenario {scenario.region}: {len(scenario.od_pairs)} O-D pairs, "
          f"runtime {result.runtime_s:.2f}s")
    print(f"BEV  cost ${result.bev.cost_usd:,.0f}  CO2 {result.bev.co2_kg:,.0f} kg  "
          f"energy {result.bev.energy_kwh / 1000.0:,.0f} MWh")
    print(f"ICEV cost ${result.icev.cost_usd:,.0f}  CO2 {result.icev.co2_kg:,.0f} kg  "
          f"energy {result.icev.energy_mwh:,.0f} MWh")
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    region = load_region(args.config)
    scenario = scenario_from_region(region)
    result = run_scenario(scenario, max_workers=args.workers, sweep_steps=args.steps)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "sweep.csv"
    lines = ["bev_fraction,cost_usd,co2_kg"]
    lines += [f"{f!r},{c!r},{e!r}" for f, c, e in result.sweep]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    for f, c, e in result.sweep:
        print(f"{f:6.2f}  ${c:,.0f}  {e:,.0f} kg")
    print(f"wrote {path}")
    return EXIT_OK


def _cmd_oracle_check(args) -> int:
    rng = np.random.default_rng(args.seed)
    matched = feasible = infeasible = 0
    mismatches = []
    t0 = time.perf_counter()
    for i in range(args.instances):
        instance = random_instance(rng, max_segments=args.max_k,
                                   tied_prices=(i % 5 == 0))
        try:
            plan = solve(instance)
            ok_solve = True
        except InfeasibleChargingError:
            ok_solve = False
        try:
            oracle = oracle_solve(instance)
            ok_oracle = True
        except InfeasibleChargingError:
            ok_oracle = False
        if ok_solve != ok_oracle:
            mismatches.append(f"instance {i}: verdict solve={ok_solve} oracle={ok_oracle}")
            continue
        if not ok_solve:
            infeasible += 1
            matched += 1
            continue
        feasible += 1
        rel = abs(plan.total_cost_usd - oracle.total_cost_usd)
        rel /= max(1.0, abs(oracle.total_cost_usd))
        problems = check_plan(instance, plan) + check_plan(instance, oracle)
        if rel <= 1e-4 and not problems:
            matched += 1
        else:
            mismatches.append(f"instance {i}: rel={rel:.2e} problems={problems[:2]}")
    elapsed = time.perf_counter() - t0
    print(f"{matched}/{args.instances} matched "
          f"({feasible} feasible, {infeasible} infeasible) in {elapsed:.1f}s")
    for line in mismatches[:10]:
        print(line, file=sys.stderr)
    return EXIT_OK if not mismatches else EXIT_VALIDATION


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    port = int(os.environ.get("EFLEET_PORT", args.port))
    app = create_app(args.data_dir, out_dir=args.out, job_workers=args.job_workers,
                     ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=port)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="efleet",
                     description="Freight-electrification scenario engine")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build-network", help="validate a network file and print stats")
    p.add_argument("network", help="network JSON file")
    p.set_defaults(func=_cmd_build_network)

    p = sub.add_parser("gen-routes", help="generate route JSON for city pairs")
    p.add_argument("network", help="network JSON file")
    p.add_argument("--cities", required=True, help="comma-separated city names")
    p.add_argument("--k", type=int, default=3, help="routes per O-D pair")
    p.add_argument("--spacing-km", type=float, default=50.0,
                   help="charging-site spacing")
    p.add_argument("--out", default="routes", help="output directory")
    p.set_defaults(func=_cmd_gen_routes)

    p = sub.add_parser("run", help="run a full scenario and write report files")
    p.add_argument("--config", required=True, help="scenario TOML file")
    p.add_argument("--out", required=True, help="report output directory")
    p.add_argument("--cities", help="override config city subset (comma-separated)")
    p.add_argument("--bev-fraction", type=float, help="override BEV fraction")
    p.add_argument("--workers", type=int, default=None,
                   help="parallel workers over O-D pairs")
    p.add_argument("--partial", action="store_true",
                   help="skip infeasible pairs instead of failing")
    p.add_argument("--literal-days", action="store_true",
                   help="solve every day instead of scaling one representative day")
    p.add_argument("--format", choices=COMPARISON_FORMATS, default="markdown",
                   help="comparison table format")
    p.add_argument("--debug-dump", default=None, metavar="DIR",
                   help="dump per-route charging instances and plans as JSON")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("sweep", help="BEV-penetration sweep")
    p.add_argument("--config", required=True, help="scenario TOML file")
    p.add_argument("--steps", type=int, default=11, help="number of sweep points")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("oracle-check",
                       help="compare the solver against the brute-force oracle")
    p.add_argument("--instances", type=int, default=200)
    p.add_argument("--max-k", type=int, default=10, help="max segments per instance")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_oracle_check)

    p = sub.add_parser("serve", help="start the HTTP scenario service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--data-dir", required=True,
                   help="region directory containing scenario.toml")
    p.add_argument("--out", default=None, help="job output directory")
    p.add_argument("--job-workers", type=int, default=1)
    p.add_argument("--ui-dir", default=None, help="static web UI directory")
    p.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InfeasibleChargingError, ScenarioError) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except EfleetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
