"""Solve one route-day charging problem and inspect the plan.

Run from the repository root:  python demos/03_daily_charge_plan.py
"""

from pathlib import Path

from efleet.dataio import load_tariffs, price_route
from efleet.network import build_graph, k_fastest_routes
from efleet.solver import ChargeInstance, check_plan, oracle_solve, solve_day
from efleet.vehicle import VehicleSpec, segment_discharge

DATA = Path(__file__).resolve().parent.parent / "data"

graph = build_graph(DATA / "network.json")
tariffs = load_tariffs(DATA / "tariffs.csv")
spec = VehicleSpec()

route = price_route(k_fastest_routes(graph, "Dallas", "Houston", k=1)[0], tariffs)
plan = solve_day(route, spec, load_tons=spec.capacity_tons)

print(f"route {route.route_id} at full load, battery "
      f"[{spec.battery_min_kwh:.0f}, {spec.battery_max_kwh:.0f}] kWh")
print(f"optimal daily charging cost: ${plan.total_cost_usd:.2f}\n")
print(" k  stop  charge kWh  power kW  price $/MWh  county")
for site in route.sites:
    k = site.index
    mark = "yes" if plan.x[k] else "  -"
    print(f"{k:2d}  {mark}   {plan.e_plus_kwh[k]:9.1f} {plan.p_plus_kw[k]:9.1f}"
          f"  {site.price_usd_per_mwh:10.1f}  {site.county}")

print("\nbattery trace (post-charge / post-segment):")
print("  " + " -> ".join(f"{soc:.0f}" for soc in plan.soc_trace))

# The exhaustive oracle enumerates every stop subset; it must agree.
instance = ChargeInstance(
    tuple(s.price_usd_per_mwh for s in route.sites),
    tuple(segment_discharge(spec, seg, spec.capacity_tons).energy_kwh
          for seg in route.segments),
    spec)
reference = oracle_solve(instance)
print(f"\nbrute-force oracle cost:    ${reference.total_cost_usd:.2f}")
print(f"constraint violations:      {check_plan(instance, plan) or 'none'}")
