"""Cost and emissions as the BEV share of the fleet rises from 0 to 100%.

Run from the repository root:  python demos/05_penetration_sweep.py
"""

from pathlib import Path

from efleet.scenario import penetration_sweep
from efleet.workflow import load_region, scenario_from_region

DATA = Path(__file__).resolve().parent.parent / "data"

region = load_region(DATA / "scenario.toml")
scenario = scenario_from_region(region)
points = penetration_sweep(scenario, steps=11)

max_cost = max(p[1] for p in points)
max_co2 = max(p[2] for p in points)

print("BEV share    cost (USD)         CO2 (kg)")
for fraction, cost, co2 in points:
    cost_bar = "#" * round(30 * cost / max_cost)
    co2_bar = "*" * round(30 * co2 / max_co2)
    print(f"  {fraction:5.0%}  {cost:13,.0f} {cost_bar:31} {co2:13,.0f} {co2_bar}")

print("\nblending is linear between the pure-diesel and pure-electric "
      "endpoints; mixed fleets interpolate both metrics.")
