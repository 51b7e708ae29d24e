"""A full yearly fleet scenario: costs, emissions and spatial demand.

Run from the repository root:  python demos/04_fleet_year.py
"""

from pathlib import Path

from efleet.scenario import run_scenario
from efleet.workflow import load_region, scenario_from_region

DATA = Path(__file__).resolve().parent.parent / "data"

region = load_region(DATA / "scenario.toml")
scenario = scenario_from_region(region)
result = run_scenario(scenario)

print(f"region {scenario.region}: {len(scenario.od_pairs)} O-D pairs, "
      f"{scenario.days} days, solved in {result.runtime_s:.2f}s\n")

print(f"{'fleet':6} {'cost (USD)':>14} {'CO2 (kg)':>14} {'energy (MWh)':>13}")
print(f"{'BEV':6} {result.bev.cost_usd:14,.0f} {result.bev.co2_kg:14,.0f} "
      f"{result.bev.energy_kwh / 1000.0:13,.0f}")
print(f"{'ICEV':6} {result.icev.cost_usd:14,.0f} {result.icev.co2_kg:14,.0f} "
      f"{result.icev.energy_mwh:13,.0f}")
print(f"\nICEV/BEV energy ratio: {result.energy_ratio:.2f}")

print("\ncharging demand by utility (GWh):")
for utility, kwh in sorted(result.charge_by_utility.items(),
                           key=lambda kv: -kv[1]):
    print(f"  {utility:15} {kwh / 1e6:8.2f}")

print("\ndiesel demand by county (top 5, thousand gallons):")
ranked = sorted(result.fuel_by_county.items(), key=lambda kv: -kv[1])
for county, gallons in ranked[:5]:
    print(f"  {county:15} {gallons / 1e3:8.1f}")

print("\nemission reduction by county (top 5, tonnes CO2):")
ranked = sorted(result.emission_reduction_by_county.items(), key=lambda kv: -kv[1])
for county, kg in ranked[:5]:
    print(f"  {county:15} {kg / 1e3:8.1f}")
