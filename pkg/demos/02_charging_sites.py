"""How charging sites are placed along a route at distance increments.

Run from the repository root:  python demos/02_charging_sites.py
"""

from pathlib import Path

from efleet.network import build_graph, k_fastest_routes, place_charging_sites

DATA = Path(__file__).resolve().parent.parent / "data"

graph = build_graph(DATA / "network.json")
route = k_fastest_routes(graph, "San Antonio", "Houston", k=1)[0]

print(f"route {route.route_id}: {route.total_distance_km:.1f} km, "
      f"path of {len(route.node_path)} nodes")

# Sites snap to path nodes: walking the path, a site is emitted at the
# first node at least `spacing` km past the previous site; origin and
# destination are always sites. Larger spacing means fewer, longer segments.
for spacing in (50.0, 100.0, 200.0):
    sites, segments = place_charging_sites(graph, route.node_path, spacing_km=spacing)
    marks = ", ".join(f"{s.cum_km:.0f}" for s in sites)
    print(f"\nspacing {spacing:5.0f} km -> {len(sites)} sites at km [{marks}]")
    for seg in segments:
        print(f"   segment {seg.index}: {seg.distance_km:6.1f} km at "
              f"{seg.speed_kph:5.1f} kph = {seg.duration_h:4.2f} h")
