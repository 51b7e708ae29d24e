"""Build the bundled road network and look at alternative routes.

Run from the repository root:  python demos/01_network_and_routes.py
"""

from pathlib import Path

from efleet.network import build_graph, k_fastest_routes

DATA = Path(__file__).resolve().parent.parent / "data"

graph = build_graph(DATA / "network.json")
print(f"network: {len(graph.nodes)} nodes, {len(graph.edges)} edges, "
      f"{len(graph.city_index)} cities")
print("cities:", ", ".join(graph.city_index))

# The three fastest loopless routes between one O-D pair. The first is a
# true shortest-time path; alternatives deviate onto different highways.
for origin, dest in [("Dallas", "Houston"), ("El Paso", "Corpus Christi")]:
    print(f"\n{origin} -> {dest}")
    for route in k_fastest_routes(graph, origin, dest, k=3):
        print(f"  {route.route_id}: {route.total_distance_km:7.1f} km "
              f"{route.total_duration_h:5.2f} h  via {' / '.join(route.highway_names)}")
        print(f"      {len(route.sites)} charging sites, "
              f"{len(route.segments)} segments")
