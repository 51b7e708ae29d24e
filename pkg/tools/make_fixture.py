"""Regenerate the bundled synthetic region fixture under data/.

Deterministic: node/edge tables are literal, lengths derive from great-circle
distance times a fixed per-edge detour factor. Run from the repo root:

    python tools/make_fixture.py
"""

from __future__ import annotations

import json
import math
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "data"

# id, name-or-None, lat, lon, county
NODES = [
    (0, "Dallas", 32.7767, -96.7970, "dallas"),
    (1, "Austin", 30.2672, -97.7431, "travis"),
    (2, "Houston", 29.7604, -95.3698, "harris"),
    (3, "San Antonio", 29.4241, -98.4936, "bexar"),
    (4, "El Paso", 31.7619, -106.4850, "el_paso"),
    (5, "Laredo", 27.5306, -99.4803, "webb"),
    (6, "Corpus Christi", 27.8006, -97.3964, "nueces"),
    (7, "Beaumont", 30.0802, -94.1266, "jefferson"),
    (8, None, 32.3865, -96.8483, "dallas"),      # Waxahachie
    (9, None, 31.5493, -97.1467, "mclennan"),    # Waco
    (10, None, 32.3500, -100.1000, "el_paso"),   # Sweetwater
    (11, None, 29.8833, -97.9414, "hays"),       # San Marcos
    (12, None, 28.8922, -99.0950, "bexar"),      # Pearsall
    (13, None, 28.0386, -99.3506, "webb"),       # Encinal
    (14, None, 32.0954, -96.4689, "dallas"),     # Corsicana
    (15, None, 31.4638, -96.0580, "mclennan"),   # Buffalo
    (16, None, 30.7235, -95.5508, "harris"),     # Huntsville
    (17, None, 29.6806, -97.6475, "hays"),       # Luling
    (18, None, 29.7066, -96.5397, "colorado"),   # Columbus
    (19, None, 30.1828, -96.9364, "travis"),     # Giddings
    (20, None, 30.1669, -96.3977, "colorado"),   # Brenham
    (21, None, 29.8200, -94.3840, "jefferson"),  # Winnie
    (22, None, 28.9672, -98.4786, "bexar"),      # Pleasanton
    (23, None, 28.0942, -97.8281, "nueces"),     # Mathis
    (24, None, 27.8825, -98.6178, "webb"),       # Freer
    (25, None, 28.8053, -97.0036, "victoria"),   # Victoria
    (26, None, 29.3116, -96.1027, "colorado"),   # Wharton
    (27, None, 31.4000, -105.1500, "el_paso"),   # Sierra Blanca
    (28, None, 31.0000, -103.9000, "el_paso"),   # Van Horn / Kent
    (29, None, 30.7000, -102.6000, "el_paso"),   # Fort Stockton
    (30, None, 30.3500, -101.3000, "el_paso"),   # Ozona
    (31, None, 30.0000, -100.0000, "bexar"),     # Junction
    (32, None, 31.9000, -104.8500, "el_paso"),   # Cornudas
    (33, None, 32.0500, -103.2000, "el_paso"),   # Pecos
    (34, None, 32.2000, -101.6000, "el_paso"),   # Big Spring
    (35, None, 32.5500, -98.5500, "mclennan"),   # Weatherford
    (36, None, 30.6280, -96.3344, "colorado"),   # College Station
    (37, None, 29.5016, -97.4525, "hays"),       # Gonzales
    (38, None, 30.7110, -94.9330, "jefferson"),  # Livingston
    (39, None, 29.5572, -95.8086, "harris"),     # Rosenberg
]

COUNTY_UTILITY = {
    "dallas": "oncor", "mclennan": "oncor", "el_paso": "oncor",
    "travis": "austin_energy", "hays": "austin_energy",
    "bexar": "austin_energy", "webb": "austin_energy",
    "harris": "centerpoint", "jefferson": "centerpoint",
    "nueces": "centerpoint", "victoria": "centerpoint",
    "colorado": "centerpoint",
}

# (u, v, highway)
EDGES = [
    (0, 8, "I-35E"), (8, 9, "I-35"), (9, 1, "I-35"),
    (1, 11, "I-35"), (11, 3, "I-35"),
    (3, 12, "I-35S"), (12, 13, "I-35S"), (13, 5, "I-35S"),
    (0, 14, "I-45"), (14, 15, "I-45"), (15, 16, "I-45"), (16, 2, "I-45"),
    (3, 17, "I-10"), (17, 18, "I-10"), (18, 2, "I-10"),
    (1, 19, "US-290"), (19, 20, "US-290"), (20, 2, "US-290"),
    (2, 21, "I-10E"), (21, 7, "I-10E"),
    (3, 22, "I-37"), (22, 23, "I-37"), (23, 6, "I-37"),
    (5, 24, "US-59S"), (24, 6, "US-59S"),
    (6, 25, "US-77"), (25, 26, "US-77"), (26, 2, "US-77"),
    (4, 27, "I-10W"), (27, 28, "I-10W"), (28, 29, "I-10W"), (29, 30, "I-10W"),
    (30, 31, "I-10W"), (31, 3, "I-10W"),
    (4, 32, "I-20"), (32, 33, "I-20"), (33, 34, "I-20"), (34, 10, "I-20"),
    (10, 35, "I-20"), (35, 0, "I-20"),
    (9, 36, "SH-6"), (36, 2, "SH-6"),
    (1, 37, "US-183"), (37, 25, "US-183"),
    (2, 39, "US-59"), (39, 25, "US-59"),
    (7, 38, "US-69"), (38, 16, "US-69"),
    (35, 9, "US-84"),
    (28, 32, "SH-18"),
    (31, 12, "SH-55"),
    (23, 25, "US-87C"),
    (18, 19, "SH-71"),
    (15, 36, "SH-7"),
    (8, 14, "US-287"),
    (17, 22, "SH-97"),
    (13, 24, "SH-44"),
    (21, 38, "SH-146"),
]

TARIFFS = [("austin_energy", 72.0), ("centerpoint", 110.0), ("oncor", 95.0)]
INTENSITY = [("austin_energy", 380.0), ("centerpoint", 520.0), ("oncor", 450.0)]
DIESEL = [("*", 3.95), ("dallas", 3.85), ("harris", 3.75), ("travis", 4.05)]

# city -> freight weight (used pairwise to synthesize yearly tonnage)
WEIGHTS = {
    "Dallas": 1.30, "Houston": 1.40, "San Antonio": 0.90, "Austin": 0.80,
    "El Paso": 0.40, "Corpus Christi": 0.35, "Laredo": 0.45, "Beaumont": 0.30,
}


def haversine_km(lat1, lon1, lat2, lon2):
    p1, p2 = math.radians(lat1), math.radians(lat2)
    dp = p2 - p1
    dl = math.radians(lon2 - lon1)
    a = math.sin(dp / 2) ** 2 + math.cos(p1) * math.cos(p2) * math.sin(dl / 2) ** 2
    return 2 * 6371.0 * math.asin(math.sqrt(a))


def edge_speed(highway: str) -> float:
    if highway.startswith("I-"):
        return 105.0
    if highway.startswith("US-"):
        return 95.0
    return 88.0


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    coords = {nid: (lat, lon) for nid, _, lat, lon, _ in NODES}

    nodes_json = []
    for nid, city, lat, lon, county in NODES:
        nodes_json.append({
            "id": nid, "lat": lat, "lon": lon, "county": county,
            "utility_id": COUNTY_UTILITY[county], "city": city,
        })
    edges_json = []
    for u, v, highway in EDGES:
        (lat1, lon1), (lat2, lon2) = coords[u], coords[v]
        detour = 1.10 + 0.02 * ((u + 2 * v) % 4)
        length = round(haversine_km(lat1, lon1, lat2, lon2) * detour, 1)
        # hops beyond ~215 km break charging feasibility for the default vehicle
        assert length <= 215.0, f"edge {u}-{v} too long ({length} km)"
        edges_json.append({"u": u, "v": v, "length_km": length,
                           "speed_kph": edge_speed(highway), "highway": highway})
    with open(OUT / "network.json", "w", encoding="utf-8") as fh:
        json.dump({"nodes": nodes_json, "edges": edges_json}, fh, indent=2)
        fh.write("\n")

    with open(OUT / "tariffs.csv", "w", encoding="utf-8") as fh:
        fh.write("utility_id,energy_rate_usd_per_mwh\n")
        for utility, rate in TARIFFS:
            fh.write(f"{utility},{rate}\n")

    with open(OUT / "carbon_intensity.csv", "w", encoding="utf-8") as fh:
        fh.write("region_id,gco2_per_kwh\n")
        for region, value in INTENSITY:
            fh.write(f"{region},{value}\n")

    with open(OUT / "diesel_prices.csv", "w", encoding="utf-8") as fh:
        fh.write("county,usd_per_gallon\n")
        for county, price in DIESEL:
            fh.write(f"{county},{price}\n")

    cities = sorted(WEIGHTS)
    with open(OUT / "freight.csv", "w", encoding="utf-8") as fh:
        fh.write("origin,destination,tons_per_year\n")
        for i, origin in enumerate(cities):
            for dest in cities[i + 1:]:
                tons = round(WEIGHTS[origin] * WEIGHTS[dest] * 8.0e5 / 1000.0) * 1000
                fh.write(f"{origin},{dest},{tons}\n")

    scenario = """\
# Synthetic eight-city region used by tests, demos and the HTTP service.
[paths]
network = "network.json"
tariffs = "tariffs.csv"
diesel_prices = "diesel_prices.csv"
carbon_intensity = "carbon_intensity.csv"
freight = "freight.csv"

[vehicle]
eta_charge = 0.95
eta_discharge = 0.95
eta_wheel_kwh_per_mile = 2.0
battery_max_kwh = 600.0
battery_min_kwh = 60.0
charge_power_max_kw = 750.0
charge_power_min_kw = 0.0
soc_initial_kwh = 600.0
soc_terminal_kwh = 600.0
capacity_tons = 20.0
charge_dwell_h = 0.75
diesel_mpg = 6.5
diesel_kgco2_per_gal = 10.19

[scenario]
region = "texas8"
cities = [
    "Austin", "Beaumont", "Corpus Christi", "Dallas",
    "El Paso", "Houston", "Laredo", "San Antonio",
]
bev_fraction = 1.0
days = 365
spacing_km = 50.0
k_routes = 3
sweep_steps = 11
"""
    (OUT / "scenario.toml").write_text(scenario, encoding="utf-8")
    print(f"fixture written to {OUT}: {len(nodes_json)} nodes, {len(edges_json)} edges")


if __name__ == "__main__":
    main()
