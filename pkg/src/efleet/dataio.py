"""Input-table loading, route pricing and route JSON persistence."""

from __future__ import annotations

import csv
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import MissingTariffError, ValidationError
from .network import ChargingSite, Route, Segment
from .scenario import FreightDemand
from .vehicle import EmissionFactors, VehicleSpec


@dataclass(frozen=True)
class TariffTable:
    """Flat annual energy rate per utility, USD/MWh."""

    rows: dict[str, float]

    def rate_for(self, utility_id: str) -> float:
        if utility_id not in self.rows:
            raise MissingTariffError(f"no tariff for utility {utility_id!r}")
        return self.rows[utility_id]


@dataclass(frozen=True)
class DieselPriceTable:
    """Diesel USD/gallon per county; '*' is the fallback row."""

    rows: dict[str, float]

    def price_for(self, county: str) -> float:
        if county in self.rows:
            return self.rows[county]
        if "*" in self.rows:
            return self.rows["*"]
        from .errors import MissingDieselPriceError
        raise MissingDieselPriceError(
            f"no diesel price for county {county!r} and no '*' fallback row")


@dataclass(frozen=True)
class Tables:
    tariffs: TariffTable
    diesel: DieselPriceTable
    factors: EmissionFactors
    demands: tuple[FreightDemand, ...]
    spec: VehicleSpec


@dataclass(frozen=True)
class ScenarioConfig:
    """Parsed scenario TOML: file paths plus run parameters."""

    region: str
    cities: tuple[str, ...]
    bev_fraction: float
    days: int
    spacing_km: float
    k_routes: int
    paths: dict[str, Path]
    vehicle: VehicleSpec
    sweep_steps: int = 11


def _read_rows(path: Path, columns: tuple[str, ...]):
    """Yield (line_no, row_dict) from a CSV, validating the header and shape."""
    src = str(path)
    if not path.exists():
        raise ValidationError("file not found", source=src)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValidationError("missing header row", source=src, location="line 1")
        if tuple(h.strip() for h in header) != columns:
            raise ValidationError(
                f"expected header {','.join(columns)!r}, got {','.join(header)!r}",
                source=src, location="line 1")
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(columns):
                raise ValidationError(f"expected {len(columns)} fields, got {len(row)}",
                                      source=src, location=f"line {line_no}")
            yield line_no, dict(zip(columns, (cell.strip() for cell in row)))


def _parse_float(value: str, *, src: str, line_no: int, field_name: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ValidationError(f"not a number: {value!r}", source=src,
                              location=f"line {line_no}", field=field_name) from None


def load_tariffs(path: str | Path) -> TariffTable:
    path = Path(path)
    rows: dict[str, float] = {}
    for line_no, row in _read_rows(path, ("utility_id", "energy_rate_usd_per_mwh")):
        key = row["utility_id"]
        if key in rows:
            raise ValidationError(f"duplicate utility_id {key!r}", source=str(path),
                                  location=f"line {line_no}", field="utility_id")
        rate = _parse_float(row["energy_rate_usd_per_mwh"], src=str(path),
                            line_no=line_no, field_name="energy_rate_usd_per_mwh")
        if rate < 0:
            raise ValidationError(f"negative rate {rate}", source=str(path),
                                  location=f"line {line_no}", field="energy_rate_usd_per_mwh")
        rows[key] = rate
    return TariffTable(rows=rows)


def load_diesel_prices(path: str | Path) -> DieselPriceTable:
    path = Path(path)
    rows: dict[str, float] = {}
    for line_no, row in _read_rows(path, ("county", "usd_per_gallon")):
        key = row["county"]
        if key in rows:
            raise ValidationError(f"duplicate county {key!r}", source=str(path),
                                  location=f"line {line_no}", field="county")
        price = _parse_float(row["usd_per_gallon"], src=str(path),
                             line_no=line_no, field_name="usd_per_gallon")
        if price < 0:
            raise ValidationError(f"negative price {price}", source=str(path),
                                  location=f"line {line_no}", field="usd_per_gallon")
        rows[key] = price
    return DieselPriceTable(rows=rows)


def load_carbon_intensity(path: str | Path) -> EmissionFactors:
    path = Path(path)
    rows: dict[str, float] = {}
    for line_no, row in _read_rows(path, ("region_id", "gco2_per_kwh")):
        key = row["region_id"]
        if key in rows:
            raise ValidationError(f"duplicate region_id {key!r}", source=str(path),
                                  location=f"line {line_no}", field="region_id")
        value = _parse_float(row["gco2_per_kwh"], src=str(path),
                             line_no=line_no, field_name="gco2_per_kwh")
        if value < 0:
            raise ValidationError(f"negative intensity {value}", source=str(path),
                                  location=f"line {line_no}", field="gco2_per_kwh")
        rows[key] = value
    return EmissionFactors(grid_gco2_per_kwh=rows)


def load_freight(path: str | Path) -> tuple[FreightDemand, ...]:
    path = Path(path)
    demands = []
    seen: set[tuple[str, str]] = set()
    for line_no, row in _read_rows(path, ("origin", "destination", "tons_per_year")):
        tons = _parse_float(row["tons_per_year"], src=str(path),
                            line_no=line_no, field_name="tons_per_year")
        if tons < 0:
            raise ValidationError(f"negative tons {tons}", source=str(path),
                                  location=f"line {line_no}", field="tons_per_year")
        origin, dest = row["origin"], row["destination"]
        if origin == dest and tons > 0:
            raise ValidationError("origin equals destination with nonzero tons",
                                  source=str(path), location=f"line {line_no}",
                                  field="destination")
        key = (origin, dest)
        if key in seen:
            raise ValidationError(f"duplicate O-D pair {origin}->{dest}",
                                  source=str(path), location=f"line {line_no}")
        seen.add(key)
        demands.append(FreightDemand(origin=origin, destination=dest, tons_per_year=tons))
    return tuple(demands)


_VEHICLE_KEYS = {
    "eta_charge", "eta_discharge", "eta_wheel_kwh_per_mile", "battery_max_kwh",
    "battery_min_kwh", "charge_power_max_kw", "charge_power_min_kw",
    "soc_initial_kwh", "soc_terminal_kwh", "capacity_tons", "charge_dwell_h",
    "diesel_mpg", "diesel_kgco2_per_gal",
}


def load_config(path: str | Path) -> ScenarioConfig:
    """Parse a scenario TOML file; relative paths resolve against its directory."""
    path = Path(path)
    src = str(path)
    if not path.exists():
        raise ValidationError("file not found", source=src)
    try:
        with open(path, "rb") as fh:
            doc = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ValidationError(f"malformed TOML: {exc}", source=src) from exc

    for section in ("paths", "scenario"):
        if section not in doc:
            raise ValidationError(f"missing [{section}] section", source=src)
    raw_vehicle = doc.get("vehicle", {})
    unknown = set(raw_vehicle) - _VEHICLE_KEYS
    if unknown:
        raise ValidationError(f"unknown vehicle keys: {sorted(unknown)}",
                              source=src, field="vehicle")
    try:
        spec = VehicleSpec(**raw_vehicle)
    except (TypeError, ValueError) as exc:
        raise ValidationError(str(exc), source=src, field="vehicle") from exc

    base = path.parent
    required = ("network", "tariffs", "diesel_prices", "carbon_intensity", "freight")
    paths = {}
    for name in required:
        if name not in doc["paths"]:
            raise ValidationError(f"missing path entry {name!r}", source=src, field="paths")
        paths[name] = base / doc["paths"][name]

    sc = doc["scenario"]
    cities = tuple(sc.get("cities", ()))
    if len(cities) != len(set(cities)):
        raise ValidationError("duplicate cities", source=src, field="scenario.cities")
    bev_fraction = float(sc.get("bev_fraction", 1.0))
    if not (0.0 <= bev_fraction <= 1.0):
        raise ValidationError(f"bev_fraction {bev_fraction} outside [0, 1]",
                              source=src, field="scenario.bev_fraction")
    days = int(sc.get("days", 365))
    if days < 1:
        raise ValidationError(f"days must be >= 1, got {days}", source=src,
                              field="scenario.days")
    spacing = float(sc.get("spacing_km", 50.0))
    if spacing <= 0:
        raise ValidationError(f"spacing_km must be > 0, got {spacing}", source=src,
                              field="scenario.spacing_km")
    k_routes = int(sc.get("k_routes", 3))
    if k_routes < 1:
        raise ValidationError(f"k_routes must be >= 1, got {k_routes}", source=src,
                              field="scenario.k_routes")
    sweep_steps = int(sc.get("sweep_steps", 11))
    if sweep_steps < 2:
        raise ValidationError(f"sweep_steps must be >= 2, got {sweep_steps}",
                              source=src, field="scenario.sweep_steps")
    return ScenarioConfig(region=str(sc.get("region", "region")), cities=cities,
                          bev_fraction=bev_fraction, days=days, spacing_km=spacing,
                          k_routes=k_routes, paths=paths, vehicle=spec,
                          sweep_steps=sweep_steps)


def load_tables(config: ScenarioConfig) -> Tables:
    """Load every input table named by the config; fail with located errors."""
    return Tables(
        tariffs=load_tariffs(config.paths["tariffs"]),
        diesel=load_diesel_prices(config.paths["diesel_prices"]),
        factors=load_carbon_intensity(config.paths["carbon_intensity"]),
        demands=load_freight(config.paths["freight"]),
        spec=config.vehicle,
    )


def price_route(route: Route, tariffs: TariffTable) -> Route:
    """Fill per-site energy prices from the tariff table. Idempotent."""
    prices = []
    for site in route.sites:
        if site.utility_id not in tariffs.rows:
            raise MissingTariffError(
                f"route {route.route_id}: site {site.index} has unknown "
                f"utility {site.utility_id!r}")
        prices.append(tariffs.rows[site.utility_id])
    return route.with_prices(prices)


def route_to_dict(route: Route) -> dict:
    return {
        "route_id": route.route_id,
        "origin": route.origin_city,
        "destination": route.destination_city,
        "distance_km": route.total_distance_km,
        "duration_h": route.total_duration_h,
        "highways": list(route.highway_names),
        "nodes": list(route.node_path),
        "sites": [
            {"k": s.index, "node_id": s.node_id, "lat": s.lat, "lon": s.lon,
             "county": s.county, "utility_id": s.utility_id, "cum_km": s.cum_km}
            for s in route.sites
        ],
        "segments": [
            {"k": s.index, "d_km": s.distance_km, "v_kph": s.speed_kph,
             "t_h": s.duration_h}
            for s in route.segments
        ],
    }


def route_from_dict(doc: dict, *, source: str = "<route>") -> Route:
    try:
        sites = tuple(
            ChargingSite(index=s["k"], node_id=s["node_id"], lat=s["lat"], lon=s["lon"],
                         county=s["county"], utility_id=s["utility_id"], cum_km=s["cum_km"])
            for s in doc["sites"])
        segments = tuple(
            Segment(index=s["k"], distance_km=s["d_km"], speed_kph=s["v_kph"],
                    duration_h=s["t_h"])
            for s in doc["segments"])
        return Route(
            route_id=doc["route_id"], origin_city=doc["origin"],
            destination_city=doc["destination"], node_path=tuple(doc["nodes"]),
            segments=segments, sites=sites, total_distance_km=doc["distance_km"],
            total_duration_h=doc["duration_h"], highway_names=tuple(doc["highways"]))
    except KeyError as exc:
        raise ValidationError(f"missing route field {exc.args[0]!r}",
                              source=source) from exc


def save_routes(routes: list[Route], path: str | Path) -> None:
    """Write routes as a JSON array; byte-deterministic for identical input."""
    payload = [route_to_dict(r) for r in routes]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def load_routes(path: str | Path) -> list[Route]:
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON: {exc.msg}", source=str(path),
                              location=f"line {exc.lineno}") from exc
    if not isinstance(payload, list):
        raise ValidationError("route file must contain a JSON array", source=str(path))
    return [route_from_dict(doc, source=str(path)) for doc in payload]
