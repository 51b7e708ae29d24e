"""Wiring from config files to a runnable scenario: the tool pipeline."""

from __future__ import annotations

from dataclasses import dataclass

from .dataio import ScenarioConfig, Tables, load_config, load_tables, price_route
from .network import RoadGraph, Route, build_graph, k_fastest_routes
from .scenario import FreightDemand, Scenario


@dataclass(frozen=True)
class Region:
    """A loaded region: validated graph, tables and the config they came from."""

    name: str
    graph: RoadGraph
    tables: Tables
    config: ScenarioConfig


def load_region(config_path) -> Region:
    config = load_config(config_path)
    graph = build_graph(config.paths["network"])
    tables = load_tables(config)
    return Region(name=config.region, graph=graph, tables=tables, config=config)


def generate_priced_routes(region: Region, cities: tuple[str, ...],
                           k_routes: int, spacing_km: float,
                           ) -> dict[tuple[str, str], tuple[Route, ...]]:
    """Candidate routes for every unordered pair of the given cities, priced."""
    routes: dict[tuple[str, str], tuple[Route, ...]] = {}
    ordered = sorted(cities)
    for i, origin in enumerate(ordered):
        for dest in ordered[i + 1:]:
            found = k_fastest_routes(region.graph, origin, dest,
                                     k=k_routes, spacing_km=spacing_km)
            routes[(origin, dest)] = tuple(
                price_route(r, region.tables.tariffs) for r in found)
    return routes


def scenario_from_region(region: Region, *, cities: tuple[str, ...] | None = None,
                         bev_fraction: float | None = None, days: int | None = None,
                         k_routes: int | None = None,
                         spacing_km: float | None = None) -> Scenario:
    """Build a Scenario from a region, overriding config values where given.

    Freight demands are restricted to pairs whose endpoints are both in the
    selected city set; demand direction is normalized to sorted pair keys
    (routes are undirected).
    """
    cfg = region.config
    cities = tuple(cities if cities is not None else cfg.cities)
    chosen = set(cities)
    bev_fraction = cfg.bev_fraction if bev_fraction is None else bev_fraction
    days = cfg.days if days is None else days
    k_routes = cfg.k_routes if k_routes is None else k_routes
    spacing_km = cfg.spacing_km if spacing_km is None else spacing_km

    demands = []
    for demand in region.tables.demands:
        if demand.origin not in chosen or demand.destination not in chosen:
            continue
        origin, dest = sorted((demand.origin, demand.destination))
        demands.append(FreightDemand(origin=origin, destination=dest,
                                     tons_per_year=demand.tons_per_year))
    demands.sort(key=lambda d: d.pair_key)

    routes = generate_priced_routes(region, cities, k_routes, spacing_km)
    used = {d.pair_key for d in demands}
    routes = {key: value for key, value in routes.items() if key in used}
    return Scenario(region=region.name, od_pairs=tuple(demands), routes=routes,
                    spec=region.tables.spec, factors=region.tables.factors,
                    diesel=region.tables.diesel, days=days, bev_fraction=bev_fraction)
