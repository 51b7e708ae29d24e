"""Yearly fleet scenario execution over origin-destination pairs and routes."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional

from .errors import EfleetError, InfeasibleChargingError

if TYPE_CHECKING:
    from .dataio import DieselPriceTable
from .network import Route
from .solver import ChargePlan, solve_day
from .vehicle import EmissionFactors, VehicleSpec, bev_emissions, icev_fuel

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FreightDemand:
    origin: str
    destination: str
    tons_per_year: float

    def __post_init__(self):
        if self.tons_per_year < 0:
            raise ValueError(f"tons_per_year must be >= 0, got {self.tons_per_year}")
        if self.origin == self.destination and self.tons_per_year > 0:
            raise ValueError(
                f"origin equals destination ({self.origin!r}) with nonzero tons")

    @property
    def pair_key(self) -> tuple[str, str]:
        return (self.origin, self.destination)


@dataclass(frozen=True)
class Scenario:
    """Everything one yearly run needs: demands, priced routes, vehicle, tables."""

    region: str
    od_pairs: tuple[FreightDemand, ...]
    routes: dict[tuple[str, str], tuple[Route, ...]]
    spec: VehicleSpec
    factors: EmissionFactors
    diesel: "DieselPriceTable"
    days: int = 365
    bev_fraction: float = 1.0

    def __post_init__(self):
        if not (0.0 <= self.bev_fraction <= 1.0):
            raise ValueError(f"bev_fraction {self.bev_fraction} outside [0, 1]")
        if self.days < 1:
            raise ValueError(f"days must be >= 1, got {self.days}")
        for demand in self.od_pairs:
            if demand.pair_key not in self.routes or not self.routes[demand.pair_key]:
                raise ValueError(f"no routes for O-D pair {demand.pair_key}")


@dataclass(frozen=True)
class RouteYearResult:
    """Yearly BEV totals for one candidate route of one O-D pair."""

    route_id: str
    cost_usd: float
    co2_kg: float
    energy_kwh: float
    charge_by_site: dict[int, float]
    trips_per_day: int
    plan: Optional[ChargePlan] = field(default=None, compare=False)


@dataclass(frozen=True)
class PairResult:
    """Chosen route of one O-D pair with its BEV and ICEV yearly figures."""

    demand: FreightDemand
    route: Route
    bev: RouteYearResult
    fuel_by_county: dict[str, float]
    gallons: float


class ScenarioError(EfleetError):
    """Scenario-level failure, annotated with the offending O-D pair."""


def trips_per_day(demand: FreightDemand, capacity_tons: float, days: int) -> int:
    """Trips needed per day so the daily freight share fits the vehicle capacity."""
    if capacity_tons <= 0:
        raise ValueError("capacity_tons must be > 0")
    if days < 1:
        raise ValueError("days must be >= 1")
    if demand.tons_per_year <= 0:
        return 0
    daily = demand.tons_per_year / days
    return max(1, math.ceil(daily / capacity_tons - 1e-9))


def region_key(county: str, utility_id: str, factors: EmissionFactors) -> str:
    """Carbon-intensity region for a site: its utility, else its county."""
    if utility_id in factors.grid_gco2_per_kwh:
        return utility_id
    if county in factors.grid_gco2_per_kwh:
        return county
    return utility_id


def evaluate_route_year(route: Route, demand: FreightDemand, spec: VehicleSpec,
                        factors: EmissionFactors, days: int = 365,
                        literal_day_loop: bool = False) -> RouteYearResult:
    """Yearly BEV cost/CO2/energy for one route.

    Inputs are time-invariant, so the default path solves one representative
    day and scales by the day count; ``literal_day_loop`` re-solves every day
    for validation (identical results, 365x the work).
    """
    trips = trips_per_day(demand, spec.capacity_tons, days)
    if trips == 0:
        return RouteYearResult(route_id=route.route_id, cost_usd=0.0, co2_kg=0.0,
                               energy_kwh=0.0, charge_by_site={}, trips_per_day=0)
    load = min(spec.capacity_tons, demand.tons_per_year / days / trips)

    if literal_day_loop:
        cost = 0.0
        site_kwh: dict[int, float] = {}
        plan = None
        for _ in range(days):
            plan = solve_day(route, spec, load)
            cost += plan.total_cost_usd * trips
            for k, e in enumerate(plan.e_plus_kwh):
                if e > 0.0:
                    site_kwh[k] = site_kwh.get(k, 0.0) + e * trips
    else:
        plan = solve_day(route, spec, load)
        scale = trips * days
        cost = plan.total_cost_usd * scale
        site_kwh = {k: e * scale for k, e in enumerate(plan.e_plus_kwh) if e > 0.0}

    energy = sum(site_kwh.values())
    charge_by_region: dict[str, float] = {}
    for k, kwh in site_kwh.items():
        site = route.sites[k]
        region = region_key(site.county, site.utility_id, factors)
        charge_by_region[region] = charge_by_region.get(region, 0.0) + kwh
    co2 = bev_emissions(charge_by_region, factors)
    return RouteYearResult(route_id=route.route_id, cost_usd=cost, co2_kg=co2,
                           energy_kwh=energy, charge_by_site=site_kwh,
                           trips_per_day=trips, plan=plan)


def best_route(results: list[RouteYearResult]) -> str:
    """Route id minimizing cost, then CO2, then route id."""
    if not results:
        raise ValueError("no feasible route results to choose from")
    winner = min(results, key=lambda r: (r.cost_usd, r.co2_kg, r.route_id))
    return winner.route_id


def evaluate_pair(demand: FreightDemand, routes: tuple[Route, ...], spec: VehicleSpec,
                  factors: EmissionFactors, days: int,
                  literal_day_loop: bool = False) -> PairResult:
    """Evaluate all candidate routes of one O-D pair and keep the best."""
    results: list[RouteYearResult] = []
    kept: dict[str, Route] = {}
    failures: list[str] = []
    for route in routes:
        try:
            results.append(evaluate_route_year(route, demand, spec, factors, days,
                                               literal_day_loop=literal_day_loop))
            kept[route.route_id] = route
        except InfeasibleChargingError as exc:
            failures.append(str(exc))
    if not results:
        raise ScenarioError(
            f"all {len(routes)} routes infeasible for pair "
            f"{demand.origin}->{demand.destination}: {'; '.join(failures)}")
    chosen_id = best_route(results)
    chosen = next(r for r in results if r.route_id == chosen_id)
    route = kept[chosen_id]

    trips = chosen.trips_per_day
    fuel_by_county, gallons_trip, _ = icev_fuel(spec, route)
    factor = trips * days
    fuel_year = {county: g * factor for county, g in fuel_by_county.items()}
    return PairResult(demand=demand, route=route, bev=chosen,
                      fuel_by_county=fuel_year, gallons=gallons_trip * factor)


def run_pairs(scenario: Scenario, max_workers: int | None = None,
              partial: bool = False,
              literal_day_loop: bool = False) -> list[PairResult]:
    """Evaluate every O-D pair, optionally in parallel.

    Results come back ordered by pair key regardless of worker scheduling,
    so parallel and serial runs reduce identically.
    """
    demands = sorted(scenario.od_pairs, key=lambda d: d.pair_key)

    def work(demand: FreightDemand):
        return evaluate_pair(demand, scenario.routes[demand.pair_key],
                             scenario.spec, scenario.factors, scenario.days,
                             literal_day_loop=literal_day_loop)

    outcomes: list[PairResult] = []
    if max_workers is not None and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            futures = [(d.pair_key, pool.submit(work, d)) for d in demands]
            for key, future in futures:
                try:
                    outcomes.append(future.result())
                except ScenarioError:
                    if not partial:
                        raise
                    log.warning("skipping infeasible pair %s", key)
    else:
        for demand in demands:
            try:
                outcomes.append(work(demand))
            except ScenarioError:
                if not partial:
                    raise
                log.warning("skipping infeasible pair %s", demand.pair_key)
    return outcomes


def run_scenario(scenario: Scenario, max_workers: int | None = None,
                 partial: bool = False, sweep_steps: int | None = None,
                 literal_day_loop: bool = False):
    """Full scenario: evaluate pairs, pick best routes, aggregate fleet totals.

    Returns a reporting.ScenarioResult; blended totals use the scenario's
    BEV fraction, and the sweep (when requested) linearly interpolates the
    two pure-fleet endpoints.
    """
    import time as _time

    from .reporting import aggregate

    t0 = _time.perf_counter()
    outcomes = run_pairs(scenario, max_workers=max_workers, partial=partial,
                         literal_day_loop=literal_day_loop)
    result = aggregate(outcomes, diesel=scenario.diesel, factors=scenario.factors,
                       spec=scenario.spec, bev_fraction=scenario.bev_fraction,
                       sweep_steps=sweep_steps)
    return result.with_runtime(_time.perf_counter() - t0)


def penetration_sweep(scenario: Scenario, steps: int,
                      max_workers: int | None = None) -> list[tuple[float, float, float]]:
    """(fraction, cost, co2) at evenly spaced BEV fractions from 0 to 1."""
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps}")
    result = run_scenario(scenario, max_workers=max_workers, sweep_steps=steps)
    return list(result.sweep)
