"""Freight-electrification scenario engine.

Builds long-haul truck routes with en-route charging sites over a road
network, solves each route-day's charging-cost minimization exactly, and
aggregates yearly fleet cost, CO2 and spatial energy demand for
battery-electric versus diesel fleets.
"""

from .errors import (
    EfleetError,
    GraphIntegrityError,
    InfeasibleChargingError,
    LoadCapacityError,
    MissingDieselPriceError,
    MissingFactorError,
    MissingTariffError,
    NoRouteError,
    UnknownCityError,
    ValidationError,
)
from .network import (
    ChargingSite,
    NetworkNode,
    RoadEdge,
    RoadGraph,
    Route,
    Segment,
    build_graph,
    k_fastest_routes,
    place_charging_sites,
)
from .solver import (
    ChargeInstance,
    ChargePlan,
    check_plan,
    oracle_solve,
    solve,
    solve_day,
)
from .vehicle import (
    DIESEL_MWH_PER_GALLON,
    KM_PER_MILE,
    EmissionFactors,
    SegmentEnergy,
    VehicleSpec,
    bev_emissions,
    icev_emissions,
    icev_fuel,
    segment_discharge,
)

__version__ = "0.1.0"
