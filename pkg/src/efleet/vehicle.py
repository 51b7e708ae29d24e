"""Per-segment BEV discharge, ICEV diesel consumption and CO2 accounting."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import LoadCapacityError, MissingFactorError
from .network import Route, Segment

KM_PER_MILE = 1.609344
DIESEL_MWH_PER_GALLON = 0.0407


@dataclass(frozen=True)
class VehicleSpec:
    """Battery and drivetrain parameters for one vehicle class.

    ``eta_wheel_kwh_per_mile`` is the tractive energy drawn per mile at
    full load; discharge power scales linearly with the load fraction.
    """

    eta_charge: float = 0.95
    eta_discharge: float = 0.95
    eta_wheel_kwh_per_mile: float = 2.0
    battery_max_kwh: float = 600.0
    battery_min_kwh: float = 60.0
    charge_power_max_kw: float = 750.0
    charge_power_min_kw: float = 0.0
    soc_initial_kwh: float = 600.0
    soc_terminal_kwh: float = 600.0
    capacity_tons: float = 20.0
    charge_dwell_h: float = 0.75
    diesel_mpg: float = 6.5
    diesel_kgco2_per_gal: float = 10.19

    def __post_init__(self):
        if not (0.0 < self.eta_charge <= 1.0):
            raise ValueError(f"eta_charge must be in (0, 1], got {self.eta_charge}")
        if not (0.0 < self.eta_discharge <= 1.0):
            raise ValueError(f"eta_discharge must be in (0, 1], got {self.eta_discharge}")
        if self.eta_wheel_kwh_per_mile <= 0:
            raise ValueError("eta_wheel_kwh_per_mile must be > 0")
        if not (0.0 <= self.battery_min_kwh < self.battery_max_kwh):
            raise ValueError(
                f"need 0 <= battery_min < battery_max, got "
                f"[{self.battery_min_kwh}, {self.battery_max_kwh}]")
        for name, soc in (("soc_initial_kwh", self.soc_initial_kwh),
                          ("soc_terminal_kwh", self.soc_terminal_kwh)):
            if not (self.battery_min_kwh <= soc <= self.battery_max_kwh):
                raise ValueError(f"{name}={soc} outside battery bounds")
        if self.charge_power_max_kw < self.charge_power_min_kw or self.charge_power_min_kw < 0:
            raise ValueError("need charge_power_max >= charge_power_min >= 0")
        if self.capacity_tons <= 0:
            raise ValueError("capacity_tons must be > 0")
        if self.charge_dwell_h <= 0:
            raise ValueError("charge_dwell_h must be > 0")
        if self.diesel_mpg <= 0:
            raise ValueError("diesel_mpg must be > 0")
        if self.diesel_kgco2_per_gal < 0:
            raise ValueError("diesel_kgco2_per_gal must be >= 0")


@dataclass(frozen=True)
class SegmentEnergy:
    index: int
    power_kw: float
    energy_kwh: float


@dataclass(frozen=True)
class EmissionFactors:
    """Grid carbon intensity per region plus the diesel energy constant."""

    grid_gco2_per_kwh: dict[str, float] = field(default_factory=dict)
    diesel_mwh_per_gal: float = DIESEL_MWH_PER_GALLON

    def __post_init__(self):
        for region, value in self.grid_gco2_per_kwh.items():
            if value < 0:
                raise ValueError(f"carbon intensity for {region!r} is negative")


def segment_discharge(spec: VehicleSpec, segment: Segment, load_tons: float) -> SegmentEnergy:
    """Wheel-side discharge power and energy for one segment at the given load.

    Power is eta_wheel * speed(mph) * load fraction; energy is power times
    segment duration. Energy for a fixed distance is speed-invariant.
    """
    if load_tons < 0:
        raise LoadCapacityError(f"load {load_tons} tons is negative")
    if load_tons > spec.capacity_tons:
        raise LoadCapacityError(
            f"load {load_tons} tons exceeds vehicle capacity {spec.capacity_tons}")
    speed_mph = segment.speed_kph / KM_PER_MILE
    power_kw = spec.eta_wheel_kwh_per_mile * speed_mph * (load_tons / spec.capacity_tons)
    return SegmentEnergy(index=segment.index, power_kw=power_kw,
                         energy_kwh=power_kw * segment.duration_h)


def icev_fuel(spec: VehicleSpec, route: Route) -> tuple[dict[str, float], float, float]:
    """Diesel gallons per county, total gallons and total energy for one trip.

    Each segment's fuel is attributed to the county of the segment's start
    site. Energy equivalent uses the 0.0407 MWh/gallon diesel constant.
    """
    by_county: dict[str, float] = {}
    total = 0.0
    for segment in route.segments:
        miles = segment.distance_km / KM_PER_MILE
        gallons = miles / spec.diesel_mpg
        county = route.sites[segment.index].county
        by_county[county] = by_county.get(county, 0.0) + gallons
        total += gallons
    return by_county, total, total * DIESEL_MWH_PER_GALLON


def icev_emissions(total_gallons: float, spec: VehicleSpec) -> float:
    """Total kg CO2-equivalent from burning the given diesel volume."""
    if total_gallons < 0:
        raise ValueError(f"total_gallons must be >= 0, got {total_gallons}")
    return total_gallons * spec.diesel_kgco2_per_gal


def bev_emissions(charge_by_region: dict[str, float], factors: EmissionFactors) -> float:
    """Total kg CO2-equivalent of grid charging, summed over regions."""
    missing = sorted(r for r in charge_by_region if r not in factors.grid_gco2_per_kwh)
    if missing:
        raise MissingFactorError(
            f"no carbon intensity for region(s): {', '.join(missing)}")
    return sum(kwh * factors.grid_gco2_per_kwh[region] / 1000.0
               for region, kwh in charge_by_region.items())
