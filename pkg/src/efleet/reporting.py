"""Aggregation of scenario outputs and report-file rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import TYPE_CHECKING, Iterable

from .errors import ValidationError
from .scenario import PairResult, region_key
from .vehicle import DIESEL_MWH_PER_GALLON, EmissionFactors, VehicleSpec

if TYPE_CHECKING:
    from .dataio import DieselPriceTable

COMPARISON_FORMATS = ("markdown", "csv", "json")


@dataclass(frozen=True)
class BevTotals:
    cost_usd: float
    co2_kg: float
    energy_kwh: float


@dataclass(frozen=True)
class IcevTotals:
    cost_usd: float
    co2_kg: float
    energy_mwh: float
    gallons: float


@dataclass(frozen=True)
class BlendedTotals:
    bev_fraction: float
    cost_usd: float
    co2_kg: float


@dataclass(frozen=True)
class ScenarioResult:
    """Fleet-level yearly aggregates plus the spatial breakdown maps."""

    bev: BevTotals
    icev: IcevTotals
    blended: BlendedTotals
    charge_by_utility: dict[str, float]
    fuel_by_county: dict[str, float]
    energy_by_county: dict[str, float]
    emission_reduction_by_county: dict[str, float]
    sweep: tuple[tuple[float, float, float], ...]
    runtime_s: float = 0.0

    def with_runtime(self, seconds: float) -> "ScenarioResult":
        return replace(self, runtime_s=seconds)

    @property
    def energy_ratio(self) -> float:
        """ICEV over BEV energy, both in MWh; inf when the BEV side is zero."""
        bev_mwh = self.bev.energy_kwh / 1000.0
        if bev_mwh == 0.0:
            return float("inf") if self.icev.energy_mwh > 0 else 0.0
        return self.icev.energy_mwh / bev_mwh


def _blend(fraction: float, bev: BevTotals, icev: IcevTotals) -> tuple[float, float]:
    cost = fraction * bev.cost_usd + (1.0 - fraction) * icev.cost_usd
    co2 = fraction * bev.co2_kg + (1.0 - fraction) * icev.co2_kg
    return cost, co2


def aggregate(pair_results: Iterable[PairResult], *, diesel: "DieselPriceTable",
              factors: EmissionFactors, spec: VehicleSpec, bev_fraction: float = 1.0,
              sweep_steps: int | None = None, runtime_s: float = 0.0) -> ScenarioResult:
    """Fold per-pair results into fleet totals and per-utility/per-county maps.

    BEV energy and CO2 are attributed to the charging site's county and
    utility; diesel fuel was already attributed to segment-start counties.
    Every map sums to its fleet-level total by construction.
    """
    charge_by_utility: dict[str, float] = {}
    energy_by_county: dict[str, float] = {}
    bev_co2_by_county: dict[str, float] = {}
    fuel_by_county: dict[str, float] = {}
    bev_cost = 0.0

    for pair in pair_results:
        bev_cost += pair.bev.cost_usd
        for k, kwh in sorted(pair.bev.charge_by_site.items()):
            site = pair.route.sites[k]
            charge_by_utility[site.utility_id] = (
                charge_by_utility.get(site.utility_id, 0.0) + kwh)
            energy_by_county[site.county] = (
                energy_by_county.get(site.county, 0.0) + kwh)
            region = region_key(site.county, site.utility_id, factors)
            if region not in factors.grid_gco2_per_kwh:
                from .errors import MissingFactorError
                raise MissingFactorError(f"no carbon intensity for region {region!r}")
            co2 = kwh * factors.grid_gco2_per_kwh[region] / 1000.0
            bev_co2_by_county[site.county] = (
                bev_co2_by_county.get(site.county, 0.0) + co2)
        for county, gallons in sorted(pair.fuel_by_county.items()):
            fuel_by_county[county] = fuel_by_county.get(county, 0.0) + gallons

    bev_energy = sum(energy_by_county.values())
    bev_co2 = sum(bev_co2_by_county.values())
    gallons = sum(fuel_by_county.values())
    icev_cost = sum(g * diesel.price_for(county)
                    for county, g in sorted(fuel_by_county.items()))
    icev_co2 = gallons * spec.diesel_kgco2_per_gal

    reduction: dict[str, float] = {}
    for county in sorted(set(fuel_by_county) | set(bev_co2_by_county)):
        icev_part = fuel_by_county.get(county, 0.0) * spec.diesel_kgco2_per_gal
        reduction[county] = icev_part - bev_co2_by_county.get(county, 0.0)

    bev = BevTotals(cost_usd=bev_cost, co2_kg=bev_co2, energy_kwh=bev_energy)
    icev = IcevTotals(cost_usd=icev_cost, co2_kg=icev_co2,
                      energy_mwh=gallons * DIESEL_MWH_PER_GALLON, gallons=gallons)
    cost, co2 = _blend(bev_fraction, bev, icev)
    blended = BlendedTotals(bev_fraction=bev_fraction, cost_usd=cost, co2_kg=co2)

    sweep: tuple[tuple[float, float, float], ...] = ()
    if sweep_steps is not None:
        if sweep_steps < 2:
            raise ValueError(f"sweep_steps must be >= 2, got {sweep_steps}")
        points = []
        for i in range(sweep_steps):
            f = i / (sweep_steps - 1)
            c, e = _blend(f, bev, icev)
            points.append((f, c, e))
        sweep = tuple(points)

    return ScenarioResult(bev=bev, icev=icev, blended=blended,
                          charge_by_utility=charge_by_utility,
                          fuel_by_county=fuel_by_county,
                          energy_by_county=energy_by_county,
                          emission_reduction_by_county=reduction,
                          sweep=sweep, runtime_s=runtime_s)


def result_to_dict(result: ScenarioResult) -> dict:
    return {
        "bev": {"cost_usd": result.bev.cost_usd, "co2_kg": result.bev.co2_kg,
                "energy_kwh": result.bev.energy_kwh},
        "icev": {"cost_usd": result.icev.cost_usd, "co2_kg": result.icev.co2_kg,
                 "energy_mwh": result.icev.energy_mwh, "gallons": result.icev.gallons},
        "blended": {"bev_fraction": result.blended.bev_fraction,
                    "cost_usd": result.blended.cost_usd,
                    "co2_kg": result.blended.co2_kg},
        "charge_by_utility": dict(sorted(result.charge_by_utility.items())),
        "fuel_by_county": dict(sorted(result.fuel_by_county.items())),
        "energy_by_county": dict(sorted(result.energy_by_county.items())),
        "emission_reduction_by_county": dict(
            sorted(result.emission_reduction_by_county.items())),
        "sweep": [{"bev_fraction": f, "cost_usd": c, "co2_kg": e}
                  for f, c, e in result.sweep],
        "runtime_s": result.runtime_s,
    }


def result_from_dict(doc: dict) -> ScenarioResult:
    try:
        return ScenarioResult(
            bev=BevTotals(**doc["bev"]),
            icev=IcevTotals(**doc["icev"]),
            blended=BlendedTotals(**doc["blended"]),
            charge_by_utility=dict(doc["charge_by_utility"]),
            fuel_by_county=dict(doc["fuel_by_county"]),
            energy_by_county=dict(doc["energy_by_county"]),
            emission_reduction_by_county=dict(doc["emission_reduction_by_county"]),
            sweep=tuple((p["bev_fraction"], p["cost_usd"], p["co2_kg"])
                        for p in doc["sweep"]),
            runtime_s=doc.get("runtime_s", 0.0),
        )
    except KeyError as exc:
        raise ValidationError(f"missing result field {exc.args[0]!r}") from exc


def _ranked(values: dict[str, float]) -> list[tuple[str, float]]:
    return sorted(values.items(), key=lambda kv: (-kv[1], kv[0]))


def _comparison_rows(result: ScenarioResult) -> list[tuple[str, float, float, float]]:
    return [
        ("BEV", result.bev.cost_usd, result.bev.co2_kg, result.bev.energy_kwh / 1000.0),
        ("ICEV", result.icev.cost_usd, result.icev.co2_kg, result.icev.energy_mwh),
    ]


def render_report(result: ScenarioResult, out_dir: str | Path,
                  comparison_format: str = "markdown") -> list[Path]:
    """Write the report artifact set into out_dir; returns the written paths.

    Emits the fleet comparison table (format selectable), per-utility and
    per-county demand CSVs, the county choropleth JSON, the penetration
    sweep CSV and the full result JSON. Byte-identical for identical input.
    """
    if comparison_format not in COMPARISON_FORMATS:
        raise ValueError(f"comparison_format must be one of {COMPARISON_FORMATS}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    rows = _comparison_rows(result)
    if comparison_format == "markdown":
        path = out / "comparison.md"
        lines = ["| Fleet | Cost (USD) | Emission (kg CO2 eq) | Energy (MWh) |",
                 "| --- | --- | --- | --- |"]
        for name, cost, co2, mwh in rows:
            lines.append(f"| {name} | {cost!r} | {co2!r} | {mwh!r} |")
        lines.append("")
        lines.append(f"ICEV/BEV energy ratio: {result.energy_ratio!r}")
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    elif comparison_format == "csv":
        path = out / "comparison.csv"
        lines = ["fleet,cost_usd,co2_kg,energy_mwh"]
        for name, cost, co2, mwh in rows:
            lines.append(f"{name},{cost!r},{co2!r},{mwh!r}")
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    else:
        path = out / "comparison.json"
        payload = {name: {"cost_usd": cost, "co2_kg": co2, "energy_mwh": mwh}
                   for name, cost, co2, mwh in rows}
        payload["energy_ratio_icev_over_bev"] = result.energy_ratio
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    written.append(path)

    path = out / "utility_demand.csv"
    lines = ["utility_id,kwh"]
    lines += [f"{key},{value!r}" for key, value in _ranked(result.charge_by_utility)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    written.append(path)

    path = out / "county_fuel.csv"
    lines = ["county,gallons"]
    lines += [f"{key},{value!r}" for key, value in _ranked(result.fuel_by_county)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    written.append(path)

    path = out / "choropleth.json"
    counties = sorted(set(result.energy_by_county) |
                      set(result.emission_reduction_by_county))
    payload = {
        county: {
            "energy_kwh": result.energy_by_county.get(county, 0.0),
            "reduction_kgco2": result.emission_reduction_by_county.get(county, 0.0),
        }
        for county in counties
    }
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    written.append(path)

    path = out / "sweep.csv"
    lines = ["bev_fraction,cost_usd,co2_kg"]
    lines += [f"{f!r},{c!r},{e!r}" for f, c, e in result.sweep]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    written.append(path)

    path = out / "result.json"
    path.write_text(json.dumps(result_to_dict(result), indent=2) + "\n",
                    encoding="utf-8")
    written.append(path)
    return written
