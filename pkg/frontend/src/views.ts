/** Pure HTML/SVG renderers. No domain math: every displayed number is an
 * API field passed through the fixed formatters, carried verbatim in a
 * data-value attribute so tests can string-compare against the payload. */

import { fmt, fmtPct, fmtUsd } from "./format.js";
import type { ChoroplethCell, RoutePayload, ScenarioResult, SweepPoint } from "./types.js";

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function cell(formatted: string, suffix = ""): string {
  return `<td data-value="${esc(formatted)}">${esc(formatted)}${suffix}</td>`;
}

export function renderComparison(result: ScenarioResult): string {
  const rows = [
    `<tr><th>BEV</th>${cell(fmtUsd(result.bev.cost_usd))}` +
      `${cell(fmt(result.bev.co2_kg))}${cell(fmt(result.bev.energy_kwh), " kWh")}</tr>`,
    `<tr><th>ICEV</th>${cell(fmtUsd(result.icev.cost_usd))}` +
      `${cell(fmt(result.icev.co2_kg))}${cell(fmt(result.icev.energy_mwh), " MWh")}</tr>`,
  ];
  const blended =
    `<p class="blended">Blended fleet at ` +
    `<span data-value="${esc(fmtPct(result.blended.bev_fraction))}">` +
    `${esc(fmtPct(result.blended.bev_fraction))}</span> BEV: ` +
    `<span data-value="${esc(fmtUsd(result.blended.cost_usd))}">` +
    `${esc(fmtUsd(result.blended.cost_usd))}</span>, ` +
    `<span data-value="${esc(fmt(result.blended.co2_kg))}">` +
    `${esc(fmt(result.blended.co2_kg))}</span> kg CO2</p>`;
  return (
    `<table class="comparison"><thead><tr>` +
    `<th>Fleet</th><th>Cost (USD)</th><th>Emissions (kg CO2)</th><th>Energy</th>` +
    `</tr></thead><tbody>${rows.join("")}</tbody></table>` + blended
  );
}

export function renderBars(title: string, unit: string,
                           values: Record<string, number>): string {
  const entries = Object.entries(values).sort(
    (a, b) => b[1] - a[1] || a[0].localeCompare(b[0]));
  const max = entries.length > 0 ? entries[0]![1] : 0;
  const bars = entries.map(([key, value]) => {
    const width = max > 0 ? Math.max(1, Math.round((100 * value) / max)) : 1;
    return (
      `<div class="bar-row"><span class="bar-label">${esc(key)}</span>` +
      `<span class="bar" style="width:${width}%"></span>` +
      `<span class="bar-value" data-value="${esc(fmt(value))}">` +
      `${esc(fmt(value))} ${esc(unit)}</span></div>`
    );
  });
  return `<div class="bars"><h3>${esc(title)}</h3>${bars.join("")}</div>`;
}

function shade(value: number, min: number, max: number): number {
  if (max <= min) {
    return 50;
  }
  return Math.round(88 - (48 * (value - min)) / (max - min));
}

/** County tiles colored by value; legend endpoints derive from the data. */
export function renderChoropleth(choropleth: Record<string, ChoroplethCell>,
                                 field: keyof ChoroplethCell, title: string,
                                 unit: string): string {
  const counties = Object.keys(choropleth).sort();
  const values = counties.map((c) => choropleth[c]![field]);
  const min = values.length > 0 ? Math.min(...values) : 0;
  const max = values.length > 0 ? Math.max(...values) : 0;
  const tiles = counties.map((county) => {
    const value = choropleth[county]![field];
    const lightness = shade(value, min, max);
    const label = `${county}: ${fmt(value)} ${unit}`;
    return (
      `<div class="tile" style="background:hsl(210 65% ${lightness}%)" ` +
      `title="${esc(label)}" data-county="${esc(county)}" ` +
      `data-value="${esc(fmt(value))}">${esc(county)}</div>`
    );
  });
  const legend =
    `<div class="legend"><span data-value="${esc(fmt(min))}">${esc(fmt(min))}</span>` +
    `<span class="legend-ramp"></span>` +
    `<span data-value="${esc(fmt(max))}">${esc(fmt(max))}</span> ${esc(unit)}</div>`;
  return `<div class="choropleth"><h3>${esc(title)}</h3>` +
    `<div class="tiles">${tiles.join("")}</div>${legend}</div>`;
}

export function renderSweep(sweep: SweepPoint[]): string {
  if (sweep.length === 0) {
    return `<div class="sweep"><h3>BEV penetration sweep</h3><p>no sweep data</p></div>`;
  }
  const width = 460;
  const height = 220;
  const pad = 30;
  const costs = sweep.map((p) => p.cost_usd);
  const co2s = sweep.map((p) => p.co2_kg);
  const lo = Math.min(...costs, ...co2s) ;
  const hi = Math.max(...costs, ...co2s);
  const x = (f: number) => pad + f * (width - 2 * pad);
  const y = (v: number) =>
    hi > lo ? height - pad - ((v - lo) * (height - 2 * pad)) / (hi - lo) : height / 2;
  const line = (values: number[]) =>
    sweep.map((p, i) => `${x(p.bev_fraction).toFixed(1)},${y(values[i]!).toFixed(1)}`)
      .join(" ");
  const markers = sweep.map((p) => {
    const label = `${fmtPct(p.bev_fraction)}: ${fmtUsd(p.cost_usd)}, ${fmt(p.co2_kg)} kg CO2`;
    return (
      `<circle cx="${x(p.bev_fraction).toFixed(1)}" cy="${y(p.cost_usd).toFixed(1)}" ` +
      `r="3" class="pt-cost" data-fraction="${esc(fmtPct(p.bev_fraction))}" ` +
      `data-cost="${esc(fmtUsd(p.cost_usd))}" data-co2="${esc(fmt(p.co2_kg))}">` +
      `<title>${esc(label)}</title></circle>`
    );
  });
  return (
    `<div class="sweep"><h3>BEV penetration sweep</h3>` +
    `<svg viewBox="0 0 ${width} ${height}" role="img">` +
    `<polyline class="line-cost" fill="none" points="${line(costs)}"/>` +
    `<polyline class="line-co2" fill="none" points="${line(co2s)}"/>` +
    markers.join("") +
    `</svg><p class="legend">cost (USD) and CO2 (kg) vs BEV share</p></div>`
  );
}

/** Route polylines from charging-site coordinates; no tile dependency. */
export function renderRouteMap(routes: RoutePayload[]): string {
  const sites = routes.flatMap((r) => r.sites);
  if (sites.length === 0) {
    return `<div class="map"><p>no routes selected</p></div>`;
  }
  const lats = sites.map((s) => s.lat);
  const lons = sites.map((s) => s.lon);
  const minLat = Math.min(...lats);
  const maxLat = Math.max(...lats);
  const minLon = Math.min(...lons);
  const maxLon = Math.max(...lons);
  const width = 460;
  const height = 300;
  const pad = 16;
  const x = (lon: number) =>
    maxLon > minLon
      ? pad + ((lon - minLon) * (width - 2 * pad)) / (maxLon - minLon)
      : width / 2;
  const y = (lat: number) =>
    maxLat > minLat
      ? height - pad - ((lat - minLat) * (height - 2 * pad)) / (maxLat - minLat)
      : height / 2;
  const lines = routes.map((route, i) => {
    const points = route.sites
      .map((s) => `${x(s.lon).toFixed(1)},${y(s.lat).toFixed(1)}`)
      .join(" ");
    return `<polyline class="route route-${i}" fill="none" points="${points}">` +
      `<title>${esc(route.route_id)}</title></polyline>`;
  });
  const dots = sites.map(
    (s) =>
      `<circle cx="${x(s.lon).toFixed(1)}" cy="${y(s.lat).toFixed(1)}" r="2.5" ` +
      `class="site"><title>${esc(`${s.county} / ${s.utility_id}`)}</title></circle>`,
  );
  return (
    `<div class="map"><h3>Routes and charging sites</h3>` +
    `<svg viewBox="0 0 ${width} ${height}" role="img">` +
    lines.join("") + dots.join("") + `</svg></div>`
  );
}

export function renderResults(result: ScenarioResult): string {
  return [
    renderComparison(result),
    renderBars("BEV charging demand by utility", "kWh", result.charge_by_utility),
    renderBars("ICEV fuel demand by county", "gal", result.fuel_by_county),
    renderChoropleth(result.choropleth, "energy_kwh",
                     "BEV energy demand by county", "kWh"),
    renderChoropleth(result.choropleth, "reduction_kgco2",
                     "Emission reduction by county", "kg CO2"),
    renderSweep(result.sweep),
  ].join("\n");
}
