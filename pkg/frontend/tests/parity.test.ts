/** Display parity: every number the views render equals the corresponding
 * /api/results field after fixed formatting (string comparison). */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { fmt, fmtPct, fmtUsd } from "../src/format.js";
import type { RoutePayload, ScenarioResult } from "../src/types.js";
import {
  renderBars,
  renderChoropleth,
  renderComparison,
  renderRouteMap,
  renderSweep,
} from "../src/views.js";

const here = dirname(fileURLToPath(import.meta.url));
const result = JSON.parse(
  readFileSync(join(here, "fixtures", "result.json"), "utf-8"),
) as ScenarioResult;
const routes = JSON.parse(
  readFileSync(join(here, "fixtures", "routes.json"), "utf-8"),
) as RoutePayload[];

function dataValues(html: string): string[] {
  return [...html.matchAll(/data-value="([^"]*)"/g)].map((m) => m[1]!);
}

describe("comparison table", () => {
  it("renders exactly the API fields, formatted", () => {
    const html = renderComparison(result);
    expect(dataValues(html)).toEqual([
      fmtUsd(result.bev.cost_usd),
      fmt(result.bev.co2_kg),
      fmt(result.bev.energy_kwh),
      fmtUsd(result.icev.cost_usd),
      fmt(result.icev.co2_kg),
      fmt(result.icev.energy_mwh),
      fmtPct(result.blended.bev_fraction),
      fmtUsd(result.blended.cost_usd),
      fmt(result.blended.co2_kg),
    ]);
  });

  it("has one row per fleet", () => {
    const html = renderComparison(result);
    const body = /<tbody>([\s\S]*)<\/tbody>/.exec(html)![1]!;
    expect(body.match(/<tr>/g)).toHaveLength(2);
  });
});

describe("demand bars", () => {
  it("shows every utility value verbatim", () => {
    const html = renderBars("u", "kWh", result.charge_by_utility);
    const shown = dataValues(html);
    const expected = Object.values(result.charge_by_utility).map(fmt);
    expect(shown.sort()).toEqual(expected.sort());
    expect(shown).toHaveLength(Object.keys(result.charge_by_utility).length);
  });

  it("shows every county fuel value verbatim, largest first", () => {
    const html = renderBars("c", "gal", result.fuel_by_county);
    const shown = dataValues(html);
    const ordered = Object.entries(result.fuel_by_county)
      .sort((a, b) => b[1] - a[1] || a[0].localeCompare(b[0]))
      .map(([, v]) => fmt(v));
    expect(shown).toEqual(ordered);
  });
});

describe("choropleths", () => {
  for (const field of ["energy_kwh", "reduction_kgco2"] as const) {
    it(`maps every county's ${field} to its tile and tooltip`, () => {
      const html = renderChoropleth(result.choropleth, field, "t", "u");
      for (const [county, cellValues] of Object.entries(result.choropleth)) {
        const tile = new RegExp(
          `data-county="${county}" data-value="([^"]*)"`).exec(html);
        expect(tile, county).not.toBeNull();
        expect(tile![1]).toBe(fmt(cellValues[field]));
        expect(html).toContain(`title="${county}: ${fmt(cellValues[field])} u"`);
      }
    });

    it(`derives the ${field} legend from the data min/max`, () => {
      const html = renderChoropleth(result.choropleth, field, "t", "u");
      const values = Object.values(result.choropleth).map((c) => c[field]);
      const legend = /<div class="legend">([\s\S]*?)<\/div>/.exec(html)![1]!;
      expect(legend).toContain(`>${fmt(Math.min(...values))}<`);
      expect(legend).toContain(`>${fmt(Math.max(...values))}<`);
    });
  }
});

describe("sweep chart", () => {
  it("carries every point's fraction, cost and CO2 verbatim", () => {
    const html = renderSweep(result.sweep);
    const points = [...html.matchAll(
      /data-fraction="([^"]*)" data-cost="([^"]*)" data-co2="([^"]*)"/g)];
    expect(points).toHaveLength(result.sweep.length);
    result.sweep.forEach((p, i) => {
      expect(points[i]![1]).toBe(fmtPct(p.bev_fraction));
      expect(points[i]![2]).toBe(fmtUsd(p.cost_usd));
      expect(points[i]![3]).toBe(fmt(p.co2_kg));
    });
  });

  it("draws both series", () => {
    const html = renderSweep(result.sweep);
    expect(html).toContain("line-cost");
    expect(html).toContain("line-co2");
  });
});

describe("route map", () => {
  it("draws one polyline per route and a dot per site", () => {
    const html = renderRouteMap(routes);
    expect(html.match(/<polyline/g)).toHaveLength(routes.length);
    const siteCount = routes.reduce((n, r) => n + r.sites.length, 0);
    expect(html.match(/<circle/g)).toHaveLength(siteCount);
    for (const route of routes) {
      expect(html).toContain(route.route_id);
    }
  });
});
