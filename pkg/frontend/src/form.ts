/** Scenario form state, bounds clamping and submission gating. */

import type { ScenarioRequest } from "./types.js";

export interface ScenarioForm {
  cities: string[];
  bevSharePct: number;
  kRoutes: number;
  spacingKm: number;
  sweepSteps: number;
}

export const FORM_BOUNDS = {
  bevSharePct: { min: 0, max: 100 },
  kRoutes: { min: 1, max: 5 },
  spacingKm: { min: 1, max: 1000 },
  sweepSteps: { min: 2, max: 101 },
} as const;

export function defaultForm(): ScenarioForm {
  return { cities: [], bevSharePct: 100, kRoutes: 3, spacingKm: 50, sweepSteps: 11 };
}

function clamp(value: number, bounds: { min: number; max: number }): number {
  if (Number.isNaN(value)) {
    return bounds.min;
  }
  return Math.min(bounds.max, Math.max(bounds.min, value));
}

/** Out-of-range slider/spinner values are pulled back into bounds. */
export function clampForm(form: ScenarioForm): ScenarioForm {
  return {
    cities: [...new Set(form.cities)],
    bevSharePct: clamp(form.bevSharePct, FORM_BOUNDS.bevSharePct),
    kRoutes: Math.round(clamp(form.kRoutes, FORM_BOUNDS.kRoutes)),
    spacingKm: clamp(form.spacingKm, FORM_BOUNDS.spacingKm),
    sweepSteps: Math.round(clamp(form.sweepSteps, FORM_BOUNDS.sweepSteps)),
  };
}

/** Submission requires at least two distinct cities. */
export function canSubmit(form: ScenarioForm): boolean {
  return new Set(form.cities).size >= 2;
}

export function submitHint(form: ScenarioForm): string | null {
  return canSubmit(form) ? null : "Select at least two cities to run a scenario.";
}

export function toRequest(form: ScenarioForm): ScenarioRequest {
  const clamped = clampForm(form);
  return {
    cities: clamped.cities,
    bev_fraction: clamped.bevSharePct / 100,
    k_routes: clamped.kRoutes,
    spacing_km: clamped.spacingKm,
    sweep_steps: clamped.sweepSteps,
  };
}
