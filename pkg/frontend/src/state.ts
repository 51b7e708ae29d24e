/** Single UI store: form, run lifecycle and result staleness. */

import { clampForm, defaultForm, type ScenarioForm } from "./form.js";
import type { ScenarioResult } from "./types.js";

export type Phase = "idle" | "running" | "done" | "failed";

export interface RunState {
  phase: Phase;
  jobId: string | null;
  result: ScenarioResult | null;
  error: string | null;
  /** True when the form changed after the displayed result was computed. */
  stale: boolean;
}

export class Store {
  form: ScenarioForm = defaultForm();
  run: RunState = { phase: "idle", jobId: null, result: null, error: null, stale: false };
  private listeners: Array<() => void> = [];

  subscribe(listener: () => void): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) {
      listener();
    }
  }

  /** Any form edit after a completed run marks the results stale; the user
   * re-runs explicitly (runs are heavy, choices are batched). */
  updateForm(patch: Partial<ScenarioForm>): void {
    this.form = clampForm({ ...this.form, ...patch });
    if (this.run.phase === "done" || this.run.phase === "failed") {
      this.run = { ...this.run, stale: true };
    }
    this.emit();
  }

  startRun(jobId: string): void {
    this.run = { phase: "running", jobId, result: null, error: null, stale: false };
    this.emit();
  }

  finishRun(result: ScenarioResult): void {
    this.run = { ...this.run, phase: "done", result, error: null, stale: false };
    this.emit();
  }

  failRun(error: string): void {
    this.run = { ...this.run, phase: "failed", result: null, error, stale: false };
    this.emit();
  }
}
