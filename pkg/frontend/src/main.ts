/** DOM wiring: form inputs, run submission with polling, result views. */

import { ApiClient } from "./api.js";
import { canSubmit, submitHint, toRequest, FORM_BOUNDS } from "./form.js";
import { pollJob } from "./poll.js";
import { Store } from "./state.js";
import { renderResults, renderRouteMap } from "./views.js";

const api = new ApiClient();
const store = new Store();

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function renderCityChecks(cities: string[]): void {
  const host = el<HTMLDivElement>("cities");
  host.innerHTML = cities
    .map(
      (city) =>
        `<label><input type="checkbox" value="${city}"> ${city}</label>`,
    )
    .join("");
  host.querySelectorAll("input").forEach((box) => {
    box.addEventListener("change", () => {
      const chosen = [...host.querySelectorAll("input:checked")].map(
        (n) => (n as HTMLInputElement).value,
      );
      store.updateForm({ cities: chosen });
    });
  });
}

function bindNumber(id: string, key: "bevSharePct" | "kRoutes" | "spacingKm" | "sweepSteps"): void {
  const input = el<HTMLInputElement>(id);
  input.addEventListener("change", () => {
    store.updateForm({ [key]: Number(input.value) });
    input.value = String(store.form[key]);  // show the clamped value
  });
}

async function runScenario(): Promise<void> {
  try {
    const { job_id } = await api.postScenario(toRequest(store.form));
    store.startRun(job_id);
    await pollJob((id) => api.getJob(id), job_id, { intervalMs: 400 });
    store.finishRun(await api.getResult(job_id));
  } catch (error) {
    store.failRun(error instanceof Error ? error.message : String(error));
  }
}

async function refreshMap(): Promise<void> {
  const cities = store.form.cities;
  if (cities.length < 2) {
    el("map-host").innerHTML = "";
    return;
  }
  const routes = [];
  for (let i = 0; i < cities.length - 1; i++) {
    for (let j = i + 1; j < cities.length; j++) {
      routes.push(...(await api.getRoutes(cities[i]!, cities[j]!)));
    }
  }
  el("map-host").innerHTML = renderRouteMap(routes);
}

function render(): void {
  const button = el<HTMLButtonElement>("run");
  button.disabled = !canSubmit(store.form) || store.run.phase === "running";
  el("hint").textContent = submitHint(store.form) ?? "";
  el("bev-share-label").textContent = `${store.form.bevSharePct}%`;

  const status = el("status");
  const { run } = store;
  if (run.phase === "running") {
    status.textContent = `running job ${run.jobId}…`;
  } else if (run.phase === "failed") {
    status.textContent = `failed: ${run.error}`;
  } else if (run.phase === "done" && run.stale) {
    status.textContent = "parameters changed — results below are stale, re-run to refresh";
  } else if (run.phase === "done") {
    status.textContent = "done";
  } else {
    status.textContent = "";
  }

  const results = el("results");
  results.classList.toggle("stale", run.stale);
  if (run.phase === "done" && run.result !== null) {
    if (results.childElementCount === 0 || !run.stale) {
      results.innerHTML = renderResults(run.result);
    }
  } else if (run.phase !== "done") {
    if (run.phase !== "failed") {
      results.innerHTML = "";
    }
  }
}

async function boot(): Promise<void> {
  const region = await api.getRegion();
  el("region-name").textContent = region.name;
  renderCityChecks(region.cities);
  bindNumber("bev-share", "bevSharePct");
  bindNumber("k-routes", "kRoutes");
  bindNumber("spacing-km", "spacingKm");
  bindNumber("sweep-steps", "sweepSteps");
  el<HTMLInputElement>("bev-share").max = String(FORM_BOUNDS.bevSharePct.max);
  el<HTMLButtonElement>("run").addEventListener("click", () => {
    void runScenario();
  });
  store.subscribe(render);
  store.subscribe(() => {
    void refreshMap();
  });
  render();
}

void boot();
