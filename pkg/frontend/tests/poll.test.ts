/** Job polling: terminal states, error propagation, attempt cap. */

import { describe, expect, it } from "vitest";

import { pollJob } from "../src/poll.js";
import type { JobRecord } from "../src/types.js";

function record(status: JobRecord["status"], error: string | null = null): JobRecord {
  return { job_id: "j1", status, submitted_at: "t", result_path: null, error };
}

function sequence(...records: JobRecord[]) {
  let i = 0;
  const seen: string[] = [];
  const getJob = async (id: string) => {
    seen.push(id);
    const next = records[Math.min(i, records.length - 1)]!;
    i += 1;
    return next;
  };
  return { getJob, seen };
}

describe("pollJob", () => {
  it("resolves once the job is done", async () => {
    const { getJob, seen } = sequence(record("queued"), record("running"),
                                      record("done"));
    const final = await pollJob(getJob, "j1", { intervalMs: 0 });
    expect(final.status).toBe("done");
    expect(seen).toEqual(["j1", "j1", "j1"]);
  });

  it("rejects with the job error on failure", async () => {
    const { getJob } = sequence(record("running"), record("failed", "boom"));
    await expect(pollJob(getJob, "j1", { intervalMs: 0 })).rejects.toThrow("boom");
  });

  it("rejects after the attempt cap", async () => {
    const { getJob } = sequence(record("running"));
    await expect(
      pollJob(getJob, "j1", { intervalMs: 0, maxAttempts: 3 }),
    ).rejects.toThrow(/3 polls/);
  });

  it("reports intermediate states through onTick", async () => {
    const { getJob } = sequence(record("queued"), record("done"));
    const phases: string[] = [];
    await pollJob(getJob, "j1", {
      intervalMs: 0,
      onTick: (r) => phases.push(r.status),
    });
    expect(phases).toEqual(["queued", "done"]);
  });
});
