/** Poll a submitted job until it reaches a terminal state. */

import type { JobRecord } from "./types.js";

export interface PollOptions {
  intervalMs?: number;
  maxAttempts?: number;
  onTick?: (record: JobRecord) => void;
}

const sleep = (ms: number) =>
  ms > 0 ? new Promise<void>((resolve) => setTimeout(resolve, ms)) : Promise.resolve();

/** Resolves with the final record when the job is done; rejects on failure
 * or when maxAttempts polls pass without a terminal state. */
export async function pollJob(
  getJob: (jobId: string) => Promise<JobRecord>,
  jobId: string,
  { intervalMs = 500, maxAttempts = 600, onTick }: PollOptions = {},
): Promise<JobRecord> {
  for (let attempt = 0; attempt < maxAttempts; attempt++) {
    const record = await getJob(jobId);
    onTick?.(record);
    if (record.status === "done") {
      return record;
    }
    if (record.status === "failed") {
      throw new Error(record.error ?? "job failed");
    }
    await sleep(intervalMs);
  }
  throw new Error(`job ${jobId} still running after ${maxAttempts} polls`);
}
