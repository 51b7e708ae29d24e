/** Fixed display formatting. Every number shown in the UI passes through
 * one of these, so display-parity tests can recompute the exact strings. */

const NUMBER = new Intl.NumberFormat("en-US", { maximumFractionDigits: 1 });

/** Thousands-separated, at most one decimal: 1234567.89 -> "1,234,567.9". */
export function fmt(value: number): string {
  return NUMBER.format(value);
}

export function fmtUsd(value: number): string {
  return `$${fmt(value)}`;
}

/** Fraction in [0,1] as a whole percent: 0.5 -> "50%". */
export function fmtPct(fraction: number): string {
  return `${Math.round(fraction * 100)}%`;
}
