// Numeric display at the service's 12-significant-digit precision.
// Every number shown in the UI comes from an API response; rounding here
// matches the server (and the CLI CSV/metrics files) digit for digit.

export function sig12(x: number): number {
  if (!Number.isFinite(x)) return x;
  return Number(x.toPrecision(12));
}

export function fmt(x: number): string {
  return String(sig12(x));
}

export function fmtTons(x: number): string {
  return `${fmt(x)} t`;
}
