// Numeric display at the service's 12-significant-digit precision.
// Every number shown in the UI comes from an API response; rounding here
// matches the server (and the CLI CSV/metrics files) digit for digit.
export function sig12(x) {
    if (!Number.isFinite(x))
        return x;
    return Number(x.toPrecision(12));
}
export function fmt(x) {
    return String(sig12(x));
}
export function fmtTons(x) {
    return `${fmt(x)} t`;
}
