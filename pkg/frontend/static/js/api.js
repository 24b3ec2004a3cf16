// Typed API client with newest-wins request sequencing: a response is
// delivered only if no newer request has been issued since it started.
export class ApiError extends Error {
    constructor(status, detail) {
        super(detail);
        this.status = status;
    }
}
async function postJson(url, body) {
    const response = await fetch(url, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(body),
    });
    const payload = await response.json().catch(() => ({}));
    if (!response.ok) {
        const detail = typeof payload.detail === "string"
            ? payload.detail
            : JSON.stringify(payload.detail ?? payload);
        throw new ApiError(response.status, detail);
    }
    return payload;
}
export class ApiClient {
    constructor(base = "") {
        this.base = base;
    }
    simulate(doc) {
        return postJson(`${this.base}/api/simulate`, doc);
    }
    async presets() {
        const response = await fetch(`${this.base}/api/presets`);
        if (!response.ok)
            throw new ApiError(response.status, "failed to list presets");
        return (await response.json());
    }
    async health() {
        try {
            const response = await fetch(`${this.base}/api/health`);
            return response.ok;
        }
        catch {
            return false;
        }
    }
}
/** Monotone ticket dispenser; stale asynchronous results are discarded. */
export class NewestWins {
    constructor() {
        this.seq = 0;
    }
    begin() {
        this.seq += 1;
        return this.seq;
    }
    isCurrent(ticket) {
        return ticket === this.seq;
    }
}
