// Wire types mirroring the simulation service's JSON schemas.
export {};
