"""Classical fourth-order Runge-Kutta with step-halving error control.

The driver walks from knot to knot, where knots are the harvest-schedule
boundaries (the right-hand side is discontinuous there and a step must not
straddle them).  Each base step is accepted only when the difference between
one full step and two half steps meets the local tolerance; otherwise the
step is halved, up to ``max_halvings`` times.  The propagated value is the
two-half-step composite, so the method order stays four.

In quota mode the stock can reach the depletion floor.  The crossing time is
located by bisection inside the offending step, a Depletion event is
recorded, and the stock is parked at the floor (harvest clamped to growth)
until the dynamics lift it off again.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import StepUnderflow
from .model import N_FLOOR, Forcing, ForcedModel, HarvestMode, ModelState, e1_of_t, k_of_t

#: Default output grid spacing (one day).
DAILY = 1.0 / 365.0


@dataclass(frozen=True)
class IntegratorConfig:
    """Base step (years), relative local-error tolerance, and halving budget."""

    h: float = 1.0 / 1200.0
    tol: float = 1e-10
    max_halvings: int = 20

    def __post_init__(self) -> None:
        if not self.h > 0.0:
            raise ValueError(f"base step must be positive, got {self.h}")
        if not self.tol > 0.0:
            raise ValueError(f"tolerance must be positive, got {self.tol}")
        if self.max_halvings < 0:
            raise ValueError(f"max_halvings must be nonnegative, got {self.max_halvings}")


@dataclass(frozen=True)
class Event:
    t: float
    kind: str  # Depletion | SegmentStart | SegmentEnd


@dataclass
class Resampled:
    """Series on a uniform output grid, ready for CSV or JSON emission."""

    t: np.ndarray
    n: np.ndarray
    k: np.ndarray
    r: np.ndarray
    effort: np.ndarray
    harvest: np.ndarray


@dataclass
class Trajectory:
    """Accepted integration steps with per-sample derived values and events.

    Times are strictly increasing and the stock is positive at every sample.
    ``catch`` is the cumulative harvest (tons) integrated alongside the stock.
    """

    t: np.ndarray
    n: np.ndarray
    k: np.ndarray
    r: np.ndarray
    effort: np.ndarray
    harvest: np.ndarray
    catch: np.ndarray
    events: list[Event] = field(default_factory=list)
    model: ForcedModel | None = None

    def resample(self, dt: float = DAILY) -> Resampled:
        """Cubic resampling of the stock onto a uniform grid of spacing dt.

        Forcing values and harvest rates are recomputed exactly at the grid
        times rather than interpolated, so schedule discontinuities land
        where the policy says they do.
        """
        if self.model is None:
            raise ValueError("trajectory has no model attached; cannot resample")
        t0, t1 = float(self.t[0]), float(self.t[-1])
        count = int(math.floor((t1 - t0) / dt + 1e-9)) + 1
        grid = t0 + dt * np.arange(count)
        if len(self.t) > 2:
            n = CubicSpline(self.t, self.n)(grid)
        else:
            n = np.interp(grid, self.t, self.n)
        n = np.maximum(n, N_FLOOR)
        k = np.array([k_of_t(ti, self.model.forcing) for ti in grid])
        r = np.array([self.model.forcing.r_spec.value(ti) for ti in grid])
        harvest = np.array([self.model.harvest_rate(ti, ni) for ti, ni in zip(grid, n)])
        effort = harvest / n
        return Resampled(t=grid, n=n, k=k, r=r, effort=effort, harvest=harvest)


def _rk4(rhs: Callable[[float, float], tuple[float, float]],
         t: float, n: float, c: float, h: float,
         k1: tuple[float, float] | None = None,
         t_cap: float = math.inf) -> tuple[float, float]:
    """One RK4 step of the (stock, cumulative catch) pair.

    ``t_cap`` keeps the final stage inside the current schedule interval: a
    step landing exactly on a segment boundary must not sample the rate on
    the far side of it.
    """
    if k1 is None:
        k1 = rhs(t, n)
    k1n, k1c = k1
    h2 = 0.5 * h
    k2n, k2c = rhs(t + h2, n + h2 * k1n)
    k3n, k3c = rhs(t + h2, n + h2 * k2n)
    t4 = t + h
    if t4 > t_cap:
        t4 = t_cap
    k4n, k4c = rhs(t4, n + h * k3n)
    sixth = h / 6.0
    return (n + sixth * (k1n + 2.0 * (k2n + k3n) + k4n),
            c + sixth * (k1c + 2.0 * (k2c + k3c) + k4c))


def _controlled_step(rhs, t: float, n: float, c: float, h: float,
                     tol: float, max_halvings: int,
                     t_cap: float = math.inf) -> tuple[float, float, float]:
    """Advance by at most h; returns (n, c, h_accepted).

    The error estimate is |two half steps - one full step| / 15, relative to
    the larger of the state magnitude and one.
    """
    k1 = rhs(t, n)
    for _ in range(max_halvings + 1):
        n_full, c_full = _rk4(rhs, t, n, c, h, k1=k1, t_cap=t_cap)
        n_mid, c_mid = _rk4(rhs, t, n, c, 0.5 * h, k1=k1, t_cap=t_cap)
        n_two, c_two = _rk4(rhs, t + 0.5 * h, n_mid, c_mid, 0.5 * h, t_cap=t_cap)
        scale_n = max(abs(n_two), abs(n), 1.0)
        scale_c = max(abs(c_two), abs(c), 1.0)
        err = max(abs(n_two - n_full) / scale_n, abs(c_two - c_full) / scale_c) / 15.0
        if err <= tol:
            return n_two, c_two, h
        h *= 0.5
    raise StepUnderflow(
        f"local error still above tol={tol} after {max_halvings} halvings at t={t} (h={h})"
    )


def _bisect_floor_crossing(rhs, t: float, n: float, c: float, h: float,
                           time_tol: float = 1e-9) -> tuple[float, float]:
    """Sub-step length at which a single RK4 step first reaches the floor.

    Precondition: the full step of length h lands at or below the floor.
    Returns (step length, cumulative catch at the crossing).
    """
    lo, hi = 0.0, h
    c_hi = c
    for _ in range(80):
        if hi - lo <= time_tol:
            break
        mid = 0.5 * (lo + hi)
        n_mid, c_mid = _rk4(rhs, t, n, c, mid)
        if n_mid > N_FLOOR:
            lo = mid
        else:
            hi, c_hi = mid, c_mid
    if c_hi == c and hi > 0.0:
        _, c_hi = _rk4(rhs, t, n, c, hi)
    return hi, c_hi


def integrate(state0: ModelState, t_end: float, model: ForcedModel,
              cfg: IntegratorConfig | None = None) -> Trajectory:
    """Integrate the stock from state0 to t_end, sampling every accepted step.

    Steps are clipped so they land exactly on harvest-segment boundaries and
    on t_end.  Raises StepUnderflow if the tolerance cannot be met; hitting
    the depletion floor under a quota is an event, not an error.
    """
    cfg = cfg or IntegratorConfig()
    if not t_end > state0.t:
        raise ValueError(f"t_end {t_end} must exceed the initial time {state0.t}")

    rhs = model.compiled_rhs_n()
    quota = model.policy.mode is HarvestMode.QUOTA

    boundary = model.policy.boundary_events(state0.t, t_end)
    knots = [state0.t] + [b for b, _ in boundary] + [t_end]
    events: list[Event] = [Event(t=b, kind=kind) for b, kind in boundary]

    ts = [state0.t]
    ns = [state0.N]
    cs = [0.0]

    t, n, c = state0.t, state0.N, 0.0
    parked = quota and n <= N_FLOOR

    for a, b in zip(knots, knots[1:]):
        if b <= a:
            continue
        t = a
        t_cap = b - 1e-12 * max(1.0, abs(b))
        if t_cap <= a:
            t_cap = b
        while t < b - 1e-14 * max(1.0, abs(b)):
            h_target = min(cfg.h, b - t)
            if parked:
                dn, _ = rhs(t, n)
                if dn > 0.0:
                    parked = False
                else:
                    # Harvest balanced against growth; hold the floor.
                    _, q = rhs(t, n)
                    t = t + h_target
                    c += q * h_target
                    ts.append(t)
                    ns.append(n)
                    cs.append(c)
                    continue
            if quota:
                # The clamped dynamics are discontinuous at the floor, so a
                # crossing is located by bisection instead of error control.
                probe_n, _ = _rk4(rhs, t, n, c, h_target, t_cap=t_cap)
                if probe_n < N_FLOOR:
                    s, c_new = _bisect_floor_crossing(rhs, t, n, c, h_target)
                    if s <= 0.0:
                        s = min(1e-9, h_target)
                    t = t + s
                    n = N_FLOOR
                    c = c_new
                    events.append(Event(t=t, kind="Depletion"))
                    parked = True
                    ts.append(t)
                    ns.append(n)
                    cs.append(c)
                    continue
            n_new, c_new, h_acc = _controlled_step(rhs, t, n, c, h_target, cfg.tol,
                                                   cfg.max_halvings, t_cap=t_cap)
            t = t + h_acc
            n, c = n_new, c_new
            ts.append(t)
            ns.append(n)
            cs.append(c)

    t_arr = np.asarray(ts)
    n_arr = np.asarray(ns)
    k_arr = np.array([k_of_t(ti, model.forcing) for ti in ts])
    r_arr = np.array([model.forcing.r_spec.value(ti) for ti in ts])
    harvest_arr = np.array([model.harvest_rate(ti, ni) for ti, ni in zip(ts, ns)])
    effort_arr = harvest_arr / n_arr
    events.sort(key=lambda ev: ev.t)
    return Trajectory(t=t_arr, n=n_arr, k=k_arr, r=r_arr, effort=effort_arr,
                      harvest=harvest_arr, catch=np.asarray(cs), events=events, model=model)


def integrate_v(model: ForcedModel, v0: float, t0: float, t1: float,
                cfg: IntegratorConfig | None = None) -> float:
    """Integrate the log-ratio coordinate from v(t0) = v0 and return v(t1).

    Same stepping and error control as the stock integration, without
    sampling; used by the period map and coordinate-consistency checks.
    """
    cfg = cfg or IntegratorConfig()
    if not t1 > t0:
        raise ValueError(f"t1 {t1} must exceed t0 {t0}")
    scalar = model.compiled_rhs_v()

    def rhs(t: float, v: float) -> tuple[float, float]:
        return scalar(t, v), 0.0

    knots = [t0] + [b for b, _ in model.policy.boundary_events(t0, t1)] + [t1]
    v = v0
    for a, b in zip(knots, knots[1:]):
        if b <= a:
            continue
        t = a
        t_cap = b - 1e-12 * max(1.0, abs(b))
        if t_cap <= a:
            t_cap = b
        while t < b - 1e-14 * max(1.0, abs(b)):
            h_target = min(cfg.h, b - t)
            v, _, h_acc = _controlled_step(rhs, t, v, 0.0, h_target, cfg.tol,
                                           cfg.max_halvings, t_cap=t_cap)
            t += h_acc
    return v


def check_envelope(traj: Trajectory, f: Forcing) -> bool:
    """True when 0 < N(t) < K(t) at every sample of the trajectory."""
    k = np.array([k_of_t(ti, f) for ti in traj.t])
    return bool(np.all(traj.n > 0.0) and np.all(traj.n < k))


@dataclass(frozen=True)
class EnvelopeReport:
    """Envelope check outcome plus whether the positivity hypothesis behind it held."""

    holds: bool
    hypotheses_met: bool
    min_effective_effort: float


def envelope_report(traj: Trajectory, f: Forcing, grid_points: int = 10_000) -> EnvelopeReport:
    """Envelope check flagged with the effective-effort positivity hypothesis.

    The hypothesis requires the effective effort to stay positive.  For
    effort-mode policies it is swept on a uniform grid over one system
    period; for quota policies it is evaluated along the trajectory samples,
    where the per-capita rate is defined.
    """
    if traj.model is None:
        raise ValueError("trajectory has no model attached")
    policy = traj.model.policy
    if policy.mode is HarvestMode.EFFORT:
        lo = math.inf
        period = f.system_period
        for i in range(grid_points):
            lo = min(lo, e1_of_t(period * i / grid_points, policy, f))
    else:
        lo = min(
            e1_of_t(ti, policy, f, N=ni)
            for ti, ni in zip(traj.t, traj.n)
            if ni > N_FLOOR
        )
    return EnvelopeReport(holds=check_envelope(traj, f), hypotheses_met=lo > 0.0,
                          min_effective_effort=lo)
