"""Periodic-solution search and certification for the seasonally forced model.

The period map sends an initial log-ratio v(0) to v(T) after one system
period.  Scalar flows preserve order, so the map is strictly increasing and a
sign change of P(v) - v brackets a unique fixed point, which is a periodic
solution of the forced equation.  The lower bracket endpoint comes from the
grid minimum of ln[(r - E1)/(r + beta E1)] / gamma, which is negative
whenever the positivity hypothesis r(t) > E1(t) > 0 holds; the certificate
records the fixed point, its residual, and an observed contraction ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import HypothesisViolated, NoSignChange
from .integrate import IntegratorConfig, integrate_v
from .model import Forcing, ForcedModel, GrowthParams, HarvestMode, HarvestPolicy, k_of_t
from .numutil import golden_section_min

_SAFETY_MARGIN = 0.01
_UPPER_EPS = 1e-12


@dataclass(frozen=True)
class Bracket:
    """Lower log-ratio bound and the zero upper bound enclosing the fixed point."""

    b0: float
    upper: float
    grid_points: int
    grid_min: float


@dataclass(frozen=True)
class PeriodicCertificate:
    """Fixed point of the period map with convergence evidence.

    ``gas_decay`` is the observed ratio of the log-ratio gap between two
    interior starts after five periods to the initial gap.
    """

    v0_star: float
    n0_of_0: float
    residual: float
    gas_decay: float
    bracket: Bracket
    iterations: int


@dataclass(frozen=True)
class GasStart:
    start: float
    gap_initial: float
    gap_final: float
    ratio: float


@dataclass(frozen=True)
class GasReport:
    starts: tuple[GasStart, ...]
    horizon_periods: int
    passed: bool


def _policy_is_periodic(policy: HarvestPolicy, period: float) -> bool:
    if policy.is_constant:
        return True
    if policy.repeat is None:
        return False
    q = period / policy.repeat
    return abs(q - round(q)) <= 1e-9 * max(q, 1.0) and round(q) >= 1


def _e1_factory(policy: HarvestPolicy, f: Forcing, v_ref: float):
    """Effective effort as a function of time, with quota rates converted
    per-capita at the reference stock K(t) exp(v_ref)."""
    quota = policy.mode is HarvestMode.QUOTA

    def e1(t: float) -> float:
        k = k_of_t(t, f)
        drift = f.k_spec.slope(t) / k
        rate = policy.rate_at(t)
        if quota:
            return rate / (k * math.exp(v_ref)) + drift
        return rate + drift

    return e1


def _bracket_margin(growth: GrowthParams, e1, f: Forcing, grid_points: int) -> float:
    """Refined grid minimum of ln[(r - E1)/(r + beta E1)] / gamma over one period."""
    period = f.system_period
    beta, gamma = growth.beta, growth.gamma

    def m(t: float) -> float:
        rt = f.r_spec.value(t)
        e = e1(t)
        top = rt - e
        if top <= 0.0:
            raise HypothesisViolated(
                f"positivity hypothesis fails: r(t) - effective effort = {top:.6g} <= 0 at t = {t:.6g}"
            )
        return math.log(top / (rt + beta * e)) / gamma

    best, best_i = math.inf, 0
    for i in range(grid_points):
        v = m(period * i / grid_points)
        if v < best:
            best, best_i = v, i
    step = period / grid_points
    lo = max(0.0, (best_i - 1) * step)
    hi = min(period, (best_i + 1) * step)
    t_star = golden_section_min(m, lo, hi, tol=1e-10)
    return min(best, m(t_star))


def compute_b0(growth: GrowthParams, policy: HarvestPolicy, f: Forcing,
               grid_points: int = 10_000) -> Bracket:
    """Lower bracket endpoint: the refined grid minimum minus a safety margin.

    Raises HypothesisViolated if r(t) <= E1(t) anywhere on the grid.  For
    quota policies the per-capita rate depends on the stock, so the bound is
    iterated to a self-consistent reference level.
    """
    if policy.mode is HarvestMode.EFFORT:
        grid_min = _bracket_margin(growth, _e1_factory(policy, f, 0.0), f, grid_points)
        return Bracket(b0=grid_min - _SAFETY_MARGIN, upper=0.0,
                       grid_points=grid_points, grid_min=grid_min)

    # Quota: evaluating the schedule at stock K(t) e^b enlarges the effective
    # effort as b decreases, so iterate b downward until it stabilizes.
    b = 0.0
    grid_min = 0.0
    for _ in range(200):
        grid_min = _bracket_margin(growth, _e1_factory(policy, f, b), f, grid_points)
        b_next = grid_min - _SAFETY_MARGIN
        if b_next < -50.0:
            raise HypothesisViolated(
                "no self-consistent lower bound: quota drives the per-capita effort unbounded"
            )
        if abs(b_next - b) <= 1e-12:
            b = b_next
            break
        b = b_next
    return Bracket(b0=b, upper=0.0, grid_points=grid_points, grid_min=grid_min)


def poincare_map(v0: float, model: ForcedModel, cfg: IntegratorConfig | None = None) -> float:
    """One-period flow of the log-ratio equation: v(0) = v0 to v(T).

    Strictly increasing in v0.  The harvest schedule must be periodic with
    the system period for the map to be well defined.
    """
    period = model.forcing.system_period
    if not _policy_is_periodic(model.policy, period):
        raise HypothesisViolated(
            "harvest schedule is not periodic with the system period; the period map is undefined"
        )
    return integrate_v(model, v0, 0.0, period, cfg)


def find_periodic(model: ForcedModel, cfg: IntegratorConfig | None = None,
                  grid_points: int = 10_000, residual_target: float = 1e-8) -> PeriodicCertificate:
    """Certify a positive periodic solution as a fixed point of the period map.

    Bisection of P(v) - v over (b0, -eps).  Raises NoSignChange when the
    residual has the same sign at both ends, which happens when the
    upper-solution condition (positive effective effort at the carrying
    capacity) fails even though the bracket bound exists.
    """
    bracket = compute_b0(model.growth, model.policy, model.forcing, grid_points)
    period = model.forcing.system_period

    def g(v: float) -> float:
        return poincare_map(v, model, cfg) - v

    lo, hi = bracket.b0, -_UPPER_EPS
    g_lo, g_hi = g(lo), g(hi)
    if not (g_lo > 0.0 > g_hi):
        raise NoSignChange(
            f"period-map residual does not change sign over ({lo:.6g}, {hi:.6g}): "
            f"g(lo) = {g_lo:.6g}, g(hi) = {g_hi:.6g}"
        )

    v_mid, g_mid = lo, g_lo
    iterations = 0
    for iterations in range(1, 201):
        v_mid = 0.5 * (lo + hi)
        g_mid = g(v_mid)
        if abs(g_mid) < residual_target:
            break
        if g_mid > 0.0:
            lo = v_mid
        else:
            hi = v_mid
    residual = abs(g_mid)

    k0 = k_of_t(0.0, model.forcing)
    gap0 = abs(math.log(0.8) - math.log(0.2))
    v_a = integrate_v(model, math.log(0.2), 0.0, 5.0 * period, cfg)
    v_b = integrate_v(model, math.log(0.8), 0.0, 5.0 * period, cfg)
    gas_decay = abs(v_b - v_a) / gap0

    return PeriodicCertificate(v0_star=v_mid, n0_of_0=k0 * math.exp(v_mid),
                               residual=residual, gas_decay=gas_decay,
                               bracket=bracket, iterations=iterations)


def certify_gas(model: ForcedModel, cert: PeriodicCertificate, starts: list[float],
                cfg: IntegratorConfig | None = None, horizon_periods: int = 5) -> GasReport:
    """Measure the decay of |N(t) - N0(t)| from each start over several periods.

    A start passes when the gap after ``horizon_periods`` periods is at most a
    tenth of the initial gap; a start exactly on the periodic solution passes
    with ratio zero.  Distances are compared in stock units by mapping the
    log-ratio states back through N = K(t) exp(v).
    """
    period = model.forcing.system_period
    t_end = horizon_periods * period
    k_end = k_of_t(t_end, model.forcing)
    k0 = k_of_t(0.0, model.forcing)
    v_star_end = integrate_v(model, cert.v0_star, 0.0, t_end, cfg)
    n_star_end = k_end * math.exp(v_star_end)

    results = []
    for start in starts:
        if not 0.0 < start:
            raise ValueError(f"starts must be positive stocks, got {start}")
        gap0 = abs(start - cert.n0_of_0)
        if gap0 == 0.0:
            results.append(GasStart(start=start, gap_initial=0.0, gap_final=0.0, ratio=0.0))
            continue
        v_end = integrate_v(model, math.log(start / k0), 0.0, t_end, cfg)
        gap_end = abs(k_end * math.exp(v_end) - n_star_end)
        results.append(GasStart(start=start, gap_initial=gap0, gap_final=gap_end,
                                ratio=gap_end / gap0))
    passed = all(r.ratio <= 0.1 for r in results)
    return GasReport(starts=tuple(results), horizon_periods=horizon_periods, passed=passed)
