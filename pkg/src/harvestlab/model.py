"""Growth law, seasonal forcing, harvest policies, and the forced dynamics.

Everything here is a pure function of its arguments; the parameter containers
are frozen dataclasses and safe to share between threads.  Stock is measured
in tons and time in years (a month is exactly 1/12 year).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable

from .errors import DepletionError

TWO_PI = 2.0 * math.pi

MONTH = 1.0 / 12.0

#: Stock (tons) below which quota harvesting is suspended: the removal rate is
#: clamped to the growth rate so the integrator cannot drive the stock negative.
N_FLOOR = 1e-9


@dataclass(frozen=True)
class GrowthParams:
    """Constant growth-law parameters plus a proportional harvest effort.

    r is the intrinsic per-capita rate (1/year), beta the delaying-factor
    coefficient, gamma the crowding exponent, and E the effort (1/year).
    The nontrivial equilibrium exists only for 0 < E < r.
    """

    r: float
    beta: float
    gamma: float
    E: float = 0.0

    def __post_init__(self) -> None:
        if not self.r > 0.0:
            raise ValueError(f"r must be positive, got {self.r}")
        if not self.gamma > 0.0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if self.beta < 0.0:
            raise ValueError(f"beta must be nonnegative, got {self.beta}")
        if self.E < 0.0:
            raise ValueError(f"E must be nonnegative, got {self.E}")

    @property
    def e_star(self) -> float:
        """Effort relative to the intrinsic rate, E/r."""
        return self.E / self.r


def growth_kernel(x: float, p: GrowthParams) -> float:
    """Per-capita growth rate (1/year) at stock ratio x = N/K.

    Strictly decreasing in x, equal to r at x = 0 and vanishing at x = 1.
    For beta > 0 the kernel is sigmoidal and bounded below by -r/beta.
    """
    if x < 0.0:
        raise ValueError(f"stock ratio must be nonnegative, got {x}")
    xg = x ** p.gamma
    return p.r * (1.0 - xg) / (1.0 + p.beta * xg)


def g1(x: float, p: GrowthParams) -> float:
    """Normalized production curve x * growth_kernel(x, p) / r.

    Unimodal on (0, 1) with a single interior maximum; its height caps the
    quota rate a stock of carrying capacity K can sustain (times r * K).
    """
    if x < 0.0:
        raise ValueError(f"stock ratio must be nonnegative, got {x}")
    xg = x ** p.gamma
    return x * (1.0 - xg) / (1.0 + p.beta * xg)


@dataclass(frozen=True)
class SinusoidSpec:
    """One seasonally forced quantity: baseline * (1 + amplitude * sin(2 pi (t - phase) / period))."""

    baseline: float
    amplitude: float = 0.0
    phase: float = 0.0
    period: float = 1.0

    def __post_init__(self) -> None:
        if not self.baseline > 0.0:
            raise ValueError(f"baseline must be positive, got {self.baseline}")
        if not 0.0 <= self.amplitude < 1.0:
            raise ValueError(
                f"amplitude must be in [0, 1) so the forced quantity stays positive, got {self.amplitude}"
            )
        if not self.period > 0.0:
            raise ValueError(f"period must be positive, got {self.period}")

    def value(self, t: float) -> float:
        return self.baseline * (1.0 + self.amplitude * math.sin(TWO_PI * (t - self.phase) / self.period))

    def slope(self, t: float) -> float:
        """Analytic time derivative of value(t)."""
        w = TWO_PI / self.period
        return self.baseline * self.amplitude * w * math.cos(w * (t - self.phase))


def _common_period(t1: float, t2: float, rel_tol: float = 1e-9) -> float:
    """Least common multiple of two positive periods, rationalized with denominator <= 1e6."""
    ratio = t1 / t2
    frac = Fraction(ratio).limit_denominator(1_000_000)
    if frac.numerator == 0 or abs(ratio - float(frac)) > rel_tol * ratio:
        raise ValueError(
            f"periods {t1} and {t2} have no rational ratio (denominator <= 1e6); "
            "supply system_period explicitly"
        )
    return t1 * frac.denominator


def _is_multiple(total: float, part: float, rel_tol: float = 1e-9) -> bool:
    q = total / part
    return abs(q - round(q)) <= rel_tol * q and round(q) >= 1


@dataclass(frozen=True)
class Forcing:
    """Sinusoidal descriptors for r(t) and K(t) plus the common system period."""

    r_spec: SinusoidSpec
    k_spec: SinusoidSpec
    system_period: float | None = None

    def __post_init__(self) -> None:
        if self.system_period is None:
            period = _common_period(self.r_spec.period, self.k_spec.period)
            object.__setattr__(self, "system_period", period)
            return
        if not self.system_period > 0.0:
            raise ValueError(f"system_period must be positive, got {self.system_period}")
        for name, spec in (("r", self.r_spec), ("k", self.k_spec)):
            if not _is_multiple(self.system_period, spec.period):
                raise ValueError(
                    f"system_period {self.system_period} is not a multiple of the {name} period {spec.period}"
                )

    @classmethod
    def constant(cls, r0: float, k0: float, period: float = 1.0) -> "Forcing":
        """Unforced environment: r(t) = r0 and K(t) = k0, with a nominal period."""
        return cls(SinusoidSpec(r0, 0.0, 0.0, period), SinusoidSpec(k0, 0.0, 0.0, period))


def r_of_t(t: float, f: Forcing) -> float:
    """Intrinsic growth rate at time t (1/year)."""
    return f.r_spec.value(t)


def k_of_t(t: float, f: Forcing) -> float:
    """Carrying capacity at time t (tons)."""
    return f.k_spec.value(t)


def dk_dt(t: float, f: Forcing) -> float:
    """Analytic derivative of the carrying capacity (tons/year)."""
    return f.k_spec.slope(t)


class HarvestMode(str, Enum):
    EFFORT = "effort"
    QUOTA = "quota"


@dataclass(frozen=True)
class Segment:
    """Half-open interval [start, end) with a constant scheduled rate.

    The rate is per-capita effort (1/year) in effort mode and an absolute
    removal rate (tons/year) in quota mode.
    """

    start: float
    end: float
    rate: float

    def __post_init__(self) -> None:
        if self.start < 0.0:
            raise ValueError(f"segment start must be nonnegative, got {self.start}")
        if not self.end > self.start:
            raise ValueError(f"segment end {self.end} must exceed start {self.start}")
        if self.rate < 0.0:
            raise ValueError(f"segment rate must be nonnegative, got {self.rate}")


@dataclass(frozen=True)
class HarvestPolicy:
    """Piecewise-constant harvest schedule; outside every segment the rate is zero.

    With ``repeat`` set, segment times are interpreted modulo that period, so
    an annual fishing season written once applies every year.
    """

    mode: HarvestMode
    segments: tuple[Segment, ...] = ()
    repeat: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "segments", tuple(self.segments))
        for a, b in zip(self.segments, self.segments[1:]):
            if b.start < a.end:
                raise ValueError(
                    f"segments must be sorted and non-overlapping: [{a.start}, {a.end}) then [{b.start}, {b.end})"
                )
        if self.repeat is not None:
            if not self.repeat > 0.0:
                raise ValueError(f"repeat period must be positive, got {self.repeat}")
            if self.segments and self.segments[-1].end > self.repeat:
                raise ValueError("repeating segments must fit inside one repeat period")

    @classmethod
    def zero(cls) -> "HarvestPolicy":
        return cls(HarvestMode.EFFORT, ())

    @classmethod
    def constant_effort(cls, rate: float) -> "HarvestPolicy":
        """Effort applied at all times, written as an annually repeating segment."""
        return cls(HarvestMode.EFFORT, (Segment(0.0, 1.0, rate),), repeat=1.0)

    @property
    def is_constant(self) -> bool:
        """True when the scheduled rate is the same at every time."""
        if not self.segments:
            return True
        if len(self.segments) != 1:
            return False
        seg = self.segments[0]
        if self.repeat is not None:
            return seg.start == 0.0 and seg.end == self.repeat
        return seg.start == 0.0 and math.isinf(seg.end)

    def rate_at(self, t: float) -> float:
        """Scheduled rate at time t (effort 1/year, or quota tons/year)."""
        if self.repeat is not None:
            t = t - self.repeat * math.floor(t / self.repeat)
        for seg in self.segments:
            if seg.start <= t < seg.end:
                return seg.rate
        return 0.0

    def boundary_events(self, t0: float, t1: float) -> list[tuple[float, str]]:
        """Times strictly inside (t0, t1) where the scheduled rate changes.

        Boundaries where the rate is the same on both sides (a repeating
        segment wrapping onto itself, or a zero-rate segment edge) are not
        boundaries of the dynamics and are dropped.
        """
        candidates: list[tuple[float, str]] = []

        def consider(time: float, kind: str) -> None:
            if t0 < time < t1 and math.isfinite(time):
                candidates.append((time, kind))

        if self.repeat is None:
            for seg in self.segments:
                consider(seg.start, "SegmentStart")
                consider(seg.end, "SegmentEnd")
        else:
            k0 = math.floor(t0 / self.repeat) - 1
            k1 = math.ceil(t1 / self.repeat) + 1
            for k in range(k0, k1 + 1):
                base = k * self.repeat
                for seg in self.segments:
                    consider(base + seg.start, "SegmentStart")
                    consider(base + seg.end, "SegmentEnd")
        eps = 1e-9
        out = [
            (time, kind) for time, kind in candidates
            if self.rate_at(time - eps) != self.rate_at(time + eps)
        ]
        out.sort(key=lambda ev: (ev[0], ev[1] != "SegmentEnd"))
        return out


@dataclass(frozen=True)
class ModelState:
    """Time (years) and stock (tons, positive)."""

    t: float
    N: float

    def __post_init__(self) -> None:
        if not self.N > 0.0:
            raise ValueError(f"stock must be positive, got {self.N}")


def e1_of_t(t: float, policy: HarvestPolicy, f: Forcing, N: float | None = None) -> float:
    """Effective effort: scheduled per-capita removal plus the relative slope of K.

    In quota mode the per-capita removal is rate/N, so a positive stock is
    required; below the depletion floor the quantity is undefined.
    """
    k = k_of_t(t, f)
    drift = f.k_spec.slope(t) / k
    rate = policy.rate_at(t)
    if policy.mode is HarvestMode.EFFORT:
        return rate + drift
    if N is None:
        raise ValueError("quota mode needs the current stock to form a per-capita rate")
    if N <= N_FLOOR:
        raise DepletionError(
            f"stock {N} tons is at or below the depletion floor {N_FLOOR}; per-capita quota undefined"
        )
    return rate / N + drift


def rhs_N(t: float, N: float, growth: GrowthParams, policy: HarvestPolicy, f: Forcing) -> float:
    """Stock derivative dN/dt (tons/year) for the forced, harvested model.

    The time-varying rate r(t) comes from the forcing; only beta and gamma are
    read from ``growth``.  In quota mode the scheduled removal is clamped to
    the available growth once the stock is at the depletion floor.
    """
    if N <= 0.0:
        raise ValueError(f"stock must be positive, got {N}")
    return ForcedModel(growth, policy, f).rhs_n(t, N)


def rhs_v(t: float, v: float, growth: GrowthParams, policy: HarvestPolicy, f: Forcing) -> float:
    """Log-ratio derivative dv/dt (1/year) where v = ln(N / K(t))."""
    return ForcedModel(growth, policy, f).rhs_v(t, v)


@dataclass(frozen=True)
class ForcedModel:
    """Growth parameters, harvest policy, and forcing assembled into right-hand sides."""

    growth: GrowthParams
    policy: HarvestPolicy
    forcing: Forcing

    def growth_rate(self, t: float, n: float) -> float:
        """Biomass production N * r(t) * kernel ratio (tons/year), harvest excluded."""
        rt = self.forcing.r_spec.value(t)
        kt = self.forcing.k_spec.value(t)
        xg = (n / kt) ** self.growth.gamma
        return n * rt * (1.0 - xg) / (1.0 + self.growth.beta * xg)

    def harvest_rate(self, t: float, n: float) -> float:
        """Removal rate (tons/year), including the quota clamp at the floor."""
        rate = self.policy.rate_at(t)
        if self.policy.mode is HarvestMode.EFFORT:
            return rate * n
        if n <= N_FLOOR:
            return min(rate, max(self.growth_rate(t, n), 0.0))
        return rate

    def effective_effort(self, t: float, n: float) -> float:
        """Per-capita removal rate (1/year)."""
        return self.harvest_rate(t, n) / n

    def rhs_n(self, t: float, n: float) -> float:
        return self.growth_rate(t, n) - self.harvest_rate(t, n)

    def rhs_v(self, t: float, v: float) -> float:
        rt = self.forcing.r_spec.value(t)
        evg = math.exp(min(self.growth.gamma * v, 700.0))
        phi = rt * (1.0 - evg) / (1.0 + self.growth.beta * evg)
        n = self.forcing.k_spec.value(t) * math.exp(v)
        return phi - e1_of_t(t, self.policy, self.forcing, N=n)

    # The integrator walks these closures millions of times; locals only.
    def compiled_rhs_n(self) -> Callable[[float, float], tuple[float, float]]:
        """Fast (dN/dt, harvest_rate) closure; stages below the floor are clamped."""
        rs, ks = self.forcing.r_spec, self.forcing.k_spec
        r0, ar, pr, tr = rs.baseline, rs.amplitude, rs.phase, rs.period
        k0, ak, pk, tk = ks.baseline, ks.amplitude, ks.phase, ks.period
        beta, gamma = self.growth.beta, self.growth.gamma
        quota = self.policy.mode is HarvestMode.QUOTA
        segs = tuple((s.start, s.end, s.rate) for s in self.policy.segments)
        rep = self.policy.repeat
        sin, flr = math.sin, math.floor

        def rhs(t: float, n: float) -> tuple[float, float]:
            if n < N_FLOOR:
                n = N_FLOOR
            rt = r0 * (1.0 + ar * sin(TWO_PI * (t - pr) / tr))
            kt = k0 * (1.0 + ak * sin(TWO_PI * (t - pk) / tk))
            xg = (n / kt) ** gamma
            g = n * rt * (1.0 - xg) / (1.0 + beta * xg)
            tm = t if rep is None else t - rep * flr(t / rep)
            q = 0.0
            for a, b, rate in segs:
                if a <= tm < b:
                    q = rate
                    break
            if quota:
                if n <= N_FLOOR:
                    q = min(q, g if g > 0.0 else 0.0)
                return g - q, q
            return g - q * n, q * n

        return rhs

    def compiled_rhs_v(self) -> Callable[[float, float], float]:
        """Fast dv/dt closure for the log-ratio coordinate."""
        rs, ks = self.forcing.r_spec, self.forcing.k_spec
        r0, ar, pr, tr = rs.baseline, rs.amplitude, rs.phase, rs.period
        k0, ak, pk, tk = ks.baseline, ks.amplitude, ks.phase, ks.period
        beta, gamma = self.growth.beta, self.growth.gamma
        quota = self.policy.mode is HarvestMode.QUOTA
        segs = tuple((s.start, s.end, s.rate) for s in self.policy.segments)
        rep = self.policy.repeat
        sin, cos, exp, flr = math.sin, math.cos, math.exp, math.floor
        wk = TWO_PI / tk

        def rhs(t: float, v: float) -> float:
            rt = r0 * (1.0 + ar * sin(TWO_PI * (t - pr) / tr))
            kt = k0 * (1.0 + ak * sin(wk * (t - pk)))
            evg = exp(min(gamma * v, 700.0))
            phi = rt * (1.0 - evg) / (1.0 + beta * evg)
            drift = k0 * ak * wk * cos(wk * (t - pk)) / kt
            tm = t if rep is None else t - rep * flr(t / rep)
            q = 0.0
            for a, b, rate in segs:
                if a <= tm < b:
                    q = rate
                    break
            if quota:
                n = kt * exp(v)
                if n <= N_FLOOR:
                    raise DepletionError(
                        f"stock {n} tons at t={t} is below the depletion floor; log-ratio dynamics undefined"
                    )
                return phi - q / n - drift
            return phi - q - drift

        return rhs


def min_effective_effort(policy: HarvestPolicy, f: Forcing, grid_points: int = 10_000) -> tuple[float, float]:
    """Minimum of the effective effort over one system period on a uniform grid.

    Returns (min value, time of the minimum).  Only defined for effort-mode
    policies, where the effective effort is a function of time alone.
    """
    if policy.mode is not HarvestMode.EFFORT:
        raise ValueError("effective effort depends on the stock in quota mode")
    period = f.system_period
    best, best_t = math.inf, 0.0
    for i in range(grid_points):
        t = period * i / grid_points
        v = e1_of_t(t, policy, f)
        if v < best:
            best, best_t = v, t
    return best, best_t
