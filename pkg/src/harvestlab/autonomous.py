"""Closed-form analysis of the constant-coefficient harvested model.

Equilibria and yields for the full growth law and its beta = 0 reduction,
local stability through the log-coordinate derivative, maximum sustainable
yield, and the conserved constant of the implicit solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NoEquilibrium
from .model import GrowthParams
from .numutil import golden_section_max


@dataclass(frozen=True)
class EquilibriumReport:
    """Nontrivial equilibria and their yields, full law vs the beta = 0 reduction."""

    x_ge: float
    x_le: float
    y_ge: float
    y_le: float
    stable: bool


@dataclass(frozen=True)
class StabilityReport:
    derivative: float
    stable: bool


@dataclass(frozen=True)
class ImplicitConstant:
    alpha: float
    c_value: float


@dataclass(frozen=True)
class MsyResult:
    effort: float
    yield_: float


def _check_effort(p: GrowthParams) -> None:
    if p.E >= p.r:
        raise NoEquilibrium(f"no nontrivial equilibrium: effort {p.E} >= growth rate {p.r}")


def equilibrium(p: GrowthParams) -> EquilibriumReport:
    """Equilibrium stock ratios and yields for effort E in [0, r).

    x_ge solves growth_kernel(x) = E exactly; x_le is the beta = 0 value.
    """
    _check_effort(p)
    es = p.e_star
    x_ge = ((1.0 - es) / (1.0 + p.beta * es)) ** (1.0 / p.gamma)
    x_le = (1.0 - es) ** (1.0 / p.gamma)
    return EquilibriumReport(x_ge=x_ge, x_le=x_le, y_ge=p.E * x_ge, y_le=p.E * x_le, stable=True)


def phi(u: float, p: GrowthParams) -> float:
    """Per-capita growth in log coordinates u = ln x."""
    eug = math.exp(min(p.gamma * u, 700.0))
    return p.r * (1.0 - eug) / (1.0 + p.beta * eug)


def phi_prime(u: float, p: GrowthParams) -> float:
    """Derivative of phi; strictly negative, so the equilibrium is always stable."""
    eug = math.exp(min(p.gamma * u, 700.0))
    return -p.gamma * p.r * eug * (1.0 + p.beta) / (1.0 + p.beta * eug) ** 2


def local_stability(p: GrowthParams) -> StabilityReport:
    """Stability of the nontrivial equilibrium via the log-coordinate derivative."""
    report = equilibrium(p)
    return StabilityReport(derivative=phi_prime(math.log(report.x_ge), p), stable=True)


def msy(p: GrowthParams, resolution: int = 1000) -> MsyResult:
    """Maximum sustainable yield over effort in (0, r).

    Grid scan at the requested resolution followed by golden-section
    refinement of the surrounding bracket; the endpoints are inset by 1e-6
    because the equilibrium formula degenerates at E = 0 and E = r.
    """
    if resolution < 100:
        raise ValueError(f"resolution must be at least 100, got {resolution}")

    margin = 1e-6

    def yield_at(effort: float) -> float:
        rep = equilibrium(GrowthParams(p.r, p.beta, p.gamma, effort))
        return rep.y_ge

    lo, hi = margin, p.r - margin
    best_i, best_y = 0, -math.inf
    for i in range(resolution + 1):
        e = lo + (hi - lo) * i / resolution
        y = yield_at(e)
        if y > best_y:
            best_i, best_y = i, y
    a = lo + (hi - lo) * max(best_i - 1, 0) / resolution
    b = lo + (hi - lo) * min(best_i + 1, resolution) / resolution
    e_opt = golden_section_max(yield_at, a, b, tol=1e-12)
    return MsyResult(effort=e_opt, yield_=yield_at(e_opt))


def implicit_constant(x: float, t: float, p: GrowthParams) -> ImplicitConstant:
    """Constant of the implicit closed-form solution, conserved along trajectories.

    alpha = (1 + E* beta) / (1 + beta); the constant is the combination
    [E* - 1 + (beta E* + 1) x^gamma] / [x^(alpha gamma) exp(-r alpha gamma (1 - E*) t)],
    which takes the same value at every point of one solution and vanishes
    identically at the equilibrium.
    """
    if x <= 0.0:
        raise ValueError(f"stock ratio must be positive, got {x}")
    if p.E >= p.r:
        raise NoEquilibrium(f"implicit solution requires effort {p.E} < growth rate {p.r}")
    es = p.e_star
    alpha = (1.0 + es * p.beta) / (1.0 + p.beta)
    numerator = es - 1.0 + (p.beta * es + 1.0) * x ** p.gamma
    denominator = x ** (alpha * p.gamma) * math.exp(-p.r * alpha * p.gamma * (1.0 - es) * t)
    return ImplicitConstant(alpha=alpha, c_value=numerator / denominator)
