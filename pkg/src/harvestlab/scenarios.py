"""Scenario configuration, named experiment presets, metrics, and CSV output.

A scenario bundles growth parameters (without effort; the harvest comes from
the policy), forcing, a harvest policy, an initial stock, and a horizon.  The
six named presets reproduce the comparison experiments: growth-law shapes,
carrying-capacity and growth-rate amplitude sweeps, a 180-degree phase shift,
and static versus season-shifted quota schedules.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError, MismatchError
from .integrate import DAILY, IntegratorConfig, Trajectory, integrate
from .model import (
    Forcing,
    ForcedModel,
    GrowthParams,
    HarvestMode,
    HarvestPolicy,
    ModelState,
    Segment,
    SinusoidSpec,
)
from .numutil import round_sig12

PRESET_NAMES = ("fig2", "fig3", "fig4", "fig5", "fig6-static", "fig7-adaptive")

# Shared experiment constants.  The quota experiments override the carrying
# capacity phase so the lean season falls in the unfished winter months, and
# they end just before the spring season opens (end of February) so every
# schedule is measured after its most recent fishing window has closed.
_K0 = 100.0
_R0 = 1.0
_N0 = 50.0
_BETA = 0.2
_GAMMA = 5.0
_EFFORT = 0.3
_SWEEP_HORIZON = 10.0
_QUOTA_HORIZON = 62.0 / 12.0
_QUOTA_PHASE_K = 0.2


@dataclass(frozen=True)
class Scenario:
    growth: GrowthParams
    forcing: Forcing
    policy: HarvestPolicy
    n0: float
    horizon: float
    label: str = ""

    def __post_init__(self) -> None:
        if not self.n0 > 0.0:
            raise ValueError(f"initial stock must be positive, got {self.n0}")
        if not self.horizon > 0.0:
            raise ValueError(f"horizon must be positive, got {self.horizon}")

    def model(self) -> ForcedModel:
        return ForcedModel(self.growth, self.policy, self.forcing)


@dataclass(frozen=True)
class StrategyMetrics:
    """Summary of one run: period averages, extremes, and cumulative catch."""

    n_bar: float
    k_bar: float
    min_stock: float
    final_stock: float
    total_catch: float
    depleted: bool

    def to_dict(self) -> dict:
        return {
            "n_bar": round_sig12(self.n_bar),
            "k_bar": round_sig12(self.k_bar),
            "min_stock": round_sig12(self.min_stock),
            "final_stock": round_sig12(self.final_stock),
            "total_catch": round_sig12(self.total_catch),
            "depleted": self.depleted,
        }


def _forcing(alpha_r: float = 0.0, alpha_k: float = 0.0, phi_r: float = 0.0,
             phi_k: float = 0.0, r0: float = _R0, k0: float = _K0) -> Forcing:
    return Forcing(SinusoidSpec(r0, alpha_r, phi_r, 1.0), SinusoidSpec(k0, alpha_k, phi_k, 1.0))


def _quota(start_month: int, months: int, tons_per_month: float) -> HarvestPolicy:
    seg = Segment(start_month / 12.0, (start_month + months) / 12.0, tons_per_month * 12.0)
    return HarvestPolicy(HarvestMode.QUOTA, (seg,), repeat=1.0)


def preset(name: str) -> list[Scenario]:
    """Scenarios for one named experiment; raises ConfigError for unknown names."""
    growth = GrowthParams(_R0, _BETA, _GAMMA)
    effort = HarvestPolicy.constant_effort(_EFFORT)

    if name == "fig2":
        return [
            Scenario(GrowthParams(_R0, beta, gamma), _forcing(alpha_k=0.5), effort,
                     _N0, _SWEEP_HORIZON, label)
            for beta, gamma, label in (
                (0.0, 1.0, "N1 logistic (beta=0, gamma=1)"),
                (0.2, 5.0, "N2 (beta=0.2, gamma=5)"),
                (4.0, 0.5, "N3 (beta=4, gamma=0.5)"),
            )
        ]
    if name == "fig3":
        return [
            Scenario(growth, _forcing(alpha_r=0.5, alpha_k=ak), effort, _N0,
                     _SWEEP_HORIZON, f"N{i + 1} (alpha_K={ak})")
            for i, ak in enumerate((0.1, 0.5, 0.7))
        ]
    if name == "fig4":
        return [
            Scenario(growth, _forcing(alpha_r=ar), effort, _N0,
                     _SWEEP_HORIZON, f"N{i + 1} (alpha_r={ar})")
            for i, ar in enumerate((0.1, 0.5, 0.9))
        ]
    if name == "fig5":
        return [
            Scenario(growth, _forcing(alpha_r=0.5, alpha_k=ak, phi_r=0.5), effort, _N0,
                     _SWEEP_HORIZON, f"N{i + 1} (alpha_K={ak}, opposed phases)")
            for i, ak in enumerate((0.1, 0.5, 0.7))
        ]
    if name == "fig6-static":
        forcing = _forcing(alpha_k=0.5, phi_k=_QUOTA_PHASE_K)
        return [
            Scenario(growth, forcing, HarvestPolicy(HarvestMode.QUOTA,
                     (Segment(0.0, 1.0, 12.0),), repeat=1.0),
                     _N0, _QUOTA_HORIZON, "N1 year-round quota 12 t/yr"),
            Scenario(growth, forcing, _quota(5, 6, 2.0),
                     _N0, _QUOTA_HORIZON, "N2 June-Nov quota 2 t/month"),
            Scenario(growth, forcing, _quota(8, 3, 4.0),
                     _N0, _QUOTA_HORIZON, "N3 Sept-Nov quota 4 t/month"),
        ]
    if name == "fig7-adaptive":
        forcing = _forcing(alpha_k=0.5, phi_k=_QUOTA_PHASE_K)
        return [
            Scenario(growth, forcing, _quota(2, 6, 2.0),
                     _N0, _QUOTA_HORIZON, "N2 March-Aug quota 2 t/month"),
            Scenario(growth, forcing, _quota(2, 3, 4.0),
                     _N0, _QUOTA_HORIZON, "N3 March-May quota 4 t/month"),
        ]
    raise ConfigError(f"unknown preset {name!r}; expected one of {', '.join(PRESET_NAMES)}")


_trapezoid = getattr(np, "trapezoid", None) or np.trapz


def _period_average(t: np.ndarray, y: np.ndarray, t_end: float, period: float) -> float:
    """Trapezoidal time average over the last full period (or the whole span)."""
    t_start = t_end - period
    if t_start < t[0] - 1e-12:
        t_start = t[0]
    mask = t >= t_start - 1e-12
    tt, yy = t[mask], y[mask]
    if len(tt) < 2:
        return float(yy[-1]) if len(yy) else math.nan
    return float(_trapezoid(yy, tt) / (tt[-1] - tt[0]))


def run_scenario(s: Scenario, cfg: IntegratorConfig | None = None) -> tuple[Trajectory, StrategyMetrics]:
    """Integrate one scenario and summarize it.

    Averages use the last full system period of the horizon so start-up
    transients do not contaminate them; the cumulative catch comes from the
    quadrature carried inside the integrator.
    """
    traj = integrate(ModelState(0.0, s.n0), s.horizon, s.model(), cfg)
    period = s.forcing.system_period
    n_bar = _period_average(traj.t, traj.n, s.horizon, period)
    k_bar = _period_average(traj.t, traj.k, s.horizon, period)
    metrics = StrategyMetrics(
        n_bar=n_bar,
        k_bar=k_bar,
        min_stock=float(traj.n.min()),
        final_stock=float(traj.n[-1]),
        total_catch=float(traj.catch[-1]),
        depleted=any(ev.kind == "Depletion" for ev in traj.events),
    )
    return traj, metrics


def compare_strategies(scenarios: list[Scenario],
                       cfg: IntegratorConfig | None = None) -> list[tuple[Scenario, StrategyMetrics]]:
    """Run and rank scenarios that share growth and forcing.

    Sorted by final stock descending, ties broken by total catch descending.
    """
    if len(scenarios) < 2:
        raise MismatchError("strategy comparison needs at least two scenarios")
    first = scenarios[0]
    for s in scenarios[1:]:
        if s.growth != first.growth or s.forcing != first.forcing:
            raise MismatchError(
                f"scenario {s.label!r} does not share growth/forcing with {first.label!r}"
            )
    rows = [(s, run_scenario(s, cfg)[1]) for s in scenarios]
    rows.sort(key=lambda row: (-row[1].final_stock, -row[1].total_catch))
    return rows


def emit_csv(traj: Trajectory, metrics: StrategyMetrics, path: str | Path,
             dt: float = DAILY) -> Path:
    """Write the daily-resampled trajectory as CSV plus a metrics JSON sibling.

    Columns are t,N,K,r,effort,harvest_rate at 12 significant digits; the
    metrics go to ``<path>.metrics.json``.
    """
    path = Path(path)
    header = "t,N,K,r,effort,harvest_rate"
    if len(traj.t) == 0:
        path.write_text(header + "\n")
    else:
        res = traj.resample(dt)
        lines = [header]
        for i in range(len(res.t)):
            lines.append(",".join(
                f"{value:.12g}" for value in
                (res.t[i], res.n[i], res.k[i], res.r[i], res.effort[i], res.harvest[i])
            ))
        path.write_text("\n".join(lines) + "\n")
    metrics_path = path.with_name(path.name + ".metrics.json")
    metrics_path.write_text(json.dumps(metrics.to_dict(), indent=2, sort_keys=True) + "\n")
    return path


# ---------------------------------------------------------------------------
# Scenario document (JSON) schema

_GROWTH_KEYS = {"r0", "beta", "gamma"}
_SIN_KEYS = {"baseline", "amplitude", "phase", "period"}
_FORCING_KEYS = {"r", "k", "system_period"}
_POLICY_KEYS = {"mode", "segments", "repeat"}
_SEGMENT_KEYS = {"start", "end", "rate"}
_TOP_KEYS = {"growth", "forcing", "policy", "n0", "horizon", "label"}


def _require_mapping(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(f"{path}: expected an object, got {type(value).__name__}")
    return value


def _reject_unknown(d: dict, allowed: set[str], path: str) -> None:
    unknown = set(d) - allowed
    if unknown:
        raise ConfigError(f"{path}: unknown keys {sorted(unknown)}")


def _number(d: dict, key: str, path: str, required: bool = True, default=None):
    if key not in d or (d[key] is None and not required):
        if key not in d and required:
            raise ConfigError(f"{path}.{key}: missing required value")
        return default
    value = d[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}.{key}: expected a number, got {value!r}")
    return float(value)


def _sinusoid(d: dict, path: str) -> SinusoidSpec:
    d = _require_mapping(d, path)
    _reject_unknown(d, _SIN_KEYS, path)
    try:
        return SinusoidSpec(
            baseline=_number(d, "baseline", path),
            amplitude=_number(d, "amplitude", path, required=False, default=0.0),
            phase=_number(d, "phase", path, required=False, default=0.0),
            period=_number(d, "period", path, required=False, default=1.0),
        )
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def scenario_from_dict(doc: dict) -> Scenario:
    """Parse and validate a scenario document; errors carry the offending key path."""
    doc = _require_mapping(doc, "scenario")
    _reject_unknown(doc, _TOP_KEYS, "scenario")
    for key in ("growth", "forcing", "policy"):
        if key not in doc:
            raise ConfigError(f"scenario.{key}: missing required section")

    g = _require_mapping(doc["growth"], "growth")
    _reject_unknown(g, _GROWTH_KEYS, "growth")
    r0 = _number(g, "r0", "growth")
    try:
        growth = GrowthParams(r=r0, beta=_number(g, "beta", "growth"),
                              gamma=_number(g, "gamma", "growth"))
    except ValueError as exc:
        raise ConfigError(f"growth: {exc}") from exc

    fc = _require_mapping(doc["forcing"], "forcing")
    _reject_unknown(fc, _FORCING_KEYS, "forcing")
    if "r" not in fc or "k" not in fc:
        raise ConfigError("forcing: both 'r' and 'k' sinusoids are required")
    r_spec = _sinusoid(fc["r"], "forcing.r")
    k_spec = _sinusoid(fc["k"], "forcing.k")
    if abs(r_spec.baseline - r0) > 1e-12 * max(abs(r0), 1.0):
        raise ConfigError(
            f"forcing.r.baseline: {r_spec.baseline} must equal growth.r0 = {r0}; "
            "the model has a single intrinsic-rate baseline"
        )
    try:
        forcing = Forcing(r_spec, k_spec,
                          system_period=_number(fc, "system_period", "forcing", required=False))
    except ValueError as exc:
        raise ConfigError(f"forcing: {exc}") from exc

    p = _require_mapping(doc["policy"], "policy")
    _reject_unknown(p, _POLICY_KEYS, "policy")
    mode_raw = p.get("mode")
    if mode_raw not in ("effort", "quota"):
        raise ConfigError(f"policy.mode: expected 'effort' or 'quota', got {mode_raw!r}")
    if "segments" not in p or not isinstance(p["segments"], list):
        raise ConfigError("policy.segments: expected a list of segments")
    segments = []
    for i, seg in enumerate(p["segments"]):
        seg = _require_mapping(seg, f"policy.segments[{i}]")
        _reject_unknown(seg, _SEGMENT_KEYS, f"policy.segments[{i}]")
        try:
            segments.append(Segment(
                start=_number(seg, "start", f"policy.segments[{i}]"),
                end=_number(seg, "end", f"policy.segments[{i}]"),
                rate=_number(seg, "rate", f"policy.segments[{i}]"),
            ))
        except ValueError as exc:
            raise ConfigError(f"policy.segments[{i}]: {exc}") from exc
    repeat = _number(p, "repeat", "policy", required=False)
    try:
        policy = HarvestPolicy(HarvestMode(mode_raw), tuple(segments), repeat=repeat)
    except ValueError as exc:
        raise ConfigError(f"policy: {exc}") from exc

    label = doc.get("label", "")
    if not isinstance(label, str):
        raise ConfigError(f"label: expected a string, got {label!r}")
    try:
        return Scenario(growth=growth, forcing=forcing, policy=policy,
                        n0=_number(doc, "n0", "scenario"),
                        horizon=_number(doc, "horizon", "scenario"),
                        label=label)
    except ValueError as exc:
        raise ConfigError(f"scenario: {exc}") from exc


def scenario_to_dict(s: Scenario) -> dict:
    """Inverse of scenario_from_dict; omits null repeat and empty labels."""
    if any(not math.isfinite(seg.end) for seg in s.policy.segments):
        raise ConfigError("policy: unbounded segments cannot be serialized; use a repeating schedule")
    policy: dict = {
        "mode": s.policy.mode.value,
        "segments": [
            {"start": seg.start, "end": seg.end, "rate": seg.rate}
            for seg in s.policy.segments
        ],
    }
    if s.policy.repeat is not None:
        policy["repeat"] = s.policy.repeat
    doc = {
        "growth": {"r0": s.growth.r, "beta": s.growth.beta, "gamma": s.growth.gamma},
        "forcing": {
            "r": {"baseline": s.forcing.r_spec.baseline, "amplitude": s.forcing.r_spec.amplitude,
                  "phase": s.forcing.r_spec.phase, "period": s.forcing.r_spec.period},
            "k": {"baseline": s.forcing.k_spec.baseline, "amplitude": s.forcing.k_spec.amplitude,
                  "phase": s.forcing.k_spec.phase, "period": s.forcing.k_spec.period},
            "system_period": s.forcing.system_period,
        },
        "policy": policy,
        "n0": s.n0,
        "horizon": s.horizon,
    }
    if s.label:
        doc["label"] = s.label
    return doc
