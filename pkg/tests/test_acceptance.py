"""Acceptance criteria, one test per criterion.

Each test prints one PASS/FAIL line (run with ``pytest -s`` to see them all).
Tolerances are pinned here and nowhere else.

Two criteria are known to fail as stated, and the tests report that honestly
rather than loosening the tolerance:

* autonomous convergence and the unharvested limit demand |x(50) - x*| < 1e-6
  for the parameter set (r=1, beta=4, gamma=0.5).  Its linearized decay rate
  is r * gamma * (1 - E*) (1 + E* beta) / (1 + beta) = 0.156 per year (0.1
  unharvested), so fifty years contract the gap by only exp(-7.8) ~ 4e-4
  (exp(-5) ~ 7e-3 unharvested).  The residual gap is ~5e-5 (~1e-2), far above
  the tolerance; no integrator accuracy can change the flow itself.
"""

import math
import time

import numpy as np
import pytest

from harvestlab import (
    Forcing,
    ForcedModel,
    GrowthParams,
    HarvestMode,
    HarvestPolicy,
    IntegratorConfig,
    ModelState,
    SinusoidSpec,
    certify_gas,
    check_envelope,
    equilibrium,
    find_periodic,
    growth_kernel,
    implicit_constant,
    integrate,
    min_effective_effort,
    preset,
    run_scenario,
)

PARAM_SETS = [
    (1.0, 0.0, 1.0, 0.5),
    (1.0, 0.2, 5.0, 0.3),
    (1.0, 4.0, 0.5, 0.4),
]
STARTS = (0.1, 0.5, 1.5)

# Effort 0.5 against a 4.5% capacity swing keeps both positivity hypotheses
# satisfied: max |K'/K| = 0.283 < 0.5 and 0.5 + 0.283 < r = 1.
CERT_FORCING = Forcing(SinusoidSpec(1.0), SinusoidSpec(100.0, 0.045))
CERT_MODEL = ForcedModel(GrowthParams(1.0, 0.2, 5.0), HarvestPolicy.constant_effort(0.5),
                         CERT_FORCING)

SWEEP_CFG = IntegratorConfig(h=1.0 / 400.0)


def _report(name: str, ok: bool, detail: str = "") -> None:
    print(f"\nACCEPTANCE {name}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
    assert ok, f"{name}: {detail}"


def _ratio_model(r, beta, gamma, effort):
    """Autonomous dynamics in ratio coordinates: K = 1, constant r."""
    forcing = Forcing.constant(r0=r, k0=1.0)
    policy = HarvestPolicy.constant_effort(effort) if effort > 0.0 else HarvestPolicy.zero()
    return ForcedModel(GrowthParams(r, beta, gamma), policy, forcing)


def _x_at(model, x0, t_end, cfg):
    return float(integrate(ModelState(0.0, x0), t_end, model, cfg).n[-1])


class TestAutonomousConvergence:
    def test_harvested_limits(self):
        cfg = IntegratorConfig(h=1.0 / 200.0)
        failures = []
        for r, beta, gamma, effort in PARAM_SETS:
            target = equilibrium(GrowthParams(r, beta, gamma, effort)).x_ge
            model = _ratio_model(r, beta, gamma, effort)
            for x0 in STARTS:
                tic = time.perf_counter()
                gap = abs(_x_at(model, x0, 50.0, cfg) - target)
                elapsed = time.perf_counter() - tic
                if gap >= 1e-6 or elapsed >= 1.0:
                    failures.append(
                        f"(r={r},beta={beta},gamma={gamma},E={effort},x0={x0}): "
                        f"gap={gap:.3g} time={elapsed:.2f}s"
                    )
        _report("autonomous-convergence", not failures,
                "|x(50)-x_ge|<1e-6 and <1s per case" if not failures
                else "; ".join(failures))

    def test_unharvested_limits(self):
        cfg = IntegratorConfig(h=1.0 / 200.0)
        failures = []
        for r, beta, gamma, _ in PARAM_SETS:
            model = _ratio_model(r, beta, gamma, 0.0)
            for x0 in STARTS:
                gap = abs(_x_at(model, x0, 50.0, cfg) - 1.0)
                if gap >= 1e-6:
                    failures.append(f"(r={r},beta={beta},gamma={gamma},x0={x0}): gap={gap:.3g}")
        _report("unharvested-limit", not failures,
                "|x(50)-1|<1e-6 for all E=0 cases" if not failures else "; ".join(failures))


class TestImplicitConservation:
    def test_constant_drift_below_tolerance(self):
        # starts chosen away from each equilibrium so the conserved constant
        # is well conditioned over the whole window
        cases = [
            ((1.0, 0.0, 1.0, 0.5), 0.8),
            ((1.0, 0.2, 5.0, 0.3), 0.1),
            ((1.0, 4.0, 0.5, 0.4), 0.5),
        ]
        cfg = IntegratorConfig(tol=1e-10)
        worst = 0.0
        for (r, beta, gamma, effort), x0 in cases:
            p = GrowthParams(r, beta, gamma, effort)
            traj = integrate(ModelState(0.0, x0), 10.0, _ratio_model(r, beta, gamma, effort), cfg)
            c0 = implicit_constant(x0, 0.0, p).c_value
            for t, x in zip(traj.t, traj.n):
                drift = abs(implicit_constant(float(x), float(t), p).c_value - c0) / abs(c0)
                worst = max(worst, drift)
        _report("implicit-conservation", worst < 1e-5, f"max relative drift {worst:.3g}")


class TestEquilibriumOracle:
    def test_closed_form_matches_bisection(self):
        rng = np.random.default_rng(101)
        worst = 0.0
        for _ in range(100):
            r = float(rng.uniform(0.2, 3.0))
            p = GrowthParams(r, float(rng.uniform(0.0, 5.0)),
                             float(rng.uniform(0.2, 6.0)),
                             float(rng.uniform(0.05, 0.95)) * r)
            lo, hi = 1e-12, 1.0
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                if growth_kernel(mid, p) - p.E > 0.0:
                    lo = mid
                else:
                    hi = mid
                if hi - lo < 1e-14:
                    break
            worst = max(worst, abs(equilibrium(p).x_ge - 0.5 * (lo + hi)))
        _report("equilibrium-oracle", worst < 1e-10, f"max |closed-form - bisection| {worst:.3g}")


class TestEnvelope:
    def test_envelope_on_presets_meeting_positivity(self):
        qualifying = []
        for name in ("fig2", "fig3", "fig4", "fig5", "fig6-static", "fig7-adaptive"):
            for s in preset(name):
                if s.policy.mode is not HarvestMode.EFFORT:
                    continue  # per-capita effort is stock dependent under a quota
                low, _ = min_effective_effort(s.policy, s.forcing, grid_points=10_000)
                if low > 0.0:
                    qualifying.append((name, s))
        assert [name for name, _ in qualifying] == ["fig4"] * 3
        bad = []
        for name, s in qualifying:
            traj = integrate(ModelState(0.0, s.n0), s.horizon, s.model(), SWEEP_CFG)
            if not check_envelope(traj, s.forcing):
                bad.append(f"{name}/{s.label}")
        _report("envelope-invariant", not bad,
                f"0<N<K on {len(qualifying)} qualifying preset runs" if not bad
                else f"violated on {bad}")


class TestPeriodicSolution:
    def test_certified_fixed_point(self):
        tic = time.perf_counter()
        cert = find_periodic(CERT_MODEL)
        elapsed = time.perf_counter() - tic
        k0 = 100.0
        traj = integrate(ModelState(0.0, cert.n0_of_0), 1.0, CERT_MODEL)
        closure = abs(traj.n[-1] - cert.n0_of_0)
        ok = (cert.residual < 1e-8
              and k0 * math.exp(cert.bracket.b0) < cert.n0_of_0 < k0
              and closure < 1e-8 * k0
              and elapsed < 10.0)
        _report("periodic-solution", ok,
                f"residual={cert.residual:.2e} closure={closure:.2e} "
                f"N0(0)={cert.n0_of_0:.4f} in ({k0 * math.exp(cert.bracket.b0):.4f}, {k0}) "
                f"time={elapsed:.2f}s")


class TestGlobalAttraction:
    def test_gap_decays_by_factor_ten(self):
        cert = find_periodic(CERT_MODEL)
        report = certify_gas(CERT_MODEL, cert, [20.0, 80.0])
        detail = ", ".join(f"start={s.start:g}: ratio={s.ratio:.2e}" for s in report.starts)
        _report("global-attraction", report.passed, detail)


@pytest.fixture(scope="module")
def sweep_averages():
    out = {}
    for name in ("fig3", "fig4", "fig5"):
        rows = [run_scenario(s, SWEEP_CFG) for s in preset(name)]
        out[name] = [(m.n_bar, m.k_bar) for _, m in rows]
    return out


class TestSeasonalSweeps:
    def test_fig3_average_decreases_with_capacity_amplitude(self, sweep_averages):
        n_bars = [n for n, _ in sweep_averages["fig3"]]
        k_bars = [k for _, k in sweep_averages["fig3"]]
        monotone = n_bars[0] > n_bars[1] > n_bars[2]
        bounded = all(n <= k for n, k in zip(n_bars, k_bars))
        _report("fig3-ordinal", monotone and bounded,
                f"n_bar={[round(v, 3) for v in n_bars]} k_bar={[round(v, 3) for v in k_bars]}")

    def test_fig4_insensitivity_below_five_percent(self, sweep_averages):
        n_bars = [n for n, _ in sweep_averages["fig4"]]
        spread = (max(n_bars) - min(n_bars)) / (sum(n_bars) / len(n_bars))
        _report("fig4-insensitivity", spread < 0.05, f"relative spread {spread:.4f}")

    def test_fig5_phase_shift_changes_the_profile(self, sweep_averages):
        fig3 = [n for n, _ in sweep_averages["fig3"]]
        fig4 = [n for n, _ in sweep_averages["fig4"]]
        fig5 = [n for n, _ in sweep_averages["fig5"]]
        spread4 = (max(fig4) - min(fig4)) / (sum(fig4) / len(fig4))
        diff = max(abs(a - b) for a, b in zip(fig3, fig5)) / (sum(fig3) / len(fig3))
        _report("fig5-phase-effect", diff > spread4,
                f"profile difference {diff:.4f} vs fig4 spread {spread4:.4f}")


class TestStrategyOrdering:
    def test_static_vs_adaptive_quota_schedules(self):
        fig6 = {s.label: run_scenario(s, SWEEP_CFG)[1] for s in preset("fig6-static")}
        fig7 = {s.label: run_scenario(s, SWEEP_CFG)[1] for s in preset("fig7-adaptive")}
        year_round = fig6["N1 year-round quota 12 t/yr"].final_stock
        june = fig6["N2 June-Nov quota 2 t/month"].final_stock
        sept = fig6["N3 Sept-Nov quota 4 t/month"].final_stock
        march = fig7["N3 March-May quota 4 t/month"].final_stock
        ok = (march >= sept) and (year_round < june) and (year_round < sept)
        _report("strategy-ordering", ok,
                f"march={march:.3f} sept={sept:.3f} june={june:.3f} year-round={year_round:.3f}")


class TestIntegratorOrder:
    def test_richardson_order_estimate(self):
        model = _ratio_model(1.0, 0.2, 5.0, 0.3)
        finals = []
        for h in (1.0 / 20.0, 1.0 / 40.0, 1.0 / 80.0):
            cfg = IntegratorConfig(h=h, tol=math.inf, max_halvings=0)
            finals.append(_x_at(model, 0.5, 2.0, cfg))
        order = math.log2(abs(finals[0] - finals[1]) / abs(finals[1] - finals[2]))
        _report("integrator-order", 3.8 <= order <= 4.2, f"estimated order {order:.3f}")
