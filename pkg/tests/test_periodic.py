"""Bracket construction, period map, fixed-point certification, attraction."""

import math

import numpy as np
import pytest

from harvestlab import (
    Forcing,
    ForcedModel,
    GrowthParams,
    HarvestMode,
    HarvestPolicy,
    HypothesisViolated,
    IntegratorConfig,
    Segment,
    SinusoidSpec,
    certify_gas,
    compute_b0,
    equilibrium,
    find_periodic,
    phi_prime,
    poincare_map,
)

# Forcing mild enough that both positivity hypotheses hold for effort 0.5:
# max |K'/K| = 2 pi 0.045 / sqrt(1 - 0.045^2) = 0.283 < 0.5 < 1 - 0.283.
CERT_FORCING = Forcing(SinusoidSpec(1.0), SinusoidSpec(100.0, 0.045))
CERT_MODEL = ForcedModel(GrowthParams(1.0, 0.2, 5.0), HarvestPolicy.constant_effort(0.5),
                         CERT_FORCING)
FAST = IntegratorConfig(h=1.0 / 600.0)


def constant_model(effort=0.5, beta=0.0, gamma=1.0, k0=100.0):
    forcing = Forcing(SinusoidSpec(1.0), SinusoidSpec(k0, 0.0))
    return ForcedModel(GrowthParams(1.0, beta, gamma),
                       HarvestPolicy.constant_effort(effort), forcing)


class TestComputeB0:
    def test_constant_coefficients_value(self):
        m = constant_model(effort=0.5, beta=0.0, gamma=1.0)
        bracket = compute_b0(m.growth, m.policy, m.forcing, grid_points=1000)
        assert bracket.grid_min == pytest.approx(math.log(0.5), abs=1e-9)
        assert bracket.b0 == pytest.approx(math.log(0.5) - 0.01, abs=1e-9)
        assert bracket.b0 < bracket.grid_min < bracket.upper == 0.0

    def test_vanishing_effort_limit(self):
        m = constant_model(effort=1e-9)
        bracket = compute_b0(m.growth, m.policy, m.forcing, grid_points=100)
        assert bracket.grid_min == pytest.approx(0.0, abs=1e-8)
        assert bracket.b0 == pytest.approx(-0.01, abs=1e-8)

    def test_hypothesis_violation_detected_by_grid_sweep(self):
        # annual amplitude 0.5 makes r - E1 change sign for effort 0.3
        forcing = Forcing(SinusoidSpec(1.0), SinusoidSpec(100.0, 0.5))
        policy = HarvestPolicy.constant_effort(0.3)
        growth = GrowthParams(1.0, 0.2, 5.0)
        # oracle: direct sweep of r - E1 on the same grid
        worst = min(
            1.0 - (0.3 + 100.0 * 0.5 * 2.0 * math.pi * math.cos(2.0 * math.pi * t)
                   / (100.0 * (1.0 + 0.5 * math.sin(2.0 * math.pi * t))))
            for t in np.linspace(0.0, 1.0, 10_000, endpoint=False)
        )
        assert worst <= 0.0
        with pytest.raises(HypothesisViolated, match="positivity"):
            compute_b0(growth, policy, forcing)

    def test_certifiable_scenario_passes(self):
        bracket = compute_b0(CERT_MODEL.growth, CERT_MODEL.policy, CERT_MODEL.forcing)
        assert bracket.b0 < bracket.grid_min < 0.0


class TestPoincareMap:
    def test_constant_coefficients_fixed_point(self):
        m = constant_model(effort=0.5, beta=0.2, gamma=5.0)
        v_star = math.log(equilibrium(GrowthParams(1.0, 0.2, 5.0, 0.5)).x_ge)
        assert poincare_map(v_star, m, FAST) == pytest.approx(v_star, abs=1e-9)

    def test_strictly_increasing_on_random_pairs(self):
        rng = np.random.default_rng(29)
        for _ in range(50):
            a, b = sorted(rng.uniform(-2.0, -0.01, size=2))
            if b - a < 1e-6:
                continue
            pa = poincare_map(float(a), CERT_MODEL, FAST)
            pb = poincare_map(float(b), CERT_MODEL, FAST)
            assert pa < pb

    def test_sign_bracket_under_hypotheses(self):
        bracket = compute_b0(CERT_MODEL.growth, CERT_MODEL.policy, CERT_MODEL.forcing)
        assert poincare_map(bracket.b0, CERT_MODEL, FAST) > bracket.b0
        eps = 1e-12
        assert poincare_map(-eps, CERT_MODEL, FAST) < -eps

    def test_aperiodic_schedule_rejected(self):
        policy = HarvestPolicy(HarvestMode.EFFORT, (Segment(0.0, 0.5, 0.3),))
        m = ForcedModel(GrowthParams(1.0, 0.2, 5.0), policy, CERT_FORCING)
        with pytest.raises(HypothesisViolated, match="periodic"):
            poincare_map(-0.5, m)


class TestFindPeriodic:
    def test_constant_coefficients_recover_equilibrium(self):
        m = constant_model(effort=0.5, beta=0.2, gamma=5.0)
        cert = find_periodic(m, FAST, grid_points=2000)
        expected = 100.0 * equilibrium(GrowthParams(1.0, 0.2, 5.0, 0.5)).x_ge
        assert cert.n0_of_0 == pytest.approx(expected, abs=1e-6 * 100.0)

    def test_forced_certificate_properties(self):
        cert = find_periodic(CERT_MODEL, FAST)
        assert cert.residual < 1e-8
        assert cert.bracket.b0 < cert.v0_star < 0.0
        k0 = 100.0
        assert k0 * math.exp(cert.bracket.b0) < cert.n0_of_0 < k0

    def test_reintegration_closes_the_orbit(self):
        from harvestlab import ModelState, integrate

        cert = find_periodic(CERT_MODEL, FAST)
        traj = integrate(ModelState(0.0, cert.n0_of_0), 1.0, CERT_MODEL, FAST)
        assert abs(traj.n[-1] - cert.n0_of_0) < 1e-8 * 100.0

    def test_solution_is_nonconstant_under_forcing(self):
        from harvestlab import ModelState, integrate

        cert = find_periodic(CERT_MODEL, FAST)
        traj = integrate(ModelState(0.0, cert.n0_of_0), 1.0, CERT_MODEL, FAST)
        assert traj.n.max() - traj.n.min() > 0.01 * 100.0

    def test_certificate_is_idempotent(self):
        cert1 = find_periodic(CERT_MODEL, FAST)
        cert2 = find_periodic(CERT_MODEL, FAST)
        assert cert1.v0_star == cert2.v0_star  # deterministic pipeline
        again = poincare_map(cert1.v0_star, CERT_MODEL, FAST)
        assert abs(again - cert1.v0_star) < 1e-8

    def test_no_sign_change_reported_not_guessed_around(self):
        from harvestlab import NoSignChange

        # unharvested, with the capacity falling at t = 0: the tracking
        # solution starts above K(0), outside the (b0, 0) bracket, and the
        # residual keeps one sign; the solver must say so rather than invent
        # a fixed point
        forcing = Forcing(SinusoidSpec(1.0), SinusoidSpec(100.0, 0.045, 0.5, 1.0))
        m = ForcedModel(GrowthParams(1.0, 0.2, 5.0), HarvestPolicy.zero(), forcing)
        with pytest.raises(NoSignChange, match="sign"):
            find_periodic(m, FAST, grid_points=2000)


class TestCertifyGas:
    def test_start_on_the_orbit_has_zero_gap(self):
        cert = find_periodic(CERT_MODEL, FAST)
        report = certify_gas(CERT_MODEL, cert, [cert.n0_of_0], FAST)
        assert report.starts[0].ratio == 0.0
        assert report.passed

    def test_interior_starts_decay(self):
        cert = find_periodic(CERT_MODEL, FAST)
        report = certify_gas(CERT_MODEL, cert, [20.0, 80.0], FAST)
        assert report.passed
        assert all(s.ratio <= 0.1 for s in report.starts)

    def test_two_solutions_contract_across_periods(self):
        from harvestlab import integrate_v

        gaps = []
        for k in range(4):
            va = integrate_v(CERT_MODEL, math.log(0.2), 0.0, float(k) + 1.0, FAST)
            vb = integrate_v(CERT_MODEL, math.log(0.8), 0.0, float(k) + 1.0, FAST)
            gaps.append(abs(vb - va))
        assert all(g2 < g1 for g1, g2 in zip(gaps, gaps[1:]))

    def test_constant_coefficient_decay_matches_linearization(self):
        from harvestlab import integrate_v

        m = constant_model(effort=0.5, beta=0.2, gamma=5.0)
        p = GrowthParams(1.0, 0.2, 5.0, 0.5)
        v_star = math.log(equilibrium(p).x_ge)
        rate = phi_prime(v_star, p)
        # small symmetric perturbations decay at the linearized rate
        va = integrate_v(m, v_star + 0.02, 0.0, 1.0, FAST)
        vb = integrate_v(m, v_star - 0.02, 0.0, 1.0, FAST)
        observed = math.log(abs(va - vb) / 0.04)
        assert observed == pytest.approx(rate, abs=abs(rate))  # within factor ~e
        assert 0.5 * abs(rate) < abs(observed) < 2.0 * abs(rate)

    def test_gas_decay_recorded_in_certificate(self):
        cert = find_periodic(CERT_MODEL, FAST)
        assert 0.0 <= cert.gas_decay <= 0.1
