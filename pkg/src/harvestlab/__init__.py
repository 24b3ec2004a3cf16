"""Simulation and analysis toolkit for a seasonally forced, food-limited fishery model."""

from .autonomous import (
    EquilibriumReport,
    ImplicitConstant,
    MsyResult,
    StabilityReport,
    equilibrium,
    implicit_constant,
    local_stability,
    msy,
    phi,
    phi_prime,
)
from .errors import (
    ConfigError,
    DepletionError,
    HarvestlabError,
    HypothesisViolated,
    MismatchError,
    NoEquilibrium,
    NoSignChange,
    StepUnderflow,
)
from .integrate import (
    DAILY,
    Event,
    IntegratorConfig,
    Trajectory,
    check_envelope,
    envelope_report,
    integrate,
    integrate_v,
)
from .model import (
    Forcing,
    ForcedModel,
    GrowthParams,
    HarvestMode,
    HarvestPolicy,
    ModelState,
    MONTH,
    N_FLOOR,
    Segment,
    SinusoidSpec,
    dk_dt,
    e1_of_t,
    g1,
    growth_kernel,
    k_of_t,
    min_effective_effort,
    r_of_t,
    rhs_N,
    rhs_v,
)
from .periodic import (
    Bracket,
    GasReport,
    PeriodicCertificate,
    certify_gas,
    compute_b0,
    find_periodic,
    poincare_map,
)
from .scenarios import (
    PRESET_NAMES,
    Scenario,
    StrategyMetrics,
    compare_strategies,
    emit_csv,
    preset,
    run_scenario,
    scenario_from_dict,
    scenario_to_dict,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
