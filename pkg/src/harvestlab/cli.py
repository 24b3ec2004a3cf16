"""Command-line front door.

Exit codes: 0 success, 1 usage or configuration error, 2 model or hypothesis
error, 3 I/O error.  Output files are written only after the computation
succeeds, so a failed invocation never leaves partial results behind.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .autonomous import equilibrium, local_stability, msy
from .errors import (
    ConfigError,
    HypothesisViolated,
    MismatchError,
    NoEquilibrium,
    NoSignChange,
    StepUnderflow,
)
from .integrate import IntegratorConfig
from .model import GrowthParams
from .periodic import find_periodic
from .scenarios import (
    PRESET_NAMES,
    compare_strategies,
    emit_csv,
    preset,
    run_scenario,
    scenario_from_dict,
)
from .numutil import round_sig12

_USAGE_ERROR = 1
_MODEL_ERROR = 2
_IO_ERROR = 3


def _thread_cap() -> int:
    raw = os.environ.get("HARVESTLAB_THREADS", "")
    if raw.strip():
        try:
            cap = int(raw)
        except ValueError:
            raise ConfigError(f"HARVESTLAB_THREADS must be an integer, got {raw!r}")
        if cap < 1:
            raise ConfigError(f"HARVESTLAB_THREADS must be positive, got {cap}")
        return cap
    return os.cpu_count() or 1


def _load_scenario(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IOError(f"cannot read config {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from exc
    return scenario_from_dict(doc)


def _slug(label: str, fallback: str) -> str:
    slug = re.sub(r"[^a-z0-9]+", "-", label.lower()).strip("-")
    return slug or fallback


def _growth_from_args(args) -> GrowthParams:
    try:
        return GrowthParams(r=args.r, beta=args.beta, gamma=args.gamma,
                            E=getattr(args, "effort", 0.0))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _cmd_equilibrium(args) -> int:
    rep = equilibrium(_growth_from_args(args))
    stab = local_stability(_growth_from_args(args))
    print(f"x_ge = {rep.x_ge:.12g}")
    print(f"x_le = {rep.x_le:.12g}")
    print(f"y_ge = {rep.y_ge:.12g}")
    print(f"y_le = {rep.y_le:.12g}")
    print(f"stable = {rep.stable} (derivative {stab.derivative:.12g})")
    return 0


def _cmd_msy(args) -> int:
    result = msy(_growth_from_args(args), resolution=args.resolution)
    print(f"E_opt = {result.effort:.12g}")
    print(f"Y_opt = {result.yield_:.12g}")
    return 0


def _integrator_config(args) -> IntegratorConfig | None:
    if args.step is None and args.tol is None:
        return None
    base = IntegratorConfig()
    return IntegratorConfig(h=args.step if args.step is not None else base.h,
                            tol=args.tol if args.tol is not None else base.tol)


def _warn_flag_shadowed(args) -> None:
    # The config file wins over command-line values for the same quantity.
    for flag, value in (("--n0", args.n0), ("--horizon", args.horizon)):
        if value is not None:
            print(f"warning: {flag} {value:g} ignored; the config file value takes precedence",
                  file=sys.stderr)


def _cmd_simulate(args) -> int:
    scenario = _load_scenario(args.config)
    _warn_flag_shadowed(args)
    traj, metrics = run_scenario(scenario, _integrator_config(args))
    emit_csv(traj, metrics, args.out)
    print(f"wrote {args.out} and {args.out}.metrics.json")
    return 0


def _cmd_preset(args) -> int:
    scenarios = preset(args.name)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    cfg = _integrator_config(args)

    def run_one(indexed):
        i, s = indexed
        traj, metrics = run_scenario(s, cfg)
        path = out_dir / f"{args.name}-{_slug(s.label, str(i + 1))}.csv"
        emit_csv(traj, metrics, path)
        return path

    with ThreadPoolExecutor(max_workers=min(_thread_cap(), len(scenarios))) as pool:
        for path in pool.map(run_one, enumerate(scenarios)):
            print(f"wrote {path}")
    return 0


def _cmd_periodic(args) -> int:
    scenario = _load_scenario(args.config)
    cert = find_periodic(scenario.model(), _integrator_config(args))
    doc = {
        "v0_star": round_sig12(cert.v0_star),
        "n0_of_0": round_sig12(cert.n0_of_0),
        "residual": round_sig12(cert.residual),
        "gas_decay": round_sig12(cert.gas_decay),
        "bracket": {
            "b0": round_sig12(cert.bracket.b0),
            "upper": cert.bracket.upper,
            "grid_points": cert.bracket.grid_points,
            "grid_min": round_sig12(cert.bracket.grid_min),
        },
        "iterations": cert.iterations,
    }
    print(json.dumps(doc, indent=2, sort_keys=True))
    return 0


def _cmd_compare(args) -> int:
    scenarios = [_load_scenario(path) for path in args.config]
    rows = compare_strategies(scenarios, _integrator_config(args))
    header = f"{'label':<40} {'final_stock':>12} {'total_catch':>12} {'n_bar':>10} {'min_stock':>10} {'depleted':>8}"
    print(header)
    for s, m in rows:
        print(f"{(s.label or '-'):<40} {m.final_stock:>12.4f} {m.total_catch:>12.4f} "
              f"{m.n_bar:>10.4f} {m.min_stock:>10.4f} {str(m.depleted):>8}")
    return 0


def _cmd_serve(args) -> int:
    from .server import serve

    serve(port=args.port, static_dir=args.static_dir, host=args.host)
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2; the contract wants 1
        self.print_usage(sys.stderr)
        raise SystemExit(_USAGE_ERROR)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="harvestlab",
                     description="Seasonally forced fishery model: simulate, analyze, serve.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_growth_flags(p, with_effort: bool):
        p.add_argument("--r", type=float, required=True, help="intrinsic growth rate (1/year)")
        p.add_argument("--beta", type=float, required=True, help="delaying-factor coefficient")
        p.add_argument("--gamma", type=float, required=True, help="crowding exponent")
        if with_effort:
            p.add_argument("--effort", type=float, required=True, help="harvest effort (1/year)")

    def add_integrator_flags(p):
        p.add_argument("--step", type=float, default=None, help="integrator base step (years)")
        p.add_argument("--tol", type=float, default=None, help="integrator local error tolerance")

    p = sub.add_parser("equilibrium", help="equilibria and yields of the constant model")
    add_growth_flags(p, with_effort=True)
    p.set_defaults(func=_cmd_equilibrium)

    p = sub.add_parser("msy", help="maximum sustainable yield over effort")
    add_growth_flags(p, with_effort=False)
    p.add_argument("--resolution", type=int, default=1000, help="effort grid resolution")
    p.set_defaults(func=_cmd_msy)

    p = sub.add_parser("simulate", help="run one scenario config to CSV")
    p.add_argument("--config", required=True, help="scenario JSON file")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--n0", type=float, default=None,
                   help="initial stock; the config file value takes precedence")
    p.add_argument("--horizon", type=float, default=None,
                   help="horizon in years; the config file value takes precedence")
    add_integrator_flags(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("preset", help="run a named experiment preset")
    p.add_argument("--name", required=True, choices=PRESET_NAMES)
    p.add_argument("--out-dir", required=True)
    add_integrator_flags(p)
    p.set_defaults(func=_cmd_preset)

    p = sub.add_parser("periodic", help="certify a periodic solution for a scenario config")
    p.add_argument("--config", required=True)
    add_integrator_flags(p)
    p.set_defaults(func=_cmd_periodic)

    p = sub.add_parser("compare", help="rank strategies sharing growth and forcing")
    p.add_argument("--config", required=True, nargs="+", help="two or more scenario JSON files")
    add_integrator_flags(p)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("serve", help="run the HTTP API and static UI server")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--static-dir", default=None)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _USAGE_ERROR
    except (HypothesisViolated, NoSignChange, NoEquilibrium, MismatchError, StepUnderflow) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _MODEL_ERROR
    except (IOError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _IO_ERROR


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
