"""Command-line interface.

Exit codes: 0 success, 1 physics/validation rejection or failed run,
2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import outputs as out_mod
from .errors import SimulationError
from .medium import validate_regime
from .propagator import _initial_envelope, run, split_step_oracle
from .scenario import (ARTIFACT_VERSION, EstimateReport, OutputSpec,
                       parse_scenario, preset)
from .waveguide import coupling_amplitude


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eitsoliton",
        description="Weak-light spatial solitons in a coupling-light-induced "
                    "EIT nonlinear waveguide",
    )
    parser.add_argument("--version", action="version", version=ARTIFACT_VERSION)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="propagate a scenario (Crank-Nicolson)")
    src = p_run.add_mutually_exclusive_group(required=True)
    src.add_argument("config", nargs="?", help="scenario configuration file")
    src.add_argument("--preset", choices=("fig3", "fig4", "fig5"),
                     help="built-in scenario preset")
    p_run.add_argument("--out", default=None, help="output directory")

    p_est = sub.add_parser("estimate", help="analytic width/limits/flux estimate")
    p_est.add_argument("--n-per-m3", type=float, default=1e20)
    p_est.add_argument("--mu-cm", type=float, default=3e-29)
    p_est.add_argument("--gamma-per-s", type=float, default=3e7)
    p_est.add_argument("--lambda-p-m", type=float, default=800e-9)
    p_est.add_argument("--re-gamma4-factor", type=float, default=-10.0,
                       help="Re(Gamma4) in units of gamma")
    p_est.add_argument("--ep-ratio", type=float, default=1e-2,
                       help="E_p,max / E_c")
    p_est.add_argument("--ec-v-per-m", type=float, default=None,
                       help="coupling amplitude; defaults to the field scale E0")
    p_est.add_argument("--dominance", type=float, default=10.0)

    p_chi = sub.add_parser("chi-scan", help="transverse chi1/chi3 profile CSV")
    p_chi.add_argument("config")
    p_chi.add_argument("--xs", default=None, metavar="MIN:MAX:COUNT",
                       help="x sample range in metres; defaults to the grid")
    p_chi.add_argument("--out", default="chi_profile.csv")

    p_val = sub.add_parser("validate", help="weak-probe validity report")
    p_val.add_argument("config")

    p_orc = sub.add_parser("oracle", help="split-step cross-validation run")
    p_orc.add_argument("config")
    p_orc.add_argument("--out", default=None, help="output directory")

    return parser


def _load_scenario(args):
    if getattr(args, "preset", None):
        return preset(args.preset)
    text = Path(args.config).read_text()
    return parse_scenario(text)


def _resolve_outputs(scenario, out_dir):
    """Apply --out: preset scenarios get default outputs, files get prefixed."""
    outputs = list(scenario.outputs)
    if not outputs:
        base = Path(out_dir) if out_dir else Path("out")
        outputs = [
            OutputSpec("metrics", str(base / "metrics.csv"), "csv"),
            OutputSpec("snapshots", str(base / "field.bin"), "binary"),
        ]
    elif out_dir:
        outputs = [
            OutputSpec(o.what, str(Path(out_dir) / o.path), o.format)
            for o in outputs
        ]
    sidecar = Path(outputs[0].path).parent / "scenario.cfg"
    return scenario.with_outputs(outputs), sidecar


def _cmd_run(args, propagate) -> int:
    scenario = _load_scenario(args)
    scenario, sidecar = _resolve_outputs(scenario, args.out)
    traj = propagate(scenario)
    written = out_mod.write_outputs(traj, sidecar_path=sidecar)
    for path in written:
        print(path)
    final = traj.final.metrics
    print(f"final z = {traj.final.z:.6g} m, power = {final.power:.6g}, "
          f"peaks = {final.n_peaks}")
    return 0


def _cmd_estimate(args) -> int:
    from .scenario import estimate_report

    report: EstimateReport = estimate_report(
        n=args.n_per_m3, mu=args.mu_cm, gamma=args.gamma_per_s,
        lambda_p=args.lambda_p_m, re_gamma4_factor=args.re_gamma4_factor,
        ep_ratio=args.ep_ratio, e_c=args.ec_v_per_m, dominance=args.dominance,
    )
    for line in report.lines():
        print(line)
    return 0


def _cmd_chi_scan(args) -> int:
    scenario = _load_scenario(args)
    if args.xs is not None:
        try:
            lo, hi, count = args.xs.split(":")
            xs = np.linspace(float(lo), float(hi), int(count))
        except ValueError:
            print(f"error: --xs expects MIN:MAX:COUNT, got {args.xs!r}",
                  file=sys.stderr)
            return 2
        from dataclasses import replace

        grid = replace(scenario.grid, x_min=xs[0], x_max=xs[-1], nx=len(xs))
        scenario = replace(scenario, grid=grid)
    out_mod.write_chi_csv(scenario, args.out)
    print(args.out)
    return 0


def _cmd_validate(args) -> int:
    scenario = _load_scenario(args)
    envelope = _initial_envelope(scenario)
    e_p_max = float(np.max(np.abs(envelope)))
    e_c = abs(coupling_amplitude(scenario.beam, scenario.beam.center_x, 0.0))
    report = validate_regime(
        scenario.atomic, e_p_max, e_c, dominance=scenario.solver.dominance
    )
    for line in report.lines():
        print(line)
    return 0 if report.all_satisfied else 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args, run)
        if args.command == "oracle":
            return _cmd_run(args, split_step_oracle)
        if args.command == "estimate":
            return _cmd_estimate(args)
        if args.command == "chi-scan":
            return _cmd_chi_scan(args)
        if args.command == "validate":
            return _cmd_validate(args)
    except (SimulationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
