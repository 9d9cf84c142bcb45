"""Command-line front end.

Subcommands: ``qubit``, ``chsh``, ``composite``, ``stokes``, ``verify``.
Outputs are JSON (canonical key order) or CSV.  Every record embeds the
tool version, the seed, and the parameters it was produced from, and the
same command line with the same seed writes byte-identical files.  Angles
on the command line need an explicit ``deg``/``rad`` suffix; axes are JSON,
either ``[x, y, z]`` or ``{"theta": ..., "phi": ...}``.

Exit status: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np
from scipy.stats import chi2 as chi2_dist

from . import __version__, chsh, composite, dichotomic, figures
from .axes import CANONICAL_FRAME, UnitAxis, Z_AXIS, axis_from_json, make_axis, parse_angle
from .composite import CompositeState, LEVELS
from .dichotomic import ElementaryState
from .rng import derive_rng, fresh_seed
from .verify import DEFAULT_TOLERANCE, run_verification

CHSH_MODELS = ("quantum", "lhv-sign", "lhv-scan")


def _angle_arg(text: str) -> float:
    try:
        return parse_angle(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _axis_arg(text: str) -> UnitAxis:
    try:
        return axis_from_json(json.loads(text))
    except (json.JSONDecodeError, ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad axis {text!r}: {exc}") from None


def _config_arg(text: str) -> chsh.ChshConfig:
    try:
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("expected a JSON object")
        missing = {"n", "n_prime", "m", "m_prime"} - set(data)
        if missing:
            raise ValueError(f"missing axes {sorted(missing)}")
        return chsh.ChshConfig(**{key: axis_from_json(data[key]) for key in ("n", "n_prime", "m", "m_prime")})
    except (json.JSONDecodeError, ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad axes config {text!r}: {exc}") from None


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _grid_int(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError("grid resolution must be at least 2")
    return value


def _seed_arg(text: str) -> int:
    value = int(text)
    if not (0 <= value < 2**64):
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not (math.isfinite(value) and value > 0):
        raise argparse.ArgumentTypeError("must be a positive finite number")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed_arg, default=None, help="64-bit seed; drawn from system entropy if omitted")
    common.add_argument("--format", choices=("json", "csv"), default="json", help="output format")
    common.add_argument("--out", type=Path, default=None, help="write output to this path instead of stdout")
    common.add_argument("--a", type=_positive_float, default=1.0, help="outcome magnitude")
    common.add_argument("--fig", type=Path, default=None, help="also render a figure to this path")

    parser = argparse.ArgumentParser(prog="spinstats", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"spinstats {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_qubit = sub.add_parser("qubit", parents=[common], help="two-outcome transition statistics at an angle")
    p_qubit.add_argument("--theta", type=_angle_arg, required=True, help="analyzer angle from the preparation axis (e.g. 60deg)")
    p_qubit.add_argument("--phi", type=_angle_arg, default=0.0, help="analyzer azimuth (default 0rad)")
    p_qubit.add_argument("--trials", type=_positive_int, default=100_000, help="number of sampled outcomes")
    p_qubit.set_defaults(func=cmd_qubit)

    p_chsh = sub.add_parser("chsh", parents=[common], help="four-correlation combination for a correlator model")
    group = p_chsh.add_mutually_exclusive_group(required=True)
    group.add_argument("--canonical", action="store_true", help="coplanar axes at successive 45 degrees")
    group.add_argument("--axes", type=_config_arg, default=None, help='JSON object with axes n, n_prime, m, m_prime')
    p_chsh.add_argument("--model", choices=CHSH_MODELS, default="quantum")
    p_chsh.add_argument("--trials", type=_nonnegative_int, default=100_000, help="sampled pairs per analyzer pair (0 = analytic only)")
    p_chsh.set_defaults(func=cmd_chsh)

    p_comp = sub.add_parser("composite", parents=[common], help="three-outcome transition tables over a theta grid")
    p_comp.add_argument("--grid", type=_grid_int, default=50, help="number of theta grid points (>= 2)")
    p_comp.add_argument("--model", choices=composite.MODELS, default="principled")
    p_comp.set_defaults(func=cmd_composite)

    p_stokes = sub.add_parser("stokes", parents=[common], help="two-channel counting experiment")
    p_stokes.add_argument("--events", type=_positive_int, default=1_000_000, help="number of detected quanta")
    p_stokes.add_argument("--prep", type=_axis_arg, default=Z_AXIS, help="preparation axis (JSON)")
    p_stokes.add_argument("--meas", type=_axis_arg, default=UnitAxis(1.0, 0.0, 0.0), help="analyzer axis (JSON)")
    p_stokes.set_defaults(func=cmd_stokes)

    p_verify = sub.add_parser("verify", parents=[common], help="run the agreement and invariant checks")
    p_verify.add_argument("--tolerance", type=_positive_float, default=DEFAULT_TOLERANCE)
    p_verify.set_defaults(func=cmd_verify)

    return parser


def _resolve_seed(args) -> int:
    if args.seed is None:
        seed = fresh_seed()
        print(f"seed: {seed}", file=sys.stderr)
        return seed
    return args.seed


def _emit(args, record: dict, csv_header: tuple, csv_rows: list[tuple], figure_fn=None) -> None:
    if args.format == "json":
        text = json.dumps(record, sort_keys=True, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(csv_header)
        writer.writerows(csv_rows)
        text = buf.getvalue()
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    if args.fig is not None and figure_fn is not None:
        figures.save_figure(figure_fn(record), str(args.fig))


def _chi_p_value(statistic: float, dof: int) -> float:
    if dof < 1:
        return 1.0
    if math.isinf(statistic):
        return 0.0
    return float(chi2_dist.sf(statistic, dof))


def cmd_qubit(args) -> int:
    seed = _resolve_seed(args)
    axis = make_axis(args.theta, args.phi)
    prepared = ElementaryState(axis=Z_AXIS, sign=1, a=args.a)
    dist = dichotomic.transition_probability(prepared, axis)
    n_plus, n_minus = dichotomic.sample_counts(prepared, axis, args.trials, derive_rng(seed))
    expected = (args.trials * dist.p_plus, args.trials * dist.p_minus)
    statistic = dichotomic.chi_square((n_plus, n_minus), expected)
    dof = sum(1 for p in dist.as_tuple() if p > 0.0) - 1
    record = {
        "command": "qubit",
        "version": __version__,
        "seed": seed,
        "spec": {"theta_rad": args.theta, "phi_rad": args.phi, "trials": args.trials, "a": args.a},
        "axis": axis.to_json(),
        "analytic": {"p_plus": dist.p_plus, "p_minus": dist.p_minus},
        "counts": {"plus": n_plus, "minus": n_minus},
        "frequencies": {"plus": n_plus / args.trials, "minus": n_minus / args.trials},
        "chi_square": statistic,
        "p_value": _chi_p_value(statistic, dof),
        "trials": args.trials,
        "a": args.a,
    }
    header = ("theta_rad", "phi_rad", "a", "trials", "seed", "p_plus", "p_minus", "freq_plus", "freq_minus", "chi_square", "p_value")
    row = (args.theta, args.phi, args.a, args.trials, seed, dist.p_plus, dist.p_minus, record["frequencies"]["plus"], record["frequencies"]["minus"], statistic, record["p_value"])
    _emit(args, record, header, [row], figures.qubit_figure)
    return 0


def cmd_chsh(args) -> int:
    seed = _resolve_seed(args)
    config = chsh.ChshConfig.canonical() if args.canonical else args.axes
    base = {
        "command": "chsh",
        "version": __version__,
        "seed": seed,
        "spec": {"canonical": bool(args.canonical), "model": args.model, "trials": args.trials},
        "config": config.to_json_dict(),
        "model": args.model,
    }
    if args.model == "lhv-scan":
        max_abs_b, _ = chsh.lhv_deterministic_scan()
        strategies = [
            {"v1n": s.v1n, "v1np": s.v1np, "v2m": s.v2m, "v2mp": s.v2mp, "b_value": s.b_value()}
            for s in chsh.DeterministicStrategy.all_strategies()
        ]
        record = {**base, "max_abs_b": max_abs_b, "strategies": strategies}
        header = ("v1n", "v1np", "v2m", "v2mp", "b_value")
        rows = [(s["v1n"], s["v1np"], s["v2m"], s["v2mp"], s["b_value"]) for s in strategies]
        _emit(args, record, header, rows, figures.chsh_figure)
        return 0

    model = chsh.CorrelatorModel.quantum_singlet() if args.model == "quantum" else chsh.CorrelatorModel.lhv_sign()
    result = chsh.chsh_value(config, model)
    record = {**base, **result.to_json_dict(), "trials": args.trials, "estimate": None, "stderr": None, "monte_carlo": None}
    if args.model == "quantum" and args.trials > 0:
        mc = chsh.monte_carlo_chsh(config, args.trials, seed)
        record["estimate"] = mc.estimate
        record["stderr"] = mc.stderr
        record["monte_carlo"] = mc.to_json_dict()
    header = ("model", "seed", "trials", "b_value", "violates", "e_nm", "e_npm", "e_nmp", "e_npmp", "estimate", "stderr")
    row = (args.model, seed, args.trials, result.b_value, result.violates, *result.correlations, record["estimate"], record["stderr"])
    _emit(args, record, header, [row], figures.chsh_figure)
    return 0


def cmd_composite(args) -> int:
    thetas = np.linspace(0.0, math.pi, args.grid)
    frame_sums = {}
    for level in LEVELS:
        state = CompositeState(axis=Z_AXIS, level=level, a=args.a)
        row_model = args.model if (args.model == "mixture" and level == 0) else "principled"
        frame_sums[level] = composite.j_squared_composite(state, CANONICAL_FRAME, model=row_model)
    rows = []
    for theta in thetas:
        meas = make_axis(float(theta), 0.0)
        for level in LEVELS:
            state = CompositeState(axis=Z_AXIS, level=level, a=args.a)
            if args.model == "mixture" and level == 0:
                table = composite.mixture_transition_table(state, meas)
            else:
                # the mixture construction redefines only the zero row
                table = composite.transition_table(state, meas)
            rows.append(
                {
                    "level": level,
                    "theta": float(theta),
                    "model": args.model,
                    "p": {"+2": table.p_plus2, "0": table.p_zero, "-2": table.p_minus2},
                    "j_squared": frame_sums[level],
                }
            )
    record = {
        "command": "composite",
        "version": __version__,
        "seed": args.seed,
        "spec": {"grid": args.grid, "model": args.model, "a": args.a},
        "model": args.model,
        "a": args.a,
        "rows": rows,
    }
    header = ("theta_rad", "model", "level", "p_plus2", "p_zero", "p_minus2", "j_squared")
    csv_rows = [
        (r["theta"], r["model"], r["level"], r["p"]["+2"], r["p"]["0"], r["p"]["-2"], r["j_squared"])
        for r in rows
    ]
    _emit(args, record, header, csv_rows, figures.composite_figure)
    return 0


def cmd_stokes(args) -> int:
    seed = _resolve_seed(args)
    result = dichotomic.stokes_experiment(args.prep, args.meas, args.events, seed)
    record = {
        "command": "stokes",
        "version": __version__,
        "spec": {"events": args.events, "prep": args.prep.to_json(), "meas": args.meas.to_json()},
        "prep": args.prep.to_json(),
        "meas": args.meas.to_json(),
        "expected": args.prep.dot(args.meas),
        **result.to_json_dict(),
    }
    _emit(args, record, dichotomic.StokesRecord.CSV_HEADER, [result.csv_row()], figures.stokes_figure)
    return 0


def cmd_verify(args) -> int:
    report = run_verification(tolerance=args.tolerance)
    for check in report:
        tag = "PASS" if check.passed else "FAIL"
        print(f"{tag}  {check.name:32s} max_error={check.max_error:.3e}  tolerance={check.tolerance:.1e}")
    failures = [c for c in report if not c.passed]
    record = {
        "command": "verify",
        "version": __version__,
        "tolerance": args.tolerance,
        "passed": not failures,
        "checks": [c.to_json_dict() for c in report],
        "failures": [c.name for c in failures],
    }
    if args.out is not None:
        header = ("check", "max_error", "tolerance", "passed")
        rows = [(c.name, c.max_error, c.tolerance, c.passed) for c in report]
        _emit(args, record, header, rows)
    if failures:
        print("failed: " + json.dumps([c.to_json_dict() for c in failures], sort_keys=True))
        return 1
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    return args.func(args)
