"""Command-line interface.

Subcommands: radius, minimize, jacobi, integrate, verify. Machine-readable
output (a single JSON object, or CSV where selected) goes to standard
output; all human-oriented notes go to the error stream, so the tool
composes in pipelines. Identical command lines produce byte-identical
outputs.

Exit codes: 0 success, 2 argument or input error, 3 non-convergence or
failed verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .action import action, minimize, minimize_result_dict
from .dynamics import el_residual, integrate
from .geometry import build_config, check_csc_identity, ring_residual
from .jacobi import analyze, report_to_dict, saddle_scan, scan_to_csv
from .loopspace import SymmetryClass, loop_from_dict, loop_to_dict, symmetry_violation, zero_loop

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNCONVERGED = 3

DEFAULT_PLANARITY_THRESHOLD = 1e-3


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc) + "\n")


def _note(message: str) -> None:
    sys.stderr.write(message + "\n")


def _fail(message: str) -> int:
    _note(f"error: {message}")
    return EXIT_USAGE


def _write_text(path: str, text: str) -> None:
    with open(path, "w", newline="\n") as handle:
        handle.write(text)


def _seed_list(raw: str) -> tuple[int, ...]:
    try:
        seeds = tuple(int(part) for part in raw.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {raw!r}")
    if not seeds:
        raise argparse.ArgumentTypeError("need at least one seed")
    return seeds


def _scan_range(raw: str) -> tuple[int, int]:
    parts = raw.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected MIN:MAX, got {raw!r}")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MIN:MAX with integers, got {raw!r}")
    return lo, hi


def _default_grid(grid: int | None, max_harmonic: int) -> int:
    return max(256, 8 * max_harmonic) if grid is None else grid


def cmd_radius(args: argparse.Namespace) -> int:
    if args.n < 2:
        return _fail(f"--n must be >= 2, got {args.n}")
    config = build_config(args.n)
    identity = check_csc_identity(args.n)
    _emit(
        {
            "n": int(config.n),
            "csc_sum": float(config.csc_sum),
            "radius": float(config.radius),
            "ring_residual_max": float(ring_residual(config, t=0.0, samples=16)),
            "csc_identity": {
                "lhs": float(identity.lhs),
                "rhs": float(identity.rhs),
                "holds": bool(identity.holds),
            },
        }
    )
    return EXIT_OK


def cmd_minimize(args: argparse.Namespace) -> int:
    if args.n < 2:
        return _fail(f"--n must be >= 2, got {args.n}")
    if args.harmonics < 1:
        return _fail(f"--harmonics must be >= 1, got {args.harmonics}")
    if args.tol <= 0.0:
        return _fail(f"--tol must be positive, got {args.tol}")
    if args.max_iter < 0:
        return _fail(f"--max-iter must be >= 0, got {args.max_iter}")
    if args.amplitude <= 0.0:
        return _fail(f"--amplitude must be positive, got {args.amplitude}")
    grid = _default_grid(args.grid, args.harmonics)
    if grid < 8 * args.harmonics:
        return _fail(f"--grid must be >= 8*harmonics = {8 * args.harmonics}, got {grid}")

    symmetry = SymmetryClass(args.space)
    config = build_config(args.n)
    start = zero_loop(symmetry, args.harmonics) if args.start == "zero" else None
    result = minimize(
        config,
        symmetry,
        max_harmonic=args.harmonics,
        grid=grid,
        start=start,
        seeds=args.seed,
        amplitude=args.amplitude,
        tolerance=args.tol,
        max_iterations=args.max_iter,
        perturb=not args.no_perturb,
    )

    doc = minimize_result_dict(result, args.n)
    doc["el_residual"] = float(
        el_residual(config, result.loop, max(1024, 2 * result.loop.max_harmonic))
    )
    doc["action_of_zero_loop"] = float(config.n / config.radius)
    doc["is_nonplanar"] = bool(result.amplitude > args.planarity_threshold)
    if args.out is not None:
        _write_text(args.out, json.dumps(loop_to_dict(result.loop, args.n)) + "\n")
    _emit(doc)
    if not result.converged:
        _note(f"did not reach gradient norm {args.tol} within {args.max_iter} iterations")
        return EXIT_UNCONVERGED
    return EXIT_OK


def cmd_jacobi(args: argparse.Namespace) -> int:
    if args.scan is None:
        if args.n is None:
            return _fail("provide --n or --scan")
        if args.n < 2:
            return _fail(f"--n must be >= 2, got {args.n}")
        _emit(report_to_dict(analyze(build_config(args.n))))
        return EXIT_OK

    n_min, n_max = args.scan
    if not 2 <= n_min <= n_max:
        return _fail(f"--scan needs 2 <= MIN <= MAX, got {n_min}:{n_max}")
    if args.format == "json" and args.out is None:
        return _fail("scan mode needs --out for the CSV (or --format csv for stdout)")
    result = saddle_scan(n_min, n_max)
    csv_text = scan_to_csv(result)
    if args.format == "csv":
        if args.out is not None:
            _write_text(args.out, csv_text)
        sys.stdout.write(csv_text)
        return EXIT_OK
    _write_text(args.out, csv_text)
    _emit(
        {
            "n_min": int(n_min),
            "n_max": int(n_max),
            "n_star": None if result.n_star is None else int(result.n_star),
            "rows": len(result.rows),
            "csv_path": args.out,
        }
    )
    return EXIT_OK


def cmd_integrate(args: argparse.Namespace) -> int:
    if args.n < 2:
        return _fail(f"--n must be >= 2, got {args.n}")
    if args.dt <= 0.0:
        return _fail(f"--dt must be positive, got {args.dt}")
    if args.steps < 1:
        return _fail(f"--steps must be >= 1, got {args.steps}")
    config = build_config(args.n)
    trajectory = integrate(config, args.z0, args.v0, args.dt, args.steps)
    csv_text = trajectory.to_csv()
    if args.out is not None:
        _write_text(args.out, csv_text)
    if args.format == "csv":
        sys.stdout.write(csv_text)
        return EXIT_OK
    final = trajectory[len(trajectory) - 1]
    _emit(
        {
            "energy_drift_max": float(trajectory.energy_drift_max),
            "final_state": {"t": final.t, "z": final.z, "v": final.v},
        }
    )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        raw = Path(args.loop).read_text()
    except OSError as exc:
        return _fail(f"cannot read loop file: {exc}")
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        return _fail(f"loop file is not valid JSON: {exc}")
    try:
        loop, file_n = loop_from_dict(doc)
    except ValueError as exc:
        return _fail(f"bad loop document: {exc}")
    n = args.n if args.n is not None else file_n
    if n < 2:
        return _fail(f"--n must be >= 2, got {n}")
    grid = _default_grid(args.grid, loop.max_harmonic)
    if grid < 8 * loop.max_harmonic:
        return _fail(f"--grid must be >= 8*max_harmonic = {8 * loop.max_harmonic}, got {grid}")

    config = build_config(n)
    evaluation = action(config, loop, grid)
    residual = el_residual(config, loop, max(1024, 2 * loop.max_harmonic))
    times = (np.arange(1024) + 0.5) / 1024
    violation = symmetry_violation(loop, times)
    power = loop.a**2 + loop.b**2
    total = float(power.sum())
    if total == 0.0:
        ratio = None
        _note("warning: loop is identically zero (planar critical point, amplitude 0)")
    else:
        k = np.arange(1, loop.max_harmonic + 1)
        ratio = float((k**2 * power).sum() / total)

    _emit(
        {
            "action": float(evaluation.value),
            "gradient_norm": float(evaluation.gradient_norm),
            "el_residual": float(residual),
            "symmetry_violation_max": float(violation),
            "poincare_wirtinger_ratio": ratio,
        }
    )
    passed = (
        evaluation.gradient_norm <= args.max_gradient_norm
        and residual <= args.max_el_residual
        and violation <= args.max_symmetry_violation
        and (ratio is None or ratio >= 1.0 - 1e-12)
    )
    if not passed:
        _note("verification thresholds not met")
        return EXIT_UNCONVERGED
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringaxis",
        description=(
            "Vertical-axis periodic orbits over a rotating ring of equal unit masses: "
            "ring geometry, action minimization over symmetric loop spaces, "
            "conjugate-point analysis of the planar rest solution, and trajectory checks."
        ),
        epilog="Exit codes: 0 success, 2 argument/input error, 3 non-convergence.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_radius = sub.add_parser("radius", help="ring radius, force-balance residual, identity audit")
    p_radius.add_argument("--n", type=int, required=True, help="number of primaries (>= 2)")
    p_radius.set_defaults(handler=cmd_radius)

    p_min = sub.add_parser("minimize", help="minimize the action over a symmetry class")
    p_min.add_argument("--n", type=int, required=True, help="number of primaries (>= 2)")
    p_min.add_argument(
        "--space", choices=[s.value for s in SymmetryClass], required=True,
        help="loop class: lambda1 (z(t+1/2)=-z(t)) or lambda2 (z(-t)=-z(t))",
    )
    p_min.add_argument("--harmonics", type=int, default=16, help="series truncation (default 16)")
    p_min.add_argument(
        "--grid", type=int, default=None,
        help="quadrature points, >= 8*harmonics (default max(256, 8*harmonics))",
    )
    p_min.add_argument("--tol", type=float, default=1e-8, help="gradient 2-norm target (default 1e-8)")
    p_min.add_argument("--max-iter", type=int, default=500, help="iteration cap per start (default 500)")
    p_min.add_argument(
        "--seed", type=_seed_list, default=(0, 1, 2, 3),
        help="comma-separated multi-start seeds (default 0,1,2,3)",
    )
    p_min.add_argument("--amplitude", type=float, default=0.5, help="random-start amplitude (default 0.5)")
    p_min.add_argument(
        "--start", choices=["random", "zero"], default="random",
        help="random multi-start (default) or the zero loop",
    )
    p_min.add_argument(
        "--no-perturb", action="store_true",
        help="do not nudge a zero start off the planar critical point",
    )
    p_min.add_argument(
        "--planarity-threshold", type=float, default=DEFAULT_PLANARITY_THRESHOLD,
        help="amplitude above which the result counts as nonplanar (default 1e-3)",
    )
    p_min.add_argument("--out", type=str, default=None, help="write the minimizer loop JSON here")
    p_min.set_defaults(handler=cmd_minimize)

    p_jac = sub.add_parser("jacobi", help="second-variation report or saddle scan over n")
    p_jac.add_argument("--n", type=int, default=None, help="single configuration to analyze")
    p_jac.add_argument("--scan", type=_scan_range, default=None, metavar="MIN:MAX",
                       help="scan a range of n instead")
    p_jac.add_argument("--out", type=str, default=None, help="CSV path for scan mode")
    p_jac.add_argument("--format", choices=["json", "csv"], default="json",
                       help="stdout payload in scan mode (default json summary)")
    p_jac.set_defaults(handler=cmd_jacobi)

    p_int = sub.add_parser("integrate", help="integrate the axial equation of motion")
    p_int.add_argument("--n", type=int, required=True, help="number of primaries (>= 2)")
    p_int.add_argument("--z0", type=float, required=True, help="initial height")
    p_int.add_argument("--v0", type=float, required=True, help="initial vertical velocity")
    p_int.add_argument("--dt", type=float, default=1e-4, help="time step (default 1e-4)")
    p_int.add_argument("--steps", type=int, default=10000, help="number of steps (default 10000)")
    p_int.add_argument("--out", type=str, default=None, help="write trajectory CSV here")
    p_int.add_argument("--format", choices=["json", "csv"], default="json",
                       help="stdout payload (default json summary)")
    p_int.set_defaults(handler=cmd_integrate)

    p_ver = sub.add_parser("verify", help="check a loop file against solution criteria")
    p_ver.add_argument("--loop", type=str, required=True, help="loop JSON file to verify")
    p_ver.add_argument("--n", type=int, default=None,
                       help="ring size (default: the loop file's n field)")
    p_ver.add_argument("--grid", type=int, default=None,
                       help="quadrature points (default max(256, 8*max_harmonic))")
    p_ver.add_argument("--max-gradient-norm", type=float, default=1e-6,
                       help="pass threshold on the action gradient norm (default 1e-6)")
    p_ver.add_argument("--max-el-residual", type=float, default=1e-4,
                       help="pass threshold on the Euler-Lagrange residual (default 1e-4)")
    p_ver.add_argument("--max-symmetry-violation", type=float, default=1e-10,
                       help="pass threshold on the symmetry identity (default 1e-10)")
    p_ver.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
