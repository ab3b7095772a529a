"""Command-line interface and CSV emission.

Subcommands: simulate, weights, stability, verify, converge.  Exit codes:
0 success, 2 invalid input (bad arguments, config or parameters),
1 runtime failure (including failed verification suites).
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from ._version import __version__
from .config import build_manifest, output_directory, parse_config, write_manifest
from .errors import ValidationError
from .grid import FieldState
from .kernel import validate_params, weight
from .oracles import convergence_study
from .schemes import max_stable_dt
from .simulate import run
from .verify import SUITES, run_suites


def _fmt(value: float) -> str:
    # 17 significant digits round-trip any double; locale-independent
    return f"{value:.17g}"


def write_snapshot_csv(state: FieldState, path) -> None:
    """Write one profile as ``x,C`` rows, one per node, full precision."""
    xs = state.grid.nodes()
    lines = ["x,C"]
    lines.extend(f"{_fmt(x)},{_fmt(v)}" for x, v in zip(xs, state.values))
    Path(path).write_text("\n".join(lines) + "\n")


def read_profile_csv(path) -> tuple[list[float], list[float]]:
    """Read a profile written by write_snapshot_csv (or hand-made alike)."""
    xs: list[float] = []
    values: list[float] = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        if header.strip().lower() not in ("x,c", "x, c"):
            raise ValidationError(f"{path}: expected header 'x,C', got {header.strip()!r}")
        for line_no, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise ValidationError(f"{path}:{line_no}: expected 'x,C' row, got {line!r}")
            xs.append(float(parts[0]))
            values.append(float(parts[1]))
    return xs, values


def _snapshot_filename(t: float) -> str:
    return f"snapshot_{t:.6f}.csv"


def _cmd_simulate(args) -> int:
    text = Path(args.config).read_text()
    config = parse_config(text, base_dir=Path(args.config).resolve().parent)
    out_dir = Path(args.out) if args.out else Path(output_directory(text))
    out_dir.mkdir(parents=True, exist_ok=True)

    started = time.perf_counter()
    series = run(config)
    duration = time.perf_counter() - started

    names = []
    for state in series.snapshots:
        name = _snapshot_filename(state.time)
        write_snapshot_csv(state, out_dir / name)
        names.append(name)
    manifest = build_manifest(series, duration, output_dir=str(out_dir))
    write_manifest(manifest, out_dir / "manifest.json")
    if args.plot_script:
        _write_plot_script(out_dir, names)
    print(f"wrote {len(names)} snapshot(s) and manifest.json to {out_dir}")
    return 0


def _write_plot_script(out_dir: Path, snapshot_names: list[str]) -> None:
    plots = ", \\\n  ".join(
        f"'{name}' using 1:2 with lines title '{name[9:-4]}'" for name in snapshot_names
    )
    script = (
        "set datafile separator ','\n"
        "set key autotitle columnhead\n"
        "set xlabel 'x'\n"
        "set ylabel 'C'\n"
        f"plot \\\n  {plots}\n"
        "pause -1\n"
    )
    (out_dir / "plot_snapshots.gp").write_text(script)


def _cmd_weights(args) -> int:
    params = validate_params(args.alpha, args.theta)
    if args.kmax < 0:
        raise ValidationError(f"--kmax must be >= 0, got {args.kmax}")
    print("k,w")
    for k in range(-args.kmax, args.kmax + 1):
        print(f"{k},{_fmt(weight(k, params))}")
    return 0


def _cmd_stability(args) -> int:
    params = validate_params(args.alpha, args.theta)
    if args.k_alpha <= 0 or args.h <= 0:
        raise ValidationError("--k-alpha and --h must be positive")
    print(_fmt(max_stable_dt(params, args.k_alpha, args.h)))
    return 0


def _cmd_verify(args) -> int:
    names = args.suite or None
    results = run_suites(names)
    failures = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"[{status}] {res.name}: {res.detail}")
        failures += 0 if res.passed else 1
    if failures:
        print(f"{failures} of {len(results)} checks failed", file=sys.stderr)
        return 1
    print(f"all {len(results)} checks passed")
    return 0


def _cmd_converge(args) -> int:
    text = Path(args.config).read_text()
    config = parse_config(text, base_dir=Path(args.config).resolve().parent)
    window = tuple(args.window) if args.window else None
    rows = convergence_study(config, args.levels, x_window=window)
    print("h,dt,error")
    for h, dt, err in rows:
        print(f"{_fmt(h)},{_fmt(dt)},{_fmt(err)}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rieszfd",
        description="Finite-difference solver for skewed space-fractional diffusion",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a simulation from a JSON config")
    p.add_argument("--config", required=True, help="path to the config document")
    p.add_argument("--out", help="output directory (overrides config output_dir)")
    p.add_argument(
        "--plot-script", action="store_true", help="also emit a gnuplot script for the snapshots"
    )
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("weights", help="print stencil weights as k,w CSV")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.set_defaults(func=_cmd_weights)

    p = sub.add_parser("stability", help="print the explicit time-step bound")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--k-alpha", type=float, required=True)
    p.add_argument("--h", type=float, required=True)
    p.set_defaults(func=_cmd_stability)

    p = sub.add_parser("verify", help="run built-in verification suites")
    p.add_argument(
        "--suite",
        action="append",
        choices=sorted(SUITES),
        help="suite to run (repeatable; default: all)",
    )
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("converge", help="grid-refinement error study")
    p.add_argument("--config", required=True)
    p.add_argument("--levels", type=int, required=True, help="number of halvings of h")
    p.add_argument(
        "--window", type=float, nargs=2, metavar=("LO", "HI"),
        help="restrict the error norm to x in [LO, HI]",
    )
    p.set_defaults(func=_cmd_converge)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
