"""Command-line interface.

Subcommands ``normal``, ``curve``, ``samples``, ``trial`` and ``sets``. JSON
reports go to standard output (CSV for ``curve``), diagnostics to standard
error. Exit status: 0 success, 2 usage error, 3 data error, 4 numerical
integrity error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from pathlib import Path

import numpy as np

from . import __version__, bounds, crossmatch, overlap, sets, trial
from .densities import kde_fit, normal_density
from .errors import (
    DegenerateSupportError,
    FitError,
    InsufficientDataError,
    InvalidParameterError,
    NumericalIntegrityError,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4
SIG_DIGITS = 10


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


def _round(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            raise NumericalIntegrityError(f"non-finite value {value!r} in report")
        return float(f"{float(value):.{SIG_DIGITS}g}")
    if isinstance(value, dict):
        return {str(k): _round(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_round(v) for v in value]
    return value


def format_report(command: str, inputs: dict, results: dict, warn: list[str]) -> str:
    """Serialize a report deterministically: sorted keys, 10 significant digits."""
    report = {
        "command": command,
        "inputs_echo": _round(inputs),
        "results": _round(results),
        "warnings": list(warn),
        "version": __version__,
    }
    return json.dumps(report, sort_keys=True, indent=2, allow_nan=False)


def read_numeric_column(path) -> np.ndarray:
    """Read finite reals separated by commas or newlines.

    Blank lines are skipped. A non-numeric first line is taken as a header;
    any later non-numeric, NaN or infinite entry is an error naming its line.
    """
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    values = []
    first_row = True
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = [t.strip() for t in line.split(",") if t.strip()]
        if not tokens:
            continue
        try:
            row = [float(t) for t in tokens]
        except ValueError:
            if first_row:
                first_row = False
                continue
            raise DataError(f"{path}: non-numeric value on row {lineno}: {line.strip()!r}") from None
        first_row = False
        if not all(math.isfinite(v) for v in row):
            raise DataError(f"{path}: non-finite value on row {lineno}: {line.strip()!r}")
        values.extend(row)
    if not values:
        raise DataError(f"{path}: no numeric data")
    return np.asarray(values)


def read_tokens(path) -> set[str]:
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    tokens = {line.strip() for line in lines if line.strip()}
    if not tokens:
        raise DataError(f"{path}: empty set")
    return tokens


def _overlap_block(p0, p1, n_grid, n_grid_2d):
    return {
        "ovl": {"quadrature": overlap.ovl_quadrature(p0, p1, n_grid).as_dict()},
        "oc": {"quadrature": overlap.oc_quadrature(p0, p1, n_grid).as_dict()},
        "ob": {"quadrature": overlap.ob_quadrature(p0, p1, n_grid_2d).as_dict()},
    }


def cmd_normal(args, warn):
    if not args.sigma > 0:
        raise UsageError("--sigma must be positive")
    p0 = normal_density(0.0, args.sigma)
    p1 = normal_density(args.theta, args.sigma)
    closed = overlap.q_normal_closed_form(args.theta, args.sigma).value
    results = _overlap_block(p0, p1, args.n_grid, args.n_grid_2d)
    results["om"] = {
        "closed_form": closed,
        "closed_form_2dp": round(closed, 2),
        "quadrature": overlap.om_quadrature(p0, p1, args.n_grid_2d).as_dict(),
        "youden": bounds.om_youden_decomposition(p0, p1, args.n_grid).as_dict(),
    }
    if args.seed is None:
        warn.append("no --seed given; Monte Carlo estimates skipped")
    else:
        om_mc, ob_mc = overlap.overlap_monte_carlo(p0, p1, args.n_draws, args.seed)
        results["om"]["monte_carlo"] = om_mc.as_dict()
        results["ob"]["monte_carlo"] = ob_mc.as_dict()
    results["bounds"] = bounds.bounds_report(p0, p1, args.n_grid, args.n_grid_2d).as_dict()
    inputs = {"theta": args.theta, "sigma": args.sigma, "n_grid": args.n_grid,
              "n_grid_2d": args.n_grid_2d, "n_draws": args.n_draws, "seed": args.seed}
    return inputs, results


def curve_rows(theta_min: float, theta_max: float, steps: int, sigma: float = 1.0):
    """``(theta, q(theta))`` on an evenly spaced grid."""
    if not theta_min < theta_max:
        raise UsageError("theta_min must be smaller than theta_max")
    if steps < 2:
        raise UsageError("steps must be at least 2")
    if not sigma > 0:
        raise UsageError("sigma must be positive")
    thetas = np.linspace(theta_min, theta_max, steps)
    return [(float(t), overlap.q_normal_closed_form(t, sigma).value) for t in thetas]


def cmd_curve(args, out):
    rows = curve_rows(args.theta_min, args.theta_max, args.steps, args.sigma)
    out.write("theta,q\n")
    for t, q in rows:
        out.write(f"{t:.{SIG_DIGITS}g},{q:.{SIG_DIGITS}g}\n")


def cmd_samples(args, warn):
    x = read_numeric_column(args.file0)
    y = read_numeric_column(args.file1)
    inputs = {"file0": str(args.file0), "file1": str(args.file1), "method": args.method,
              "seed": args.seed, "n0": int(x.size), "n1": int(y.size)}
    if args.method == "crossmatch":
        if x.size != y.size:
            n = min(x.size, y.size)
            warn.append(f"samples have different lengths; using the first {n} of each")
            x, y = x[:n], y[:n]
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            cs, res = crossmatch.run_crossmatch(x, y, literal=args.literal_matrix)
        warn.extend(str(w.message) for w in caught)
        details = res.as_dict()
        details.pop("pairs")
        details.update(n=cs.n, truncated=cs.truncated, literal_matrix=args.literal_matrix)
        est = overlap.OverlapEstimate("OB", "matching", res.statistic, n_points=cs.n)
        inputs["literal_matrix"] = args.literal_matrix
        return inputs, {"ob": {"matching": est.as_dict()}, "matching": details}

    p0 = kde_fit(x, args.bandwidth0)
    p1 = kde_fit(y, args.bandwidth1)
    inputs.update(bandwidth0=p0.bandwidth, bandwidth1=p1.bandwidth)
    results = {
        "ovl": {"quadrature": overlap.ovl_quadrature(p0, p1, args.n_grid).as_dict()},
        "oc": {"quadrature": overlap.oc_quadrature(p0, p1, args.n_grid).as_dict()},
    }
    if args.method == "quad":
        results["om"] = {"quadrature": overlap.om_quadrature(p0, p1, args.n_grid_2d).as_dict()}
        results["ob"] = {"quadrature": overlap.ob_quadrature(p0, p1, args.n_grid_2d).as_dict()}
    else:
        if args.seed is None:
            raise UsageError("--method mc requires --seed")
        om_mc, ob_mc = overlap.overlap_monte_carlo(p0, p1, args.n_draws, args.seed)
        inputs["n_draws"] = args.n_draws
        results["om"] = {"monte_carlo": om_mc.as_dict()}
        results["ob"] = {"monte_carlo": ob_mc.as_dict()}
    return inputs, results


def cmd_trial(args, warn):
    cfg = trial.TrialConfig(n=args.n, sigma=args.sigma, alpha=args.alpha, q0=args.q0, theta0=args.theta0)
    decision = trial.decide(args.xbar, cfg)
    results = {"decision": decision.as_dict()}
    if args.bootstrap is not None:
        if args.seed is None:
            raise UsageError("--bootstrap requires --seed")
        summary = trial.parametric_bootstrap(args.xbar, cfg, args.bootstrap, args.seed)
        results["bootstrap"] = summary.as_dict(include_draws=True)
    inputs = {"xbar": args.xbar, "n": args.n, "sigma": args.sigma, "alpha": args.alpha,
              "q0": args.q0, "theta0": args.theta0, "bootstrap": args.bootstrap, "seed": args.seed}
    return inputs, results


def cmd_sets(args, warn):
    a = read_tokens(args.file_a)
    b = read_tokens(args.file_b)
    results = sets.set_overlaps(a, b)
    results.update(om_double_sum=sets.om_sets_double_sum(a, b), size_a=len(a), size_b=len(b),
                   intersection_size=len(a & b))
    return {"file_a": str(args.file_a), "file_b": str(args.file_b)}, results


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="overlapq", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def grids(p):
        p.add_argument("--n-grid", type=int, default=overlap.DEFAULT_GRID_1D, help="1-D grid points")
        p.add_argument("--n-grid-2d", type=int, default=overlap.DEFAULT_GRID_2D, help="2-D grid points per axis")
        p.add_argument("--n-draws", type=int, default=overlap.DEFAULT_DRAWS)
        p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("normal", help="overlap of N(0, sigma^2) and N(theta, sigma^2)")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--sigma", type=float, default=1.0)
    grids(p)

    p = sub.add_parser("curve", help="q(theta) as CSV")
    p.add_argument("theta_min", type=float)
    p.add_argument("theta_max", type=float)
    p.add_argument("steps", type=int)
    p.add_argument("sigma", type=float, nargs="?", default=1.0)

    p = sub.add_parser("samples", help="overlap estimates from two sample files")
    p.add_argument("file0")
    p.add_argument("file1")
    p.add_argument("--method", choices=["quad", "mc", "crossmatch"], default="quad")
    p.add_argument("--bandwidth0", type=float, default=None)
    p.add_argument("--bandwidth1", type=float, default=None)
    p.add_argument("--literal-matrix", action="store_true",
                   help="use |A_j - B_j| for every entry of the A-B block")
    grids(p)

    p = sub.add_parser("trial", help="p-value test versus overlap rule")
    p.add_argument("--xbar", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--q0", type=float, default=0.5)
    p.add_argument("--theta0", type=float, default=0.0)
    p.add_argument("--bootstrap", type=int, default=None, metavar="B")
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("sets", help="overlap of two token files")
    p.add_argument("file_a")
    p.add_argument("file_b")
    return parser


_COMMANDS = {"normal": cmd_normal, "samples": cmd_samples, "trial": cmd_trial, "sets": cmd_sets}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    warn: list[str] = []
    try:
        if args.command == "curve":
            cmd_curve(args, out)
            return EXIT_OK
        inputs, results = _COMMANDS[args.command](args, warn)
        text = format_report(args.command, inputs, results, warn)
    except (UsageError, InvalidParameterError) as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, FitError, InsufficientDataError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (NumericalIntegrityError, DegenerateSupportError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    for w in warn:
        print(f"warning: {w}", file=sys.stderr)
    out.write(text + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
