"""Command-line front end.

Subcommands::

    solve   INSTANCE [--samples K] [--tolerance E]
    eigen   MATRIX   [--cross] [--tolerance E]
    check   INSTANCE [--step H] [--tolerance E]
    sample  INSTANCE [--count K] [--csv] [--tolerance E]

Exit codes: 0 success, 1 input or usage error, 2 approximate solution,
3 oracle disagreement.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Any, Sequence

import numpy as np

from . import oracle, spectral
from . import semifield as sf
from .errors import EmptyFeasibleGrid, Reducible, TooLarge, TropicalError
from .location import LocationInstance, LocationSolution, Status, block_matrix, build_pq, objective, solve

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_APPROXIMATE = 2
EXIT_DISAGREE = 3

INSTANCE_KEYS = ("dimension", "points", "weights", "caps")


class InputError(Exception):
    """Malformed input file; the message names the offending key."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# -------------------------------------------------------------------- numbers


def fmt(x: float) -> float | str:
    """Round to 12 significant digits; the tropical zero becomes ``"-inf"``."""
    x = float(x)
    if x == -math.inf:
        return "-inf"
    out = float(f"{x:.12g}")
    return 0.0 if out == 0 else out


def fmt_vec(v: Sequence[float]) -> list[float | str]:
    return [fmt(x) for x in v]


def _csv_num(x: float) -> str:
    return f"{fmt(x):.12g}" if x != -math.inf else "-inf"


def _dump(doc: Any) -> str:
    return json.dumps(doc, indent=2)


# ---------------------------------------------------------------------- input


def _load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _finite_number(value: Any, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f'"{key}": expected a number, got {value!r}')
    value = float(value)
    if not math.isfinite(value):
        raise InputError(f'"{key}": numbers must be finite')
    return value


def _number_list(value: Any, key: str, length: int) -> list[float]:
    if not isinstance(value, list):
        raise InputError(f'"{key}": expected an array')
    if len(value) != length:
        raise InputError(f'"{key}": expected {length} entries, got {len(value)}')
    return [_finite_number(v, key) for v in value]


def parse_instance(doc: Any) -> LocationInstance:
    if not isinstance(doc, dict):
        raise InputError("instance must be a JSON object")
    for key in doc:
        if key not in INSTANCE_KEYS:
            raise InputError(f'"{key}": unknown key')
    for key in ("dimension", "points"):
        if key not in doc:
            raise InputError(f'"{key}": missing required key')
    n = doc["dimension"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError(f'"dimension": expected a positive integer, got {n!r}')
    points = doc["points"]
    if not isinstance(points, list) or len(points) < 2:
        raise InputError('"points": expected an array of at least 2 points')
    rows = [_number_list(p, "points", n) for p in points]
    m = len(rows)
    weights = _number_list(doc["weights"], "weights", m) if "weights" in doc else [0.0] * m
    caps = _number_list(doc["caps"], "caps", m) if "caps" in doc else None
    return LocationInstance(np.array(rows), np.array(weights), None if caps is None else np.array(caps))


def parse_matrix(doc: Any) -> np.ndarray:
    if isinstance(doc, dict):
        if "matrix" not in doc:
            raise InputError('"matrix": missing required key')
        doc = doc["matrix"]
    if not isinstance(doc, list) or not doc or not all(isinstance(r, list) for r in doc):
        raise InputError('"matrix": expected a non-empty array of rows')
    width = len(doc[0])
    rows = []
    for row in doc:
        if len(row) != width:
            raise InputError('"matrix": rows have different lengths')
        rows.append([sf.ZERO if v == "-inf" else _finite_number(v, "matrix") for v in row])
    return sf.matrix(rows)


# --------------------------------------------------------------------- output


def _sample(inst: LocationInstance, sol: LocationSolution, count: int) -> list[dict]:
    alphas = [0.0] if count == 0 else [k / count for k in range(count + 1)]
    out = []
    for alpha in alphas:
        x = sol.point_at(alpha)
        out.append({"alpha": alpha, "point": x, "objective": objective(inst, x)})
    return out


def solution_document(inst: LocationInstance, sol: LocationSolution, samples: int | None = None) -> dict:
    if not sf.leq(sol.lo, sol.hi):
        raise AssertionError("endpoint_low must not exceed endpoint_high")
    doc: dict[str, Any] = {
        "optimum": fmt(sol.lam),
        "status": sol.status.value,
        "endpoint_low": fmt_vec(sol.lo),
        "endpoint_high": fmt_vec(sol.hi),
    }
    if sol.lambda_combined is not None:
        doc["lambda_combined"] = fmt(sol.lambda_combined)
    if samples is not None:
        rows = _sample(inst, sol, samples)
        if sol.status is not Status.APPROXIMATE:
            eps = sf.get_eps()
            for row in rows:
                if abs(row["objective"] - sol.lam) > eps:
                    raise AssertionError(f"sample at alpha={row['alpha']} misses the optimum")
        doc["samples"] = [
            {"alpha": fmt(r["alpha"]), "point": fmt_vec(r["point"]), "objective": fmt(r["objective"])} for r in rows
        ]
    return doc


# ------------------------------------------------------------------- commands


def _exit_for(sol: LocationSolution) -> int:
    return EXIT_APPROXIMATE if sol.status is Status.APPROXIMATE else EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    inst = parse_instance(_load_json(args.instance))
    sol = solve(inst)
    print(_dump(solution_document(inst, sol, args.samples)))
    return _exit_for(sol)


def cmd_eigen(args: argparse.Namespace) -> int:
    A = parse_matrix(_load_json(args.matrix))
    result = spectral.eigenvector_basis(A)
    doc: dict[str, Any] = {
        "lambda": fmt(result.lam),
        "basis": [fmt_vec(col) for col in result.eigenvectors],
    }
    if args.cross:
        doc["a_cross"] = [fmt_vec(row) for row in result.a_cross]
    print(_dump(doc))
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    inst = parse_instance(_load_json(args.instance))
    step = args.step
    eps = sf.get_eps()
    free = inst.without_caps()
    sol = solve(free)
    grid_value, grid_point = oracle.grid_min_objective(free, step=step)
    cycle_value = oracle.max_cycle_mean(block_matrix(build_pq(free)))
    grid_bound = inst.n * step
    report: dict[str, Any] = {
        "optimum": fmt(sol.lam),
        "grid": {
            "step": fmt(step),
            "minimum": fmt(grid_value),
            "argmin": fmt_vec(grid_point),
            "gap": fmt(grid_value - sol.lam),
            "bound": fmt(grid_bound),
        },
        "cycle_mean": {"value": fmt(cycle_value), "gap": fmt(abs(cycle_value - sol.lam)), "bound": eps},
    }
    ok = abs(grid_value - sol.lam) <= grid_bound + eps and abs(cycle_value - sol.lam) <= eps

    if inst.caps is not None:
        csol = solve(inst)
        entry: dict[str, Any] = {"status": csol.status.value, "lambda_combined": fmt(csol.lambda_combined)}
        try:
            capped_value, _ = oracle.grid_min_objective(inst, respect_caps=True, step=step)
        except EmptyFeasibleGrid:
            capped_value = None
        entry["grid_minimum"] = None if capped_value is None else fmt(capped_value)
        if csol.status is Status.FEASIBLE_OPTIMAL:
            consistent = capped_value is not None and abs(capped_value - csol.lam) <= grid_bound + eps
        else:
            consistent = capped_value is None or capped_value > sol.lam + eps
        entry["consistent"] = consistent
        report["constrained"] = entry
        ok = ok and consistent

    report["agree"] = ok
    print(_dump(report))
    return EXIT_OK if ok else EXIT_DISAGREE


def cmd_sample(args: argparse.Namespace) -> int:
    inst = parse_instance(_load_json(args.instance))
    sol = solve(inst)
    rows = _sample(inst, sol, args.count)
    if args.csv:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["alpha", *(f"x{k + 1}" for k in range(inst.n)), "objective"])
        for row in rows:
            writer.writerow([_csv_num(row["alpha"]), *map(_csv_num, row["point"]), _csv_num(row["objective"])])
        sys.stdout.write(buf.getvalue())
    else:
        doc = [{"alpha": fmt(r["alpha"]), "point": fmt_vec(r["point"]), "objective": fmt(r["objective"])} for r in rows]
        print(_dump(doc))
    return _exit_for(sol)


# ----------------------------------------------------------------------- main


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not (value > 0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _tolerance(text: str) -> float:
    value = float(text)
    if not (value >= 0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError(f"expected a nonnegative tolerance, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tropical-location", description="Max-plus spectral solver for Chebyshev minimax location.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--tolerance", type=_tolerance, default=None, help="comparison tolerance (default 1e-9)")

    p = sub.add_parser("solve", help="solve a location instance")
    p.add_argument("instance")
    p.add_argument("--samples", type=_nonnegative_int, default=None, metavar="K", help="append K+1 alpha samples")
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("eigen", help="eigenvalue and eigenvector basis of an irreducible matrix")
    p.add_argument("matrix")
    p.add_argument("--cross", action="store_true", help="also print the matrix A^x")
    common(p)
    p.set_defaults(func=cmd_eigen)

    p = sub.add_parser("check", help="compare the closed form against brute-force oracles")
    p.add_argument("instance")
    p.add_argument("--step", type=_positive_float, default=oracle.DEFAULT_STEP, help="grid resolution")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sample", help="evenly spaced points along the optimal segment")
    p.add_argument("instance")
    p.add_argument("--count", type=_nonnegative_int, default=10, metavar="K")
    p.add_argument("--csv", action="store_true", help="emit CSV instead of JSON")
    common(p)
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    eps = sf.get_eps() if args.tolerance is None else args.tolerance
    try:
        with sf.tolerance(eps):
            return args.func(args)
    except Reducible:
        print("error: matrix is reducible", file=sys.stderr)
    except TooLarge as exc:
        print(f"error: oracle limit exceeded: {exc}", file=sys.stderr)
    except (InputError, TropicalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
