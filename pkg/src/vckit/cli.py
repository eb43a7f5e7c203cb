"""Command-line front end.

Subcommands: ``shatter`` decides one point set, ``vcdim`` runs the sampling
estimator, ``exact`` computes the brute-force dimension of a concept-matrix
file, and ``bench`` sweeps the half-space estimator over ambient dimensions
and renders the timing chart next to the CSV.

Exit codes are disjoint by failure class: 0 success (or confirmed
expectation), 1 configuration error, 2 oracle error, 3 not shattered,
4 expectation mismatch.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Optional, Sequence

from .classes import (
    ConceptMatrix,
    FiniteClass,
    HalfspacesLP,
    HalfspacesPerceptron,
    Intervals,
    MatrixParseError,
    Rectangles,
    Thresholds,
)
from .core import ContractViolation, DomainError, HypothesisClass, OracleError, Point
from .estimator import (
    EstimationAborted,
    ExhaustiveFinite,
    FiniteUniform,
    SAMPLING_NOTE,
    UniformBox,
    estimate_vcdim,
)
from .exact import exact_shattered_witness, exact_vcdim_matrix
from .report import (
    Report,
    estimate_payload,
    estimate_warnings,
    write_bench_chart,
    write_bench_csv,
    write_per_d_csv,
)
from .shattering import shatters

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_ORACLE = 2
EXIT_NOT_SHATTERED = 3
EXIT_MISMATCH = 4


class ConfigError(ValueError):
    """Bad flags or malformed inputs; mapped to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with code 2
        raise ConfigError(message)


# ---------------------------------------------------------------------------
# Input parsing
# ---------------------------------------------------------------------------

def parse_points(
    text: str, *, dimension: Optional[int], finite: bool
) -> tuple[Point, ...]:
    """Grammar: semicolon-separated tuples, comma-separated coordinates,
    parentheses optional. For one-dimensional classes a bare comma list is
    read as separate points, so ``--points "0.25,0.75"`` is two points."""
    groups = [g.strip() for g in text.split(";") if g.strip()]
    if not groups:
        raise ConfigError("--points: no points given")
    tuples = []
    for g in groups:
        inner = g
        if inner.startswith("(") and inner.endswith(")"):
            inner = inner[1:-1]
        parts = [p.strip() for p in inner.split(",") if p.strip()]
        if not parts:
            raise ConfigError(f"--points: empty tuple {g!r}")
        tuples.append(parts)
    if finite:
        flat = [p for t in tuples for p in t]
        try:
            return tuple(Point.finite(int(p)) for p in flat)
        except ValueError:
            raise ConfigError("--points: finite-domain points must be integer indices") from None
    if dimension == 1 and len(tuples) == 1 and len(tuples[0]) > 1 and "(" not in text:
        tuples = [[p] for p in tuples[0]]
    points = []
    for t in tuples:
        if dimension is not None and len(t) != dimension:
            raise ConfigError(
                f"--points: tuple ({','.join(t)}) has {len(t)} coordinates, class needs {dimension}"
            )
        try:
            coords = [float(x) for x in t]
        except ValueError:
            raise ConfigError(f"--points: bad coordinate in ({','.join(t)})") from None
        points.append(Point.continuous(*coords))
    return tuple(points)


def parse_points_file(path, *, dimension: Optional[int], finite: bool) -> tuple[Point, ...]:
    try:
        with open(path, "r", encoding="ascii") as fh:
            lines = [ln.strip() for ln in fh]
    except OSError as exc:
        raise ConfigError(f"--points-file: {exc}") from None
    points: list[Point] = []
    for lineno, line in enumerate(lines, start=1):
        if not line:
            continue
        try:
            pts = parse_points(line, dimension=dimension, finite=finite)
        except ConfigError as exc:
            raise ConfigError(f"--points-file line {lineno}: {exc}") from None
        if not finite and dimension == 1 and len(pts) > 1:
            raise ConfigError(f"--points-file line {lineno}: one point per line")
        points.extend(pts)
    if not points:
        raise ConfigError("--points-file: no points found")
    return tuple(points)


def parse_dims(text: str) -> list[int]:
    try:
        dims = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ConfigError(f"--dims: expected comma-separated integers, got {text!r}") from None
    if not dims or any(n < 1 for n in dims):
        raise ConfigError("--dims: ambient dimensions must be positive")
    return dims


def _load_matrix(path) -> ConceptMatrix:
    if path is None:
        raise ConfigError("--matrix is required for finite classes")
    try:
        return ConceptMatrix.from_file(path)
    except OSError as exc:
        raise ConfigError(f"--matrix: {exc}") from None


def build_class(args) -> tuple[HypothesisClass, Optional[ConceptMatrix], dict]:
    kind = args.hypothesis_class
    matrix = None
    if kind in ("threshold", "interval"):
        if args.dim not in (None, 1):
            raise ConfigError(f"--dim: {kind} classes live on the real line")
        cls = Thresholds() if kind == "threshold" else Intervals()
        echo = {"class": kind}
    elif kind == "rectangle":
        cls = Rectangles(_required_dim(args))
        echo = {"class": kind, "dim": cls.dimension}
    elif kind == "halfspace-lp":
        cls = HalfspacesLP(_required_dim(args))
        echo = {"class": kind, "dim": cls.dimension}
    elif kind == "halfspace-perceptron":
        if args.budget < 1:
            raise ConfigError("--budget must be >= 1")
        cls = HalfspacesPerceptron(_required_dim(args), args.budget)
        echo = {"class": kind, "dim": cls.dimension, "budget": cls.budget}
    elif kind == "finite":
        matrix = _load_matrix(args.matrix)
        cls = FiniteClass(matrix)
        echo = {
            "class": kind,
            "matrix": str(args.matrix),
            "rows": matrix.n_rows,
            "cols": matrix.n_cols,
        }
    else:
        raise ConfigError(f"--class: unknown class {kind!r}")
    return cls, matrix, echo


def _required_dim(args) -> int:
    if args.dim is None:
        raise ConfigError(f"--dim is required for {args.hypothesis_class} classes")
    if args.dim < 1:
        raise ConfigError("--dim must be >= 1")
    return args.dim


def _class_dimension(cls: HypothesisClass) -> Optional[int]:
    if isinstance(cls, (Thresholds, Intervals)):
        return 1
    if isinstance(cls, (Rectangles, HalfspacesLP, HalfspacesPerceptron)):
        return cls.dimension
    return None


def build_sampler(args, cls: HypothesisClass, matrix: Optional[ConceptMatrix]):
    choice = args.sampler
    if isinstance(cls, FiniteClass):
        card = matrix.n_cols
        if choice in (None, "finite"):
            sampler = FiniteUniform(card, seed=args.seed)
        elif choice == "exhaustive":
            sampler = ExhaustiveFinite(card)
        else:
            raise ConfigError("--sampler box requires a continuous class")
    else:
        if choice not in (None, "box"):
            raise ConfigError(f"--sampler {choice} requires a finite class")
        if not args.lo < args.hi:
            raise ConfigError(f"--lo/--hi: need lo < hi, got [{args.lo}, {args.hi}]")
        sampler = UniformBox(_class_dimension(cls), lo=args.lo, hi=args.hi, seed=args.seed)
    return sampler


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def run_shatter(args) -> int:
    cls, _, class_echo = build_class(args)
    dim = _class_dimension(cls)
    finite = isinstance(cls, FiniteClass)
    if args.points is not None and args.points_file is not None:
        raise ConfigError("give --points or --points-file, not both")
    if args.points is not None:
        points = parse_points(args.points, dimension=dim, finite=finite)
    elif args.points_file is not None:
        points = parse_points_file(args.points_file, dimension=dim, finite=finite)
    else:
        raise ConfigError("shatter needs --points or --points-file")

    verdict = shatters(cls, points, workers=args.workers)
    witness = (
        "".join(str(b) for b in verdict.witness_labeling)
        if verdict.witness_labeling is not None
        else None
    )
    print(f"points: {len(points)}")
    print(f"shattered: {'yes' if verdict.shattered else 'no'}")
    if witness is not None:
        print(f"witness labeling: {witness}")
    print(f"erm calls: {verdict.erm_calls}")
    print(f"unresolved: {'yes' if verdict.unresolved else 'no'}")
    if args.report:
        Report(
            command="shatter",
            config={
                **class_echo,
                "points": [list(p.coords) if p.coords else p.index for p in points],
                "workers": args.workers,
            },
            results={
                "shattered": verdict.shattered,
                "witness_labeling": witness,
                "erm_calls": verdict.erm_calls,
                "unresolved": verdict.unresolved,
                "elapsed_s": round(verdict.elapsed_s, 6),
            },
            warnings=(
                ["the failure rests on a budget-limited oracle outcome"]
                if verdict.unresolved
                else []
            ),
        ).write(args.report)
    return EXIT_OK if verdict.shattered else EXIT_NOT_SHATTERED


def _print_estimate(estimate, warnings) -> None:
    cert = estimate.certificate
    print(
        f"certificate: epsilon={cert.epsilon} delta={cert.delta} m={cert.sample_size_m}"
    )
    print("    d        m      z_m  unresolved  elapsed_s")
    for s in estimate.per_d:
        marker = " (lower bound)" if s.zm_is_lower_bound else ""
        print(
            f"  {s.d:>3} {s.m:>8} {s.z_m:>8} {s.unresolved:>11} {s.elapsed_s:>10.3f}{marker}"
        )
    if estimate.is_infinite:
        print("estimated vc: infinite (no stop by d_max)")
    else:
        print(f"estimated vc: {estimate.vc}")
        stopping = estimate.per_d[-1]
        if stopping.draws_run:
            rate = stopping.unresolved / stopping.m
            print(f"unresolved rate at stopping d: {rate:.4f}")
    for w in warnings:
        print(f"warning: {w}")


def run_vcdim(args) -> int:
    cls, matrix, class_echo = build_class(args)
    sampler = build_sampler(args, cls, matrix)
    try:
        estimate = estimate_vcdim(
            cls,
            sampler,
            args.epsilon,
            args.delta,
            args.d_max,
            seed=args.seed,
            workers=args.workers,
            early_break=not args.no_early_break,
        )
    except EstimationAborted as exc:
        for s in exc.per_d:
            print(f"  d={s.d} m={s.m} z_m={s.z_m}", file=sys.stderr)
        raise
    warnings = estimate_warnings(estimate)
    _print_estimate(estimate, warnings)
    config = {
        **class_echo,
        **sampler.describe(),
        "epsilon": args.epsilon,
        "delta": args.delta,
        "d_max": args.d_max,
        "seed": args.seed,
        "workers": args.workers,
        "early_break": not args.no_early_break,
        "expect": args.expect,
    }
    if args.report:
        Report(
            command="vcdim",
            config=config,
            results=estimate_payload(estimate),
            warnings=warnings,
            notes=[SAMPLING_NOTE],
        ).write(args.report)
    if args.csv:
        write_per_d_csv(args.csv, estimate.per_d)
    if args.expect is not None:
        if estimate.vc != args.expect:
            got = "infinite" if estimate.is_infinite else estimate.vc
            print(f"expectation mismatch: expected {args.expect}, got {got}")
            return EXIT_MISMATCH
        print(f"expectation confirmed: vc = {args.expect}")
    return EXIT_OK


def run_exact(args) -> int:
    matrix = _load_matrix(args.matrix)
    vc = exact_vcdim_matrix(matrix)
    print(f"exact vc: {vc}")
    witness = None
    if args.witness is not None:
        if not 1 <= args.witness <= matrix.n_cols:
            raise ConfigError(
                f"--witness must be in [1, {matrix.n_cols}] for this matrix"
            )
        cols = exact_shattered_witness(matrix, args.witness)
        witness = list(cols) if cols is not None else None
        if cols is None:
            print(f"no shattered subset of size {args.witness}")
        else:
            print(f"first shattered {args.witness}-subset: {','.join(map(str, cols))}")
    if args.report:
        Report(
            command="exact",
            config={
                "matrix": str(args.matrix),
                "rows": matrix.n_rows,
                "cols": matrix.n_cols,
                "witness_size": args.witness,
            },
            results={"vc": vc, "witness_columns": witness},
        ).write(args.report)
    return EXIT_OK


def run_bench(args) -> int:
    dims = parse_dims(args.dims)
    if not args.lo < args.hi:
        raise ConfigError(f"--lo/--hi: need lo < hi, got [{args.lo}, {args.hi}]")
    rows = []
    runs = []
    all_warnings = []
    for n in dims:
        if args.oracle == "lp":
            cls = HalfspacesLP(n)
        else:
            cls = HalfspacesPerceptron(n, args.budget)
        sampler = UniformBox(n, lo=args.lo, hi=args.hi, seed=args.seed)
        started = time.perf_counter()
        estimate = estimate_vcdim(
            cls,
            sampler,
            args.epsilon,
            args.delta,
            args.d_max,
            seed=args.seed,
            workers=args.workers,
            early_break=not args.no_early_break,
        )
        elapsed = round(time.perf_counter() - started, 6)
        vc = "infinite" if estimate.is_infinite else estimate.vc
        rows.append((n, vc, elapsed))
        runs.append({"n": n, **estimate_payload(estimate)})
        for w in estimate_warnings(estimate):
            all_warnings.append(f"n={n}: {w}")
        print(f"n={n}: vc={vc} elapsed={elapsed:.6f}s")
    write_bench_csv(args.csv, rows)
    write_bench_chart(args.chart, dims, [r[2] for r in rows])
    print(f"wrote {args.csv} and {args.chart}")
    if args.report:
        Report(
            command="bench",
            config={
                "oracle": args.oracle,
                "budget": args.budget if args.oracle == "perceptron" else None,
                "dims": dims,
                "lo": args.lo,
                "hi": args.hi,
                "epsilon": args.epsilon,
                "delta": args.delta,
                "d_max": args.d_max,
                "seed": args.seed,
                "workers": args.workers,
                "early_break": not args.no_early_break,
            },
            results={
                "rows": [{"n": n, "vc": vc, "elapsed_s": e} for n, vc, e in rows],
                "runs": runs,
            },
            warnings=all_warnings,
            notes=[SAMPLING_NOTE],
        ).write(args.report)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Wiring
# ---------------------------------------------------------------------------

def _add_class_flags(p: argparse.ArgumentParser, *, include_perceptron: bool = True):
    choices = ["threshold", "interval", "rectangle", "halfspace-lp", "finite"]
    if include_perceptron:
        choices.insert(4, "halfspace-perceptron")
    p.add_argument("--class", dest="hypothesis_class", required=True, choices=choices)
    p.add_argument("--dim", type=int, default=None, help="ambient dimension for continuous classes")
    p.add_argument("--budget", type=int, default=10_000, help="perceptron update budget")
    p.add_argument("--matrix", default=None, help="concept-matrix file for finite classes")


def _add_estimator_flags(p: argparse.ArgumentParser):
    p.add_argument("--epsilon", type=float, default=0.05)
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--d-max", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-early-break", action="store_true",
                   help="run all m draws per level even after a shattered one")
    p.add_argument("--lo", type=float, default=-1.0, help="box sampler lower bound")
    p.add_argument("--hi", type=float, default=1.0, help="box sampler upper bound")


def build_parser() -> _Parser:
    parser = _Parser(prog="vckit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("shatter", help="decide whether a class shatters a point set")
    _add_class_flags(p)
    p.add_argument("--points", default=None, help='e.g. "(0,0);(1,0);(0,1)"')
    p.add_argument("--points-file", default=None, help="one point per line")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--report", default=None, help="write a JSON report here")
    p.set_defaults(func=run_shatter)

    p = sub.add_parser("vcdim", help="estimate VC dimension by random sampling")
    _add_class_flags(p)
    p.add_argument("--sampler", choices=["box", "finite", "exhaustive"], default=None)
    _add_estimator_flags(p)
    p.add_argument("--expect", type=int, default=None,
                   help="exit 4 unless the estimate equals this value")
    p.add_argument("--report", default=None)
    p.add_argument("--csv", default=None, help="write the per-d table here")
    p.set_defaults(func=run_vcdim)

    p = sub.add_parser("exact", help="exact VC dimension of a concept-matrix file")
    p.add_argument("--matrix", required=True)
    p.add_argument("--witness", type=int, default=None,
                   help="also report the first shattered subset of this size")
    p.add_argument("--report", default=None)
    p.set_defaults(func=run_exact)

    p = sub.add_parser("bench", help="half-space estimation sweep over ambient dimensions")
    p.add_argument("--dims", required=True, help='comma list, e.g. "1,2,3"')
    p.add_argument("--oracle", choices=["lp", "perceptron"], default="lp")
    p.add_argument("--budget", type=int, default=10_000)
    _add_estimator_flags(p)
    p.add_argument("--csv", default="bench.csv")
    p.add_argument("--chart", default="bench.svg")
    p.add_argument("--report", default=None)
    p.set_defaults(func=run_bench)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except MatrixParseError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ContractViolation, DomainError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except EstimationAborted as exc:
        print(f"oracle error: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except OracleError as exc:
        print(f"oracle error: {exc}", file=sys.stderr)
        return EXIT_ORACLE


if __name__ == "__main__":
    sys.exit(main())
