"""Command-line front end.

Exit codes: 0 success, 2 usage, 3 input/parse, 4 numerical, 5 resource limits.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass

from .errors import (
    GridOverflow,
    InputError,
    LogdetError,
    NotPositiveDefinite,
    TooLargeForOracle,
    ZeroNormColumn,
)
from .estimator import default_workers, estimate_series
from .generators import GridSpec, grid_laplacian, random_dd_spd
from .mmio import read_matrix_market, write_matrix_market
from .oracle import DENSE_LIMIT, exact_logdet
from .report import MatrixInfo, build_report, write_report
from .spline import INVERSE_SYMMETRIC, VARIANTS, spline_series

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_NUMERICAL, EXIT_RESOURCE = 0, 2, 3, 4, 5


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    grid: tuple[int, int] | None = None
    input: str | None = None
    random: tuple[int, int, int] | None = None
    m: int = 4
    workers: int = 1
    variant: str = INVERSE_SYMMETRIC
    oracle: str = "auto"
    reference: float | None = None
    format: str = "csv"
    output: str | None = None
    dense_limit: int = DENSE_LIMIT
    timings: bool = False

    def __post_init__(self):
        sources = [s for s in (self.grid, self.input, self.random) if s is not None]
        if len(sources) != 1:
            raise UsageError("exactly one of --grid, --input, --random is required")
        if self.m < 1:
            raise UsageError("-m must be >= 1")
        if self.workers < 1:
            raise UsageError("--workers must be >= 1")
        if self.grid is not None and (self.grid[0] < 2 or self.grid[1] < 1):
            raise UsageError("--grid needs N >= 2 and d >= 1")
        if self.random is not None and (self.random[0] < 1 or self.random[1] < 0):
            raise UsageError("--random needs n >= 1 and k >= 0")


def load_matrix(cfg: RunConfig):
    """Return ``(name, matrix)`` for the configured input source."""
    if cfg.grid is not None:
        spec = GridSpec(*cfg.grid)
        return str(spec), grid_laplacian(spec)
    if cfg.random is not None:
        n, k, seed = cfg.random
        return f"random({n},{k},{seed})", random_dd_spd(n, k, seed)
    with open(cfg.input, "rb") as fh:
        return os.path.basename(cfg.input), read_matrix_market(fh)


def _peak_memory_kb():
    try:
        import resource
    except ImportError:  # pragma: no cover - non-POSIX
        return None
    return int(resource.getrusage(resource.RUSAGE_SELF).ru_maxrss)


def cmd_estimate(cfg: RunConfig):
    clock = {}
    t0 = time.perf_counter()
    name, A = load_matrix(cfg)
    clock["load"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    series = estimate_series(A, cfg.m, cfg.workers)
    clock["estimate"] = time.perf_counter() - t0

    notes = []
    t0 = time.perf_counter()
    splines = ()
    if series.m >= 2:
        splines = spline_series(series.D, series.x, cfg.variant).S
    else:
        notes.append("m = 1: no spline extrapolation")
    clock["spline"] = time.perf_counter() - t0

    exact, source = None, None
    t0 = time.perf_counter()
    if cfg.reference is not None:
        exact, source = cfg.reference, "reference"
    elif cfg.oracle == "force":
        exact = exact_logdet(A, cfg.dense_limit, sparse=A.n > cfg.dense_limit)
        source = "oracle"
    elif cfg.oracle == "auto" and A.n <= cfg.dense_limit:
        exact, source = exact_logdet(A, cfg.dense_limit), "oracle"
    clock["oracle"] = time.perf_counter() - t0

    info = MatrixInfo(name=name, n=A.n, nnz=A.nnz, density=A.density)
    report = build_report(info, series, splines, cfg.variant, exact, source)
    report.notes = notes
    if cfg.timings:
        report.timings = clock
        report.peak_memory_kb = _peak_memory_kb()
    return report


def cmd_exact(cfg: RunConfig, sparse=False) -> float:
    _, A = load_matrix(cfg)
    return exact_logdet(A, cfg.dense_limit, sparse=sparse)


def cmd_generate(cfg: RunConfig, out):
    name, A = load_matrix(cfg)
    write_matrix_market(A, out, comment=name)


# name -> list of (grid, m, reference) runs
SUITES = {
    "micro": [((2, 2), 2, None)],
    "table3-small": [((15, 3), 4, None)],
    "fig2-mini": [((10, 3), 6, None)],
    "table1": [((15, 4), 4, 101599.6)],
}


def cmd_bench(suite, *, workers=1, variant=INVERSE_SYMMETRIC, timings=False):
    """Yield one report per matrix of a named suite."""
    if suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    for grid, m, reference in SUITES[suite]:
        cfg = RunConfig(grid=grid, m=m, workers=workers, variant=variant,
                        reference=reference, timings=timings)
        yield cmd_estimate(cfg)


def _add_input_args(p, allow_file=True):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--grid", nargs=2, type=int, metavar=("N", "d"),
                     help="restricted grid Laplacian L(N,d)")
    if allow_file:
        src.add_argument("--input", metavar="PATH", help="Matrix Market file")
    src.add_argument("--random", nargs=3, type=int, metavar=("n", "k", "seed"),
                     help="random diagonally dominant SPD matrix")


def _workers_arg(value):
    return default_workers() if value is None else value


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sparse-logdet",
        description="Log-determinants of sparse SPD matrices from nested sparse approximate inverses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a test matrix in Matrix Market format")
    _add_input_args(p, allow_file=False)
    p.add_argument("--output", metavar="PATH")

    p = sub.add_parser("estimate", help="estimate D^1..D^m and spline extrapolations")
    _add_input_args(p)
    p.add_argument("-m", type=int, default=4, help="max pattern power (default 4)")
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: $LOGDET_WORKERS or CPU count)")
    p.add_argument("--variant", choices=VARIANTS, default=INVERSE_SYMMETRIC)
    p.add_argument("--oracle", choices=("off", "auto", "force"), default="auto")
    p.add_argument("--reference", type=float, help="known exact log-determinant")
    p.add_argument("--dense-limit", type=int, default=DENSE_LIMIT)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", metavar="PATH")
    p.add_argument("--timings", action="store_true",
                   help="include wall-clock and peak memory (output no longer reproducible)")

    p = sub.add_parser("exact", help="exact log-determinant by Cholesky")
    _add_input_args(p)
    p.add_argument("--dense-limit", type=int, default=DENSE_LIMIT)
    p.add_argument("--sparse", action="store_true", help="use sparse LU instead of dense Cholesky")

    p = sub.add_parser("bench", help="run a named reproduction suite")
    p.add_argument("suite", help=f"one of: {', '.join(sorted(SUITES))}")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--variant", choices=VARIANTS, default=INVERSE_SYMMETRIC)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", metavar="PATH")
    p.add_argument("--timings", action="store_true")
    return parser


def _open_out(path):
    return open(path, "w", encoding="utf-8", newline="") if path else None


def _run(args, stdout):
    if args.command == "generate":
        cfg = RunConfig(grid=args.grid, random=args.random)
        fh = _open_out(args.output)
        try:
            cmd_generate(cfg, fh or stdout)
        finally:
            if fh:
                fh.close()
        return

    if args.command == "exact":
        cfg = RunConfig(grid=args.grid, input=args.input, random=args.random,
                        dense_limit=args.dense_limit)
        print(repr(cmd_exact(cfg, sparse=args.sparse)), file=stdout)
        return

    workers = _workers_arg(args.workers)
    if args.command == "estimate":
        cfg = RunConfig(
            grid=args.grid, input=args.input, random=args.random, m=args.m,
            workers=workers, variant=args.variant, oracle=args.oracle,
            reference=args.reference, format=args.format, output=args.output,
            dense_limit=args.dense_limit, timings=args.timings,
        )
        report = cmd_estimate(cfg)
        fh = _open_out(cfg.output)
        try:
            write_report(report, cfg.format, fh or stdout)
        finally:
            if fh:
                fh.close()
        return

    # bench
    reports = cmd_bench(args.suite, workers=workers, variant=args.variant, timings=args.timings)
    fh = _open_out(args.output)
    out = fh or stdout
    try:
        for report in reports:
            print(f"# {report.matrix.name}", file=out)
            write_report(report, args.format, out)
    finally:
        if fh:
            fh.close()


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _run(args, stdout)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except (TooLargeForOracle, GridOverflow, MemoryError) as exc:
        print(f"resource limit: {exc}", file=stderr)
        return EXIT_RESOURCE
    except (NotPositiveDefinite, ZeroNormColumn) as exc:
        print(f"numerical error: {exc}", file=stderr)
        return EXIT_NUMERICAL
    except (InputError, OSError) as exc:
        print(f"input error: {exc}", file=stderr)
        return EXIT_INPUT
    except LogdetError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
