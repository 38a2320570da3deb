"""Benchmark harness: algorithm x pattern x size matrix, tables, capacity sweep.

Every timed cell generates its input deterministically from the base seed,
times the compiled sort alone on a monotonic clock, then verifies the
output; a wrong output aborts the whole run. Trials run sequentially on
one thread so timings stay unperturbed. Comparison counts in the emitted
rows are bit-identical across repeated runs of the same config; timings of
course are not.

The raw CSV schema is one row per (algorithm, pattern, n, trial):

    algo,pattern,n,seed,trial,elapsed_ns,comparisons,relinks,runs_created,merges,capacity_used

`emit_table` renders that raw schema for format "csv", and a pivoted
median table (one row per n, one column per algorithm) for "markdown".

Exit codes: 0 success, 1 configuration error, 2 verification failure.
The BENCH_THREADS environment variable is reserved; timed sections always
run single-threaded and the variable is ignored.
"""

from __future__ import annotations

import argparse
import io
import statistics
import sys
from dataclasses import dataclass

import numpy as np

from . import kernels
from .analysis import compare_prediction, predict
from .core import SortReport, verify_sorted_arrays
from .datagen import MASK64, Pattern, generate_values, mix64, parse_pattern, with_seed
from .kernels import ALGORITHMS, metrics_from_counters, timed_sort

DEFAULT_SEED = 42
DEFAULT_TRIALS = 3
# Union of the comparison tables' size grids.
DEFAULT_SIZES = (
    5000, 10000, 20000, 30000, 40000, 50000,
    100000, 200000, 300000, 400000, 500000,
)
DEFAULT_MAX_N = 100000

CSV_HEADER = "algo,pattern,n,seed,trial,elapsed_ns,comparisons,relinks,runs_created,merges,capacity_used"


class ConfigError(ValueError):
    """Invalid benchmark configuration; nothing has run."""


class VerificationError(RuntimeError):
    """A sort produced a wrong output during a benchmark run."""


@dataclass
class BenchConfig:
    algorithms: list[str]
    patterns: list[Pattern]
    sizes: list[int]
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    capacity_override: int | None = None
    counts: bool = False
    fmt: str = "markdown"
    out: str | None = None


def validate_config(cfg: BenchConfig) -> None:
    for algo in cfg.algorithms:
        if algo not in ALGORITHMS:
            raise ConfigError(
                f"unknown algorithm {algo!r}; known: {', '.join(ALGORITHMS)}"
            )
    if not cfg.algorithms:
        raise ConfigError("no algorithms selected")
    if not cfg.patterns:
        raise ConfigError("no patterns selected")
    if not cfg.sizes:
        raise ConfigError("no sizes selected")
    for n in cfg.sizes:
        if n < 0:
            raise ConfigError(f"sizes must be non-negative, got {n}")
    if cfg.trials < 1:
        raise ConfigError(f"trials must be at least 1, got {cfg.trials}")
    if cfg.capacity_override is not None and cfg.capacity_override < 2:
        raise ConfigError(f"capacity must be at least 2, got {cfg.capacity_override}")
    if cfg.fmt not in ("csv", "markdown"):
        raise ConfigError(f"unknown format {cfg.fmt!r}")


def derive_seed(base_seed: int, n: int, trial: int) -> int:
    """Per-cell generator seed: base seed xor a mix of (n, trial)."""
    return (base_seed ^ mix64(n * 0x9E3779B97F4A7C15 + trial + 1)) & MASK64


def _run_cell(algo: str, pattern: Pattern, n: int, seed: int, trial: int,
              capacity: int | None) -> SortReport:
    seeded = with_seed(pattern, seed)
    vals = generate_values(seeded, n)
    tags = np.arange(n, dtype=np.int64)
    out_vals, out_tags, counters, elapsed = timed_sort(
        algo, vals, tags, capacity=capacity
    )
    check = verify_sorted_arrays(vals, out_vals, out_tags)
    if not check:
        raise VerificationError(
            f"{algo} on {seeded.name()} n={n} trial={trial}: {check.reason}"
        )
    return SortReport(
        algorithm=algo,
        pattern=seeded.name(),
        n=n,
        seed=seed,
        trial=trial,
        elapsed_ns=elapsed,
        metrics=metrics_from_counters(counters),
    )


def run_matrix(cfg: BenchConfig) -> list[SortReport]:
    """Run every (algorithm, pattern, n, trial) cell and verify each output."""
    validate_config(cfg)
    kernels.warmup(cfg.algorithms)
    reports = []
    for algo in cfg.algorithms:
        capacity = cfg.capacity_override if algo == "listsort" else None
        for pattern in cfg.patterns:
            for n in cfg.sizes:
                for trial in range(cfg.trials):
                    seed = derive_seed(cfg.seed, n, trial)
                    reports.append(_run_cell(algo, pattern, n, seed, trial, capacity))
    return reports


def csv_rows(reports) -> str:
    lines = [CSV_HEADER]
    for r in reports:
        m = r.metrics
        lines.append(
            f"{r.algorithm},{r.pattern},{r.n},{r.seed},{r.trial},{r.elapsed_ns},"
            f"{m.comparisons},{m.relinks},{m.runs_created},{m.merges},{m.capacity_used}"
        )
    return "\n".join(lines) + "\n"


def parse_csv_rows(text: str) -> list[SortReport]:
    """Parse text in the raw CSV schema back into reports."""
    from .core import Metrics

    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("unexpected CSV header")
    reports = []
    for ln in lines[1:]:
        parts = ln.split(",")
        algo, pattern = parts[0], parts[1]
        n, seed, trial, elapsed = (int(x) for x in parts[2:6])
        cmp_, rel, runs, merges, cap = (int(x) for x in parts[6:11])
        reports.append(
            SortReport(
                algorithm=algo, pattern=pattern, n=n, seed=seed, trial=trial,
                elapsed_ns=elapsed,
                metrics=Metrics(cmp_, rel, runs, merges, cap),
            )
        )
    return reports


def pivot_medians(reports, counts: bool = False):
    """Median per (n, algorithm) cell: elapsed ns, or comparisons if `counts`.

    Returns (sizes, algorithms, cell dict) with insertion-ordered axes.
    """
    sizes = []
    algos = []
    samples: dict[tuple[int, str], list[int]] = {}
    for r in reports:
        if r.n not in sizes:
            sizes.append(r.n)
        if r.algorithm not in algos:
            algos.append(r.algorithm)
        value = r.metrics.comparisons if counts else r.elapsed_ns
        samples.setdefault((r.n, r.algorithm), []).append(value)
    cells = {key: statistics.median(vals) for key, vals in samples.items()}
    return sizes, algos, cells


def emit_table(reports, fmt: str, counts: bool = False) -> str:
    """Render reports: raw schema rows for csv, a pivoted table for markdown."""
    if not reports:
        raise ValueError("no reports to emit")
    if fmt == "csv":
        return csv_rows(reports)
    if fmt != "markdown":
        raise ValueError(f"unknown format {fmt!r}")
    sizes, algos, cells = pivot_medians(reports, counts)
    if counts:
        def fmt_cell(x):
            return f"{x:.0f}" if float(x) == int(x) else f"{x:.1f}"
    else:
        def fmt_cell(x):
            return f"{x / 1e6:.2f}"
    unit = "comparisons" if counts else "ms"
    header = ["n"] + [f"{a} ({unit})" for a in algos]
    rows = [header, ["---"] * len(header)]
    for n in sizes:
        row = [str(n)]
        for a in algos:
            cell = cells.get((n, a))
            row.append("" if cell is None else fmt_cell(cell))
        rows.append(row)
    return "\n".join("| " + " | ".join(r) + " |" for r in rows) + "\n"


def sweep_capacity(n: int, capacities, pattern: Pattern, seed: int,
                   trials: int = 1) -> list[tuple[int, int, int]]:
    """Run the pool sort at each capacity; rows of (L, median ns, median cmp).

    Lets the user locate this machine's optimum capacity, which is not a
    property of the input size alone.
    """
    for cap in capacities:
        if cap < 2:
            raise ConfigError(f"capacity must be at least 2, got {cap}")
    if trials < 1:
        raise ConfigError(f"trials must be at least 1, got {trials}")
    kernels.warmup(("listsort",))
    rows = []
    for cap in capacities:
        elapsed = []
        comparisons = []
        for trial in range(trials):
            report = _run_cell("listsort", pattern, n, derive_seed(seed, n, trial),
                               trial, cap)
            elapsed.append(report.elapsed_ns)
            comparisons.append(report.metrics.comparisons)
        rows.append(
            (cap, int(statistics.median(elapsed)), int(statistics.median(comparisons)))
        )
    return rows


def run_verify_fuzz(cases: int, seed: int = DEFAULT_SEED, max_n: int = 512,
                    stream=sys.stderr) -> int:
    """Randomized oracle-equivalence suite over all algorithms.

    Each case draws a size and pattern, sorts with every algorithm, and
    checks values against numpy's sort plus full permutation verification;
    stable sorts are also checked tag-for-tag against a stable oracle.
    Returns the number of failing checks.
    """
    kernels.warmup()
    failures = 0
    pattern_kinds = ("random", "random", "random", "asc", "desc", "worst", "chunks:7")
    for case in range(cases):
        h = mix64(seed + case * 7919 + 1)
        n = h % (max_n + 1)
        pattern = parse_pattern(pattern_kinds[h % len(pattern_kinds)])
        vals = generate_values(with_seed(pattern, mix64(h)), n)
        if h % 5 == 0 and n:
            vals = vals % 8  # heavy duplicates exercise the tie rules
        expect_vals = np.sort(vals, kind="stable")
        expect_tags = np.argsort(vals, kind="stable")
        for algo in ALGORITHMS:
            out_vals, out_tags, _ = kernels.sort_arrays(algo, vals)
            ok = verify_sorted_arrays(vals, out_vals, out_tags)
            if not ok or not np.array_equal(out_vals, expect_vals):
                failures += 1
                print(f"FAIL {algo} case={case} n={n}: {ok.reason or 'oracle mismatch'}",
                      file=stream)
                continue
            if algo in kernels.STABLE_ALGORITHMS and not np.array_equal(out_tags, expect_tags):
                failures += 1
                print(f"FAIL {algo} case={case} n={n}: stability mismatch", file=stream)
    return failures


def _predict_rows(cfg: BenchConfig) -> str:
    """Measured-vs-predicted ratio rows for the run-pool sort."""
    lines = ["pattern,n,predicted,measured,ratio,regime"]
    for pattern in cfg.patterns:
        for n in cfg.sizes:
            seed = derive_seed(cfg.seed, n, 0)
            report = _run_cell("listsort", pattern, n, seed, 0, cfg.capacity_override)
            m = report.metrics
            pred = predict(n, max(m.runs_created, 1), m.capacity_used)
            ratio = compare_prediction(report, pred)
            lines.append(
                f"{report.pattern},{n},{ratio.predicted},{ratio.measured},"
                f"{ratio.ratio:.4f},{ratio.regime}"
            )
    return "\n".join(lines) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _split_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x != ""]
    except ValueError:
        raise ConfigError(f"expected comma-separated integers, got {text!r}") from None


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="bench",
        description="Sorting benchmark harness: operation counts and local timings.",
        epilog="BENCH_THREADS is reserved and ignored; timed runs are single-threaded.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the algorithm x pattern x size matrix")
    run.add_argument("--algos", default=",".join(ALGORITHMS),
                     help="comma-separated algorithm names")
    run.add_argument("--patterns", default="random",
                     help="comma-separated patterns (random, asc, desc, worst, chunks:<len>)")
    run.add_argument("--sizes", default=None, help="comma-separated sizes")
    run.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    run.add_argument("--seed", type=int, default=DEFAULT_SEED)
    run.add_argument("--capacity", type=int, default=None,
                     help="run-pool capacity override")
    run.add_argument("--counts", action="store_true",
                     help="table cells show median comparisons instead of ms")
    run.add_argument("--format", dest="fmt", default="markdown",
                     choices=("csv", "markdown"))
    run.add_argument("--out", default=None, help="also write raw CSV rows here")
    run.add_argument("--max-n", type=int, default=None,
                     help=f"drop sizes above this bound (default {DEFAULT_MAX_N} "
                          "when --sizes is not given)")

    sweep = sub.add_parser("sweep", help="sweep run-pool capacities at one size")
    sweep.add_argument("--n", type=int, required=True)
    sweep.add_argument("--capacities", required=True, help="comma-separated L values")
    sweep.add_argument("--pattern", default="random")
    sweep.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sweep.add_argument("--trials", type=int, default=1)
    sweep.add_argument("--out", default=None)

    verify = sub.add_parser("verify", help="randomized oracle-equivalence suite")
    verify.add_argument("--fuzz", type=int, default=10000, help="number of cases")
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)

    pred = sub.add_parser("predict", help="measured vs predicted comparison counts")
    pred.add_argument("--patterns", default="random,asc,worst")
    pred.add_argument("--sizes", default="1000,10000,100000")
    pred.add_argument("--seed", type=int, default=DEFAULT_SEED)
    pred.add_argument("--capacity", type=int, default=None)
    pred.add_argument("--out", default=None)
    return parser


def _cmd_run(args) -> int:
    sizes = _split_ints(args.sizes) if args.sizes else list(DEFAULT_SIZES)
    max_n = args.max_n
    if max_n is None and args.sizes is None:
        max_n = DEFAULT_MAX_N
    if max_n is not None:
        sizes = [s for s in sizes if s <= max_n]
    cfg = BenchConfig(
        algorithms=[a for a in args.algos.split(",") if a],
        patterns=[parse_pattern(p) for p in args.patterns.split(",") if p],
        sizes=sizes,
        trials=args.trials,
        seed=args.seed,
        capacity_override=args.capacity,
        counts=args.counts,
        fmt=args.fmt,
        out=args.out,
    )
    reports = run_matrix(cfg)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(csv_rows(reports))
    sys.stdout.write(emit_table(reports, cfg.fmt, cfg.counts))
    return 0


def _cmd_sweep(args) -> int:
    pattern = parse_pattern(args.pattern)
    rows = sweep_capacity(args.n, _split_ints(args.capacities), pattern,
                          args.seed, args.trials)
    buf = io.StringIO()
    buf.write("capacity,elapsed_ns,comparisons\n")
    for cap, elapsed, comparisons in rows:
        buf.write(f"{cap},{elapsed},{comparisons}\n")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(buf.getvalue())
    sys.stdout.write(buf.getvalue())
    return 0


def _cmd_verify(args) -> int:
    failures = run_verify_fuzz(args.fuzz, seed=args.seed)
    if failures:
        print(f"verify: {failures} failing checks over {args.fuzz} cases",
              file=sys.stderr)
        return 2
    print(f"verify: {args.fuzz} cases ok")
    return 0


def _cmd_predict(args) -> int:
    cfg = BenchConfig(
        algorithms=["listsort"],
        patterns=[parse_pattern(p) for p in args.patterns.split(",") if p],
        sizes=_split_ints(args.sizes),
        trials=1,
        seed=args.seed,
        capacity_override=args.capacity,
    )
    validate_config(cfg)
    kernels.warmup(("listsort",))
    text = _predict_rows(cfg)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        try:
            if args.command == "run":
                return _cmd_run(args)
            if args.command == "sweep":
                return _cmd_sweep(args)
            if args.command == "verify":
                return _cmd_verify(args)
            if args.command == "predict":
                return _cmd_predict(args)
        except ValueError as exc:  # bad pattern strings etc. are config errors
            raise ConfigError(str(exc)) from exc
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"bench: {exc}", file=sys.stderr)
        return 1
    except VerificationError as exc:
        print(f"bench: verification failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
