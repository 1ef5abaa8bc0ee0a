"""Command-line front end: gen, measure, sort, bench, census.

All commands are deterministic functions of their flags, input files, and
seeds; rerunning produces identical bytes (the bench elapsed_ns column is
the one timing-dependent exception, and --no-time zeroes it).  Exit codes:
0 success, 1 usage error, 2 unreadable or malformed data, 3 output failed
verification.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from typing import Optional

from .census import MAX_CENSUS_N, enumerate_census, census_worst_cases
from .core import (
    Meter,
    Sequence,
    SequenceFormatError,
    dump_sequence,
    load_sequence,
    verify_sorted_stable_permutation,
)
from .generators import FAMILIES, GenSpec, GenerationError, generate
from .measures import Profile, profile
from .sorters import (
    PivotStrategy,
    SortOutcome,
    blocked_sort,
    insertion_sort,
    natural_merge_sort,
    partition_sort,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_VERIFY = 3

BENCH_HEADER = "family,n,param,algo,pivot,seed,comparisons,moves,bound_B,entropy_H,ratio,elapsed_ns"
CENSUS_HEADER = "type,nu,eq1_rhs,applicable,info_bits,worst_case_comparisons"
PROFILE_HEADER = "n,k,sizes,entropy_H,bound_B,inversions,displacement,runs,distinct_keys"

PIVOTS = ("median", "randmid", "fr")
BENCH_ALGOS = ("psort-median", "psort-randmid", "psort-fr", "blocked", "insertion", "natmerge")


@dataclass(frozen=True)
class BenchRow:
    """One bench trial, shaped exactly like a line of the CSV output."""

    family: str
    n: int
    param: str
    algo: str
    pivot: str
    seed: int
    comparisons: int
    moves: int
    bound_B: float
    entropy_H: float
    ratio: float
    elapsed_ns: int

    def sort_key(self):
        return (self.family, self.n, self.algo, self.seed, self.param, self.pivot)

    def csv_line(self) -> str:
        return ",".join(
            (
                self.family,
                str(self.n),
                self.param,
                self.algo,
                self.pivot,
                str(self.seed),
                str(self.comparisons),
                str(self.moves),
                f"{self.bound_B:.6f}",
                f"{self.entropy_H:.6f}",
                f"{self.ratio:.6f}",
                str(self.elapsed_ns),
            )
        )


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # Flag errors are exit code 1 here, not argparse's default 2.
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _sizes_arg(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(part) for part in text.replace("-", ",").split(",") if part != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad block sizes {text!r}") from None
    if not sizes:
        raise argparse.ArgumentTypeError("empty block sizes")
    return sizes


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="presort", description="Comparison-metered adaptive sorting toolbox.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate an input file")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, help="displacement bound (displacement family)")
    p.add_argument("--h", type=int, help="distinct key count (multiset family)")
    p.add_argument("--type", type=_sizes_arg, dest="sizes", help="block sizes, e.g. 3,2 (sorted-type family)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("measure", help="print the order profile of an input file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--csv", action="store_true", help="emit one CSV row instead of key=value lines")

    p = sub.add_parser("sort", help="sort an input file with a chosen algorithm")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--algo", required=True, choices=("psort", "blocked", "insertion", "natmerge"))
    p.add_argument("--pivot", choices=PIVOTS, default="median")
    p.add_argument("--k", type=int, help="window parameter (blocked)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the sorted sequence here")

    p = sub.add_parser("bench", help="run a benchmark grid, emit CSV")
    p.add_argument("--families", type=lambda t: tuple(t.split(",")), required=True)
    p.add_argument("--sizes", type=_int_list, required=True, help="comma list of n values")
    p.add_argument("--algos", type=lambda t: tuple(t.split(",")), required=True)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0, help="base seed; trial i uses seed+i")
    p.add_argument("--k", type=int, help="displacement bound / blocked window")
    p.add_argument("--h", type=int, help="distinct keys for the multiset family")
    p.add_argument("--type", type=_sizes_arg, dest="blocks_sizes", help="explicit block sizes for sorted-type")
    p.add_argument("--blocks", type=int, help="uniform block count for sorted-type (must divide n)")
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--no-time", action="store_true", help="write 0 for elapsed_ns (byte-stable output)")

    p = sub.add_parser("census", help="exhaustive type census for small n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--worstcase", choices=BENCH_ALGOS[:3], help="also sort every permutation with this strategy")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized worst-case strategies")
    p.add_argument("--out", help="CSV path (default stdout)")

    return parser


# ---------------------------------------------------------------------------


def _fmt_sizes(sizes) -> str:
    return "-".join(str(b) for b in sizes)


def _profile_lines(p: Profile) -> list[str]:
    return [
        f"n={p.n}",
        f"k={p.block_count}",
        f"sizes={_fmt_sizes(p.sizes)}",
        f"H={p.entropy:.6f}",
        f"B={p.bound:.6f}",
        f"inversions={p.inversions}",
        f"displacement={p.displacement}",
        f"runs={p.runs}",
        f"distinct={p.distinct_keys}",
    ]


def _profile_csv(p: Profile) -> list[str]:
    row = ",".join(
        (
            str(p.n),
            str(p.block_count),
            _fmt_sizes(p.sizes),
            f"{p.entropy:.6f}",
            f"{p.bound:.6f}",
            str(p.inversions),
            str(p.displacement),
            str(p.runs),
            str(p.distinct_keys),
        )
    )
    return [PROFILE_HEADER, row]


def _bench_genspec(family: str, n: int, args, seed: int) -> GenSpec:
    if family == "displacement":
        if args.k is None:
            raise _UsageError("displacement family needs --k")
        return GenSpec(family, n, k=args.k, seed=seed)
    if family == "multiset":
        if args.h is None:
            raise _UsageError("multiset family needs --h")
        return GenSpec(family, n, h=args.h, seed=seed)
    if family == "sorted-type":
        if args.blocks_sizes is not None:
            return GenSpec(family, n, sizes=args.blocks_sizes, seed=seed)
        if args.blocks is not None:
            if args.blocks < 1 or n % args.blocks:
                raise _UsageError(f"--blocks {args.blocks} must divide n={n}")
            return GenSpec(family, n, sizes=(n // args.blocks,) * args.blocks, seed=seed)
        raise _UsageError("sorted-type family needs --type or --blocks")
    return GenSpec(family, n, seed=seed)


def _bench_param(spec: GenSpec) -> str:
    if spec.family == "displacement":
        return f"k={spec.k}"
    if spec.family == "multiset":
        return f"h={spec.h}"
    if spec.family == "sorted-type":
        return f"type={_fmt_sizes(spec.sizes)}"
    return ""


def _run_algo(algo: str, seq: Sequence, args, seed: int) -> tuple[SortOutcome, str]:
    """Run one bench algorithm token; returns (outcome, pivot_label)."""
    if algo.startswith("psort-"):
        pivot = algo.split("-", 1)[1]
        if pivot not in PIVOTS:
            raise _UsageError(f"unknown algo {algo!r}")
        outcome = partition_sort(seq, PivotStrategy(pivot, seed), Meter())
        return outcome, pivot
    if algo == "blocked":
        k = args.k
        if k is None:
            raise _UsageError("blocked needs --k")
        return blocked_sort(seq, k, Meter()), ""
    if algo == "insertion":
        return insertion_sort(seq, Meter()), ""
    if algo == "natmerge":
        return natural_merge_sort(seq, Meter()), ""
    raise _UsageError(f"unknown algo {algo!r}")


def _write_lines(path: Optional[str], lines: list[str]) -> None:
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    try:
        spec = GenSpec(args.family, args.n, k=args.k, sizes=args.sizes, h=args.h, seed=args.seed)
        seq = generate(spec)
    except (ValueError, GenerationError) as exc:
        print(f"presort gen: {exc}", file=sys.stderr)
        return EXIT_USAGE
    header = f"family={spec.family} n={spec.n} seed={spec.seed}"
    try:
        dump_sequence(seq, args.out, header=header)
    except OSError as exc:
        print(f"presort gen: {exc}", file=sys.stderr)
        return EXIT_DATA
    print(f"family={spec.family} n={spec.n}")
    return EXIT_OK


def cmd_measure(args) -> int:
    try:
        seq = load_sequence(args.infile)
    except (OSError, SequenceFormatError) as exc:
        print(f"presort measure: {exc}", file=sys.stderr)
        return EXIT_DATA
    p = profile(seq)
    _write_lines(None, _profile_csv(p) if args.csv else _profile_lines(p))
    return EXIT_OK


def cmd_sort(args) -> int:
    try:
        seq = load_sequence(args.infile)
    except (OSError, SequenceFormatError) as exc:
        print(f"presort sort: {exc}", file=sys.stderr)
        return EXIT_DATA
    try:
        if args.algo == "psort":
            outcome = partition_sort(seq, PivotStrategy(args.pivot, args.seed), Meter())
        elif args.algo == "blocked":
            if args.k is None:
                raise _UsageError("blocked needs --k")
            outcome = blocked_sort(seq, args.k, Meter())
        elif args.algo == "insertion":
            outcome = insertion_sort(seq, Meter())
        else:
            outcome = natural_merge_sort(seq, Meter())
    except (_UsageError, ValueError) as exc:
        print(f"presort sort: {exc}", file=sys.stderr)
        return EXIT_USAGE
    ok = outcome.is_sorted and verify_sorted_stable_permutation(seq, outcome.output)
    print(f"comparisons={outcome.comparisons}")
    print(f"moves={outcome.moves}")
    print(f"retries={outcome.pivot_retries}")
    print(f"depth={outcome.max_recursion_depth}")
    print(f"sorted={'true' if ok else 'false'}")
    if args.out:
        try:
            dump_sequence(outcome.output, args.out)
        except OSError as exc:
            print(f"presort sort: {exc}", file=sys.stderr)
            return EXIT_DATA
    if not ok:
        print("presort sort: output failed verification", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_bench(args) -> int:
    for family in args.families:
        if family not in FAMILIES:
            print(f"presort bench: unknown family {family!r}", file=sys.stderr)
            return EXIT_USAGE
    for algo in args.algos:
        if algo not in BENCH_ALGOS:
            print(f"presort bench: unknown algo {algo!r}", file=sys.stderr)
            return EXIT_USAGE
    if args.trials < 1:
        print("presort bench: --trials must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    rows: list[BenchRow] = []
    try:
        for family in args.families:
            for n in args.sizes:
                for trial in range(args.trials):
                    seed = args.seed + trial
                    spec = _bench_genspec(family, n, args, seed)
                    seq = generate(spec)
                    prof = profile(seq)
                    for algo in args.algos:
                        t0 = time.perf_counter_ns()
                        outcome, pivot = _run_algo(algo, seq, args, seed)
                        elapsed = 0 if args.no_time else time.perf_counter_ns() - t0
                        ratio = outcome.comparisons / prof.bound if prof.bound else 0.0
                        rows.append(
                            BenchRow(
                                family=family,
                                n=n,
                                param=_bench_param(spec),
                                algo=algo.split("-", 1)[0] if algo.startswith("psort-") else algo,
                                pivot=pivot,
                                seed=seed,
                                comparisons=outcome.comparisons,
                                moves=outcome.moves,
                                bound_B=prof.bound,
                                entropy_H=prof.entropy,
                                ratio=ratio,
                                elapsed_ns=elapsed,
                            )
                        )
    except (_UsageError, ValueError, GenerationError) as exc:
        print(f"presort bench: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rows.sort(key=BenchRow.sort_key)
    lines = [BENCH_HEADER] + [r.csv_line() for r in rows]
    try:
        _write_lines(args.out, lines)
    except OSError as exc:
        print(f"presort bench: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


def cmd_census(args) -> int:
    try:
        rows = enumerate_census(args.n)
        worst: dict[tuple[int, ...], int] = {}
        if args.worstcase:
            pivot = args.worstcase.split("-", 1)[1]
            worst = census_worst_cases(args.n, PivotStrategy(pivot, args.seed))
    except ValueError as exc:
        print(f"presort census: {exc}", file=sys.stderr)
        return EXIT_USAGE
    lines = [CENSUS_HEADER]
    for row in rows:
        bound = "" if row.count_bound is None else f"{row.count_bound:.6f}"
        applicable = "false" if row.count_bound is None else "true"
        wc = worst.get(row.sizes)
        lines.append(
            ",".join(
                (
                    _fmt_sizes(row.sizes),
                    str(row.nu),
                    bound,
                    applicable,
                    str(row.info_bits),
                    "" if wc is None else str(wc),
                )
            )
        )
    try:
        _write_lines(args.out, lines)
    except OSError as exc:
        print(f"presort census: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = {
        "gen": cmd_gen,
        "measure": cmd_measure,
        "sort": cmd_sort,
        "bench": cmd_bench,
        "census": cmd_census,
    }[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
