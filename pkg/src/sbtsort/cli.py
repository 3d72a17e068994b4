"""Command-line entry point: ``sbtsort <verb> [options]``."""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Sequence

from . import bench
from .errors import InternalConsistencyError, SBTError
from .oracle import DistanceTable, build_table, exact_distance, load_table, save_table
from .perm_core import Permutation
from .search import audit_cases
from .solver import sbt1375


def _sizes(text: str) -> list[int]:
    """``20,50,100`` or ``20..500:10`` (inclusive, optional step)."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            rng, _, step = part.partition(":")
            lo, hi = (int(v) for v in rng.split(".."))
            out.extend(range(lo, hi + 1, int(step) if step else 1))
        elif part:
            out.append(int(part))
    if any(n < 1 for n in out):
        raise argparse.ArgumentTypeError("sizes must be positive")
    return out


def _table(n: int, path: str | None, allow_large: bool, out) -> DistanceTable:
    if path and Path(path).exists():
        t = load_table(path)
        if t.n != n:
            raise SystemExit(f"error: {path} holds a table for n={t.n}, not {n}")
        return t
    if n >= 10:
        print(f"# building the n={n} table, this takes a while", file=sys.stderr)
    t = build_table(n, allow_large=allow_large)
    if path:
        save_table(t, path)
    return t


def cmd_sort(args, out) -> int:
    try:
        pi = Permutation.parse(" ".join(args.permutation))
    except (ValueError, SBTError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        res = sbt1375(pi)
    except InternalConsistencyError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    print(f"permutation: {pi}", file=out)
    print(f"distance: {res.distance}", file=out)
    print(f"lower_bound: {res.lower}", file=out)
    print(f"upper_bound: {res.upper}", file=out)
    if args.oracle:
        print(f"exact: {exact_distance(pi, timeout=args.timeout)}", file=out)
    for k, (t, tag) in enumerate(zip(res.sequence.rho_steps, res.trace), 1):
        print(f"{k:3d} {t} {tag}", file=out)
    if args.verify:
        ok = res.verify()
        print(f"verify: {'ok' if ok else 'FAILED'}", file=out)
        return 0 if ok else 1
    return 0


def cmd_exhaustive(args, out) -> int:
    table = _table(args.n, args.table_path, args.allow_large, out) if args.oracle else None
    try:
        rec, failures = bench.exhaustive(args.n, table, args.threads, args.allow_large)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"# ratio basis: {rec.basis}", file=out)
    print(bench.CSV_HEADER, file=out)
    print(rec.csv_row(timing=not args.no_timing), file=out)
    for fl in failures:
        print(f"FAIL {fl}", file=sys.stderr)
    return 1 if failures else 0


def cmd_random_bench(args, out) -> int:
    print("# ratio basis: lower_bound", file=out)
    print(bench.CSV_HEADER, file=out)
    bad = 0
    for rec, failures in bench.random_bench(args.sizes, args.count, args.seed, args.threads):
        print(rec.csv_row(timing=not args.no_timing), file=out, flush=True)
        for fl in failures:
            print(f"FAIL {fl}", file=sys.stderr)
        bad += len(failures)
    return 1 if bad else 0


def cmd_fixtures(args, out) -> int:
    results = bench.run_fixtures(timeout=args.timeout)
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}", file=out)
    return 0 if all(ok for _, ok, _ in results) else 1


def cmd_audit_cases(args, out) -> int:
    report = audit_cases(args.norm_limit, timeout=args.timeout)
    for line in report.lines():
        print(line, file=out)
    return 1 if report.counterexamples else 0


def cmd_build_table(args, out) -> int:
    path = args.table_path or f"td{args.n}.bin"
    t = build_table(args.n, allow_large=args.allow_large)
    save_table(t, path)
    print(f"n={t.n} diameter={t.diameter} histogram={t.histogram()} -> {path}", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sbtsort", description="Sorting by transpositions.")
    p.add_argument("--log-level", default="WARNING")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, threads=False):
        sp.add_argument("--timeout", type=float, default=None, help="seconds for exact searches")
        if threads:
            sp.add_argument("--threads", type=int, default=os.cpu_count() or 1)
            sp.add_argument("--no-timing", action="store_true",
                            help="write 0 for elapsed_ms so the CSV is byte-reproducible")

    s = sub.add_parser("sort", help="sort one permutation")
    s.add_argument("permutation", nargs="+", help="one-line notation, e.g. 4 3 2 1")
    s.add_argument("--verify", action="store_true")
    s.add_argument("--oracle", action="store_true", help="also print the exact distance")
    common(s)
    s.set_defaults(func=cmd_sort)

    s = sub.add_parser("exhaustive", help="run every permutation of size n")
    s.add_argument("n", type=int)
    s.add_argument("--oracle", action="store_true", help="compare with exact distances")
    s.add_argument("--table-path")
    s.add_argument("--allow-large", action="store_true", help="permit n = 11, 12 (slow)")
    common(s, threads=True)
    s.set_defaults(func=cmd_exhaustive)

    s = sub.add_parser("random-bench", help="random long permutations")
    s.add_argument("--sizes", type=_sizes, default=_sizes("20..500:10"))
    s.add_argument("--count", type=int, default=1000)
    s.add_argument("--seed", type=int, default=2024)
    common(s, threads=True)
    s.set_defaults(func=cmd_random_bench)

    s = sub.add_parser("fixtures", help="regression fixtures")
    common(s)
    s.set_defaults(func=cmd_fixtures)

    s = sub.add_parser("audit-cases", help="enumerate small configurations")
    s.add_argument("--norm-limit", type=int, default=4)
    common(s)
    s.set_defaults(func=cmd_audit_cases)

    s = sub.add_parser("build-table", help="exact distance table for S_n")
    s.add_argument("n", type=int)
    s.add_argument("--table-path")
    s.add_argument("--allow-large", action="store_true")
    s.set_defaults(func=cmd_build_table)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out or sys.stdout)
    except SBTError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
