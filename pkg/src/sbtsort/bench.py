"""Experiment harness: exhaustive sweeps, random long permutations, fixtures.

All statistics skip the identity, whose ratio is undefined.  Ratios are
against the exact distance when an oracle table is supplied and against the
3-norm lower bound otherwise; ``BenchRecord.basis`` says which.
"""
from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .algebra import State
from .oracle import DistanceTable, exact_distance
from .perm_core import Permutation, TranspositionDesc, apply_transposition
from .solver import diameter_bound, f, sbt1375
from .search import MoveSequence, find_32_sequence

__all__ = [
    "CSV_HEADER",
    "BenchRecord",
    "Failure",
    "exhaustive",
    "random_permutations",
    "random_bench",
    "FIXTURES",
    "FIG3",
    "FIG4",
    "run_fixtures",
]

CSV_HEADER = "n,max_ratio,avg_ratio,avg_distance,pct_exact,elapsed_ms,seed"
EXHAUSTIVE_CAP = 10
EXHAUSTIVE_HARD_CAP = 12
RATIO_CAP = Fraction(11, 8)


@dataclass(frozen=True)
class BenchRecord:
    n: int
    max_ratio: Fraction
    avg_ratio: float
    avg_distance: float
    pct_exact: float | None
    elapsed_ms: int
    seed: int | None
    basis: str  # "exact" or "lower_bound"
    count: int = 0

    def csv_row(self, timing: bool = True) -> str:
        pct = "" if self.pct_exact is None else f"{self.pct_exact:.2f}"
        seed = "" if self.seed is None else str(self.seed)
        ms = self.elapsed_ms if timing else 0
        return (f"{self.n},{float(self.max_ratio):.4f},{self.avg_ratio:.4f},"
                f"{self.avg_distance:.4f},{pct},{ms},{seed}")


@dataclass(frozen=True)
class Failure:
    permutation: tuple[int, ...]
    reason: str

    def __str__(self):
        return f"[{' '.join(map(str, self.permutation))}] {self.reason}"


def _solve(image: tuple[int, ...]) -> tuple[int, int, int, bool]:
    """(distance, lower bound, 3-norm, replay ok) for one permutation."""
    r = sbt1375(Permutation(image))
    norm = State.from_permutation(r.permutation).norm()
    return r.distance, r.lower, norm, r.replay().is_identity()


def _map(images: Iterable[tuple[int, ...]], threads: int) -> Iterator[tuple]:
    if threads <= 1:
        yield from map(_solve, images)
        return
    with ProcessPoolExecutor(max_workers=threads) as ex:
        # map keeps input order, so output stays deterministic
        yield from ex.map(_solve, images, chunksize=512)


def _summarise(n, images, rows, table, seed, start, failures) -> BenchRecord:
    max_r = Fraction(1)
    sum_r = 0.0
    sum_d = 0
    hits = 0
    count = 0
    for image, (d, lower, norm, ok) in zip(images, rows):
        if not ok:
            failures.append(Failure(image, "sequence does not replay to the identity"))
        if not lower <= d <= f(norm):
            failures.append(Failure(image, f"distance {d} outside [{lower}, {f(norm)}]"))
        if d > diameter_bound(n):
            failures.append(Failure(image, f"distance {d} above the diameter bound"))
        if lower == 0:
            continue
        ref = table[image] if table is not None else lower
        ratio = Fraction(d, ref)
        if table is not None and ratio > RATIO_CAP:
            failures.append(Failure(image, f"ratio {ratio} exceeds 11/8 (exact {ref})"))
        max_r = max(max_r, ratio)
        sum_r += d / ref
        sum_d += d
        hits += d == ref
        count += 1
    elapsed = int(round((time.perf_counter() - start) * 1000))
    if count == 0:
        return BenchRecord(n, Fraction(1), 1.0, 0.0, 100.0 if table is not None else None,
                           elapsed, seed, "exact" if table is not None else "lower_bound", 0)
    return BenchRecord(
        n, max_r, sum_r / count, sum_d / count,
        100.0 * hits / count if table is not None else None,
        elapsed, seed, "exact" if table is not None else "lower_bound", count,
    )


def exhaustive(n: int, table: DistanceTable | None = None, threads: int = 1,
               allow_large: bool = False) -> tuple[BenchRecord, list[Failure]]:
    """Run the solver on every permutation of size ``n``."""
    cap = EXHAUSTIVE_HARD_CAP if allow_large else EXHAUSTIVE_CAP
    if not 2 <= n <= cap:
        raise ValueError(f"exhaustive runs need 2 <= n <= {cap}")
    if table is not None and table.n != n:
        raise ValueError(f"table is for n={table.n}, not {n}")
    start = time.perf_counter()
    images = list(itertools.permutations(range(1, n + 1)))
    failures: list[Failure] = []
    rec = _summarise(n, images, _map(images, threads), table, None, start, failures)
    return rec, failures


def random_permutations(n: int, count: int, seed: int) -> list[tuple[int, ...]]:
    """``count`` uniform permutations of size ``n``; each size gets its own stream."""
    rng = np.random.default_rng([seed, n])
    return [tuple(int(x) + 1 for x in rng.permutation(n)) for _ in range(count)]


def random_bench(sizes: Sequence[int], count: int, seed: int,
                 threads: int = 1) -> Iterator[tuple[BenchRecord, list[Failure]]]:
    """One record per size; ratios are against the lower bound."""
    if count <= 0:
        return
    for n in sizes:
        start = time.perf_counter()
        images = random_permutations(n, count, seed)
        failures: list[Failure] = []
        yield _summarise(n, images, _map(images, threads), None, seed, start, failures), failures


# -- fixtures -----------------------------------------------------------------

FIXTURES = {
    "4 3 2 1 8 7 6 5": 4,
    "5 4 3 2 1 6 11 10 9 8 7": 6,
    "3 6 2 5 1 4 10 9 8 7": 5,
    "4 8 3 7 2 6 1 5 9 14 13 12 11 10": 7,
}
NECKLACE = "14 13 3 2 1 6 5 4 9 8 7 12 11 10"
FIG3 = ("4 3 2 1 8 7 6 5", [(4, 6, 9), (3, 5, 8), (2, 4, 7), (1, 3, 6)])
FIG4 = ("3 6 2 5 1 4 10 9 8 7", [(6, 8, 11), (5, 7, 10), (3, 6, 9), (2, 4, 8), (1, 3, 5)])


def _replays(text: str, steps) -> bool:
    pi = Permutation.parse(text)
    for s in steps:
        pi = apply_transposition(pi, TranspositionDesc(*s))
    return pi.is_identity()


def run_fixtures(timeout: float | None = 60.0) -> list[tuple[str, bool, str]]:
    """(name, passed, detail) for each regression fixture."""
    out = []
    for text, want in FIXTURES.items():
        got = exact_distance(Permutation.parse(text), timeout=timeout)
        out.append((f"exact [{text}]", got == want, f"expected {want}, got {got}"))
    for name, (text, steps) in (("fig3", FIG3), ("fig4", FIG4)):
        out.append((f"{name} replay", _replays(text, steps), f"{len(steps)} steps"))
    st = State.from_permutation(Permutation.parse(NECKLACE))
    steps = 0
    ok = True
    try:
        while not st.is_identity():
            s = find_32_sequence(st)
            MoveSequence.replay(st, s.triples(), inplace=True)
            steps += s.x
    except Exception as exc:  # reported, not raised
        ok = False
        detail = f"{type(exc).__name__}: {exc}"
    else:
        detail = f"sorted in {steps} steps"
    out.append(("necklace tail", ok, detail))
    return out


def elapsed_minutes(rec: BenchRecord) -> float:
    """Wall time in minutes, the unit of the reference timing data."""
    return rec.elapsed_ms / 60000
