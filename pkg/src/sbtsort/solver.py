"""The 11/8 sorting algorithm and its bound functions.

Phases, each tagging the steps it emits:

``pre22``           a (2,2)-sequence found by two-ply look-ahead, once, up front
``odd2move``        2-moves joining two even-length cycles
``oriented2move``   2-moves inside an oriented cycle
``four3``           (4,3)-sequences for long oriented cycles without a 2-move
``eleven8_allowed`` 11/8-sequences inside a small component (or part of one)
``eleven8_big``     11/8-sequences found while growing a big configuration
``eleven8_pool``    11/8-sequences over the pool of set-aside components
``tail32``          2-moves and (3,2)-sequences once nothing better is promised

Components that are small and allow no 11/8-sequence are set aside ("marked")
and pooled; once the pool's 3-norm reaches 8 it is released and searched as a
whole.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from .algebra import State, lower_bound
from .errors import InternalConsistencyError, SearchTimeout
from .perm_core import Permutation, apply_transposition
from .search import (
    MoveSequence,
    _odd_pair_move,
    _three_segments,
    _two_move,
    find_22_sequence,
    find_32_sequence,
    find_eleven_eighths,
    seq_43_for_even_oriented_ge7,
)
from .structures import Configuration, cycles_intersect, intersect_segments, open_gates

__all__ = [
    "SortResult",
    "f",
    "upper_bound",
    "diameter_bound",
    "sbt1375",
    "distance",
    "replay",
]

log = logging.getLogger(__name__)

POOL_SEARCH_SECONDS = 20.0


def f(x: int) -> int:
    if x < 0:
        raise ValueError("x must be non-negative")
    return 11 * (x // 8) + (3 * (x % 8)) // 2


def upper_bound(pi: Permutation) -> int:
    m = 2 * lower_bound(pi)  # n + 1 - c_odd
    return 11 * (m // 16) + (3 * (m % 16)) // 4


def diameter_bound(n: int) -> int:
    return 11 * (n // 16) + (3 * (n % 16)) // 4


@dataclass(frozen=True)
class SortResult:
    permutation: Permutation
    distance: int
    sequence: MoveSequence
    trace: tuple[str, ...]
    lower: int
    upper: int

    def replay(self) -> Permutation:
        return replay(self.permutation, self.sequence)

    def verify(self) -> bool:
        return self.replay().is_identity() and self.lower <= self.distance <= self.upper


def replay(pi: Permutation, seq: MoveSequence) -> Permutation:
    for t in seq.rho_steps:
        pi = apply_transposition(pi, t)
    return pi


class _Run:
    def __init__(self, pi: Permutation):
        self.st = State.from_permutation(pi)
        self.seq = MoveSequence()
        self.trace: list[str] = []
        self.marked: set[int] = set()  # symbols of set-aside cycles

    def apply(self, triples, tag: str) -> MoveSequence:
        s = MoveSequence.replay(self.st, triples, inplace=True)
        self.seq = self.seq + s
        self.trace.extend([tag] * s.x)
        return s

    def apply_seq(self, s: MoveSequence, tag: str):
        return self.apply(s.triples(), tag)

    # -- helpers -----------------------------------------------------------

    def unmarked(self) -> list[list[int]]:
        return [c for c in self.st.cycles if len(c) > 1 and c[0] not in self.marked]

    def marked_cycles(self) -> list[list[int]]:
        return [c for c in self.st.cycles if len(c) > 1 and c[0] in self.marked]

    def component_of(self, seed: Sequence[int], pool: list[list[int]]) -> list[list[int]]:
        """Cycles of ``pool`` connected to ``seed``, in discovery order."""
        comp = [seed]
        rest = [c for c in pool if c is not seed]
        i = 0
        while i < len(comp):
            keep = []
            for c in rest:
                if cycles_intersect(comp[i], c, self.st):
                    comp.append(c)
                else:
                    keep.append(c)
            rest = keep
            i += 1
        return comp


def _norm(cycles) -> int:
    return sum((len(c) - 1) // 2 for c in cycles)


def _grow(run: _Run, comp: list[list[int]]):
    """Configurations growing from a 3-symbol seed inside ``comp``, one 3-norm
    at a time, until the norm reaches 9 or nothing can be added."""
    st = run.st
    seed = comp[0]
    first = tuple(seed) if len(seed) <= 5 else tuple(seed[:3])
    segs = [first]
    owners = [seed]
    yield Configuration.of(segs, st)
    cfg_norm = (len(first) - 1) // 2
    while cfg_norm < 9:
        cfg = Configuration.of(segs, st)
        gates = open_gates(cfg)
        added = False
        for c in comp:
            if any(c is o for o in owners):
                continue
            options = [tuple(c)] if len(c) <= 5 else _three_segments(c)
            for s in options:
                trial = Configuration.of(segs + [s], st)
                if gates:
                    ok = len(open_gates(trial)) < len(gates) or any(g not in set(open_gates(trial)) for g in gates)
                else:
                    ok = any(intersect_segments(s, t, st) for t in segs)
                if ok:
                    segs.append(s)
                    owners.append(c)
                    cfg_norm += (len(s) - 1) // 2
                    added = True
                    break
            if added:
                break
        if not added:
            # lengthen a segment along its own cycle
            for idx, (s, c) in enumerate(zip(segs, owners)):
                if len(s) + 2 <= len(c):
                    segs[idx] = tuple(c[: len(s) + 2]) if s == tuple(c[: len(s)]) else s
                    if segs[idx] != s:
                        cfg_norm += 1
                        added = True
                        break
        if not added:
            return
        yield Configuration.of(segs, st)


def _pool_flush(run: _Run) -> bool:
    """Search the pool of set-aside cycles for an 11/8-sequence and apply it."""
    st = run.st
    pool = run.marked_cycles()
    cfg = Configuration.of([tuple(c) for c in pool], st)
    try:
        seq = find_eleven_eighths(cfg, st, timeout=POOL_SEARCH_SECONDS)
    except SearchTimeout:
        seq = None
    if seq is None:
        log.warning("no 11/8-sequence found for a pool of norm %d", _norm(pool))
        return False
    run.marked.clear()
    run.apply_seq(seq, "eleven8_pool")
    return True


def sbt1375(pi: Permutation | Sequence[int]) -> SortResult:
    if not isinstance(pi, Permutation):
        pi = Permutation(tuple(pi))
    run = _Run(pi)
    st = run.st

    # (1) a (2,2)-sequence up front
    s22 = find_22_sequence(st)
    if s22 is not None:
        run.apply_seq(s22, "pre22")

    # (2) pair up even-length cycles
    while True:
        evens = [c for c in st.cycles if len(c) % 2 == 0]
        if len(evens) < 2:
            break
        run.apply([_odd_pair_move(st, evens[0], evens[1])], "odd2move")

    # (3) main loop over the unmarked cycles
    pool_stuck = False
    while True:
        live = run.unmarked()
        if not live:
            break
        t = _two_move(st, live)
        if t is not None:
            tag = "odd2move" if len(st.cycles[st.cid[t[0]]]) % 2 == 0 else "oriented2move"
            run.apply([t], tag)
            continue
        long_oriented = [c for c in live if len(c) >= 7 and st.is_oriented(c)]
        if long_oriented:
            run.apply_seq(seq_43_for_even_oriented_ge7(long_oriented[0], st), "four3")
            continue
        seed = min(live, key=lambda c: c[0])
        comp = run.component_of(seed, live)
        small = _norm(comp) <= 8
        applied = False
        for cfg in _grow(run, comp):
            seq = find_eleven_eighths(cfg, st)
            if seq is not None:
                run.apply_seq(seq, "eleven8_allowed" if small else "eleven8_big")
                applied = True
                break
        if not applied and small:
            whole = Configuration.of([tuple(c) for c in comp], st)
            seq = find_eleven_eighths(whole, st)
            if seq is not None:
                run.apply_seq(seq, "eleven8_allowed")
                applied = True
        if not applied:
            if not small:
                raise InternalConsistencyError("big configuration without an 11/8-sequence", st.seq)
            for c in comp:
                run.marked.add(c[0])
        if not pool_stuck and _norm(run.marked_cycles()) >= 8:
            pool_stuck = not _pool_flush(run)

    # (4) whatever is left
    while not st.is_identity():
        run.apply_seq(find_32_sequence(st), "tail32")

    return SortResult(pi, run.seq.x, run.seq, tuple(run.trace), lower_bound(pi), f(lower_bound(pi)))


def distance(pi: Permutation, sigma: Permutation) -> SortResult:
    """Sort ``pi`` into ``sigma``; the returned block swaps act on ``pi``."""
    if pi.n != sigma.n:
        raise ValueError("permutations differ in length")
    res = sbt1375(sigma.inverse().compose(pi))
    return SortResult(pi, res.distance, res.sequence, res.trace, res.lower, res.upper)
