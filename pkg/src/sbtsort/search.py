"""Finding good sequences of applicable 3-cycles.

Everything here works on :class:`~sbtsort.algebra.State`.  The public
functions also accept a :class:`SigmaPiInv` (its ``pibar`` is used) or an
:class:`ExtendedCycle`.

Move types on a state with only odd-length cycles come from a single rule: a
2-move is an applicable 3-cycle whose symbols lie in one cycle in the same
cyclic order, splitting it into three odd arcs.  With the cycle read as
``c_0 .. c_{L-1}`` that means indices ``i < j < k`` with ``j - i`` and
``k - j`` odd and pibar positions of ``c_i, c_j, c_k`` cyclically increasing.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .algebra import ExtendedCycle, SigmaPiInv, State, ThreeCycle
from .errors import InternalConsistencyError, NotApplicable, SearchTimeout
from .perm_core import Permutation, TranspositionDesc
from .structures import (
    ComponentKind,
    Configuration,
    basic_configurations,
    classify_component,
    config_norm,
    extend as extend_configuration,
    interleave_segments,
    intersect_segments,
    open_gates,
)

__all__ = [
    "MoveSequence",
    "as_state",
    "find_2move",
    "iter_two_moves",
    "find_22_sequence",
    "seq_for_bad_oriented_5cycle",
    "seq_43_for_even_oriented_ge7",
    "find_32_sequence",
    "find_eleven_eighths",
    "eleven_eighths_need",
    "search_sequence",
    "audit_cases",
    "AuditRecord",
    "AuditReport",
]

Triple = tuple[int, int, int]


@dataclass(frozen=True)
class MoveSequence:
    """Applicable 3-cycles together with their block-swap form and move types."""

    steps: tuple[ThreeCycle, ...] = ()
    rho_steps: tuple[TranspositionDesc, ...] = ()
    types: tuple[int, ...] = ()

    @property
    def x(self) -> int:
        return len(self.steps)

    @property
    def y(self) -> int:
        return sum(1 for d in self.types if d == 2)

    def is_ratio(self, a: int, b: int) -> bool:
        """An a/b-sequence: x <= a and x/y <= a/b."""
        return self.x <= a and self.y > 0 and b * self.x <= a * self.y

    def __add__(self, other: "MoveSequence") -> "MoveSequence":
        return MoveSequence(self.steps + other.steps, self.rho_steps + other.rho_steps,
                            self.types + other.types)

    def __len__(self):
        return self.x

    def __str__(self):
        return ", ".join(str(t) for t in self.steps)

    @classmethod
    def replay(cls, state: State, triples: Iterable[Sequence[int]], inplace: bool = False) -> "MoveSequence":
        """Run ``triples`` on ``state`` (a copy unless ``inplace``) and record
        block swaps and move types.  Raises NotApplicable on a bad step."""
        st = state if inplace else state.copy()
        steps, rhos, types = [], [], []
        for t in triples:
            a, b, c = (int(v) for v in t)
            if len({a, b, c}) != 3 or not st.applicable(a, b, c):
                raise NotApplicable(f"({a} {b} {c}) is not applicable at step {len(steps) + 1}")
            types.append(st.delta(a, b, c))
            rhos.append(TranspositionDesc(*st.rho(a, b, c)))
            steps.append(ThreeCycle(a, b, c))
            st.apply(a, b, c)
        return cls(tuple(steps), tuple(rhos), tuple(types))

    def triples(self) -> list[Triple]:
        return [(t.a, t.b, t.c) for t in self.steps]


def as_state(s, pibar=None) -> State:
    if isinstance(s, State):
        return s
    if isinstance(s, SigmaPiInv):
        return State.from_pibar(pibar if pibar is not None else s.pibar)
    if isinstance(s, ExtendedCycle):
        return State.from_pibar(s)
    if isinstance(s, Permutation):
        return State.from_permutation(s)
    raise TypeError(f"cannot build a state from {type(s).__name__}")


# -- 2-moves ------------------------------------------------------------------


_NUMPY_MIN = 48


def _scan_cycle(st: State, cyc: Sequence[int], odd_arcs: bool):
    """Indices i < j < k of ``cyc`` whose symbols are applicable in cycle order.

    With ``odd_arcs`` the gaps j - i and k - j must be odd.  For each middle
    index j, measure every other symbol by its forward pibar distance from
    c_j; a valid (i, k) exists iff the closest right-hand candidate comes
    before the farthest left-hand one.
    """
    L = len(cyc)
    if L < 3:
        return None
    pos = st.pos
    N = len(pos)
    q = [pos[x] for x in cyc]
    if sum(1 for t in range(L) if q[t - 1] < q[t]) <= 1:
        return None  # unoriented: symbols run backwards along pibar
    step = 2 if odd_arcs else 1
    if L >= _NUMPY_MIN:
        qa = np.asarray(q, dtype=np.int64)
        R = (qa[None, :] - qa[:, None]) % N  # R[j, t] = forward distance c_j -> c_t
        idx = np.arange(L)
        D = idx[None, :] - idx[:, None]  # t - j
        par = (D % 2 != 0) if odd_arcs else np.ones(D.shape, dtype=bool)
        left = (D < 0) & par
        right = (D > 0) & par
        A = np.where(left, R, -1)
        B = np.where(right, R, N)
        amax = A.max(axis=1)
        bmin = B.min(axis=1)
        hits = np.nonzero(bmin < amax)[0]
        if len(hits) == 0:
            return None
        j = int(hits[0])
        return int(A[j].argmax()), j, int(B[j].argmin())
    for j in range(1, L - 1):
        qj = q[j]
        bi, ba = -1, -1
        for i in range(j - 1, -1, -step):
            r = (q[i] - qj) % N
            if r > ba:
                ba, bi = r, i
        if bi < 0:
            continue
        bk, bb = -1, N
        for k in range(j + 1, L, step):
            r = (q[k] - qj) % N
            if r < bb:
                bb, bk = r, k
        if bk >= 0 and bb < ba:
            return bi, j, bk
    return None


def _odd_pair_move(st: State, g: Sequence[int], h: Sequence[int]) -> Triple:
    """For two even-length cycles: a, b adjacent in g and c in h; whichever
    orientation of {a, b, c} is applicable is a 2-move."""
    a, b, c = g[0], g[1], h[0]
    return (a, b, c) if st.applicable(a, b, c) else (a, c, b)


def _two_move(st: State, cycles=None) -> Triple | None:
    cycles = st.cycles if cycles is None else cycles
    evens = []
    for cyc in cycles:
        L = len(cyc)
        if L % 2 == 0:
            evens.append(cyc)
            continue
        if L < 3:
            continue
        # cheap first: three consecutive symbols
        for t in range(L):
            a, b, c = cyc[t - 2], cyc[t - 1], cyc[t]
            if st.applicable(a, b, c):
                return a, b, c
        hit = _scan_cycle(st, cyc, True)
        if hit:
            i, j, k = hit
            return cyc[i], cyc[j], cyc[k]
    if len(evens) >= 2:
        return _odd_pair_move(st, evens[0], evens[1])
    return None


def find_2move(s, pibar=None) -> ThreeCycle | None:
    st = as_state(s, pibar)
    t = _two_move(st)
    return None if t is None else ThreeCycle(*t)


def iter_two_moves(st: State, cycles=None) -> Iterator[Triple]:
    """Every 2-move of ``st`` exactly once, deterministically ordered."""
    cycles = st.cycles if cycles is None else cycles
    evens = [c for c in cycles if len(c) % 2 == 0]
    for cyc in cycles:
        L = len(cyc)
        if L < 3:
            continue
        for i, j, k in itertools.combinations(range(L), 3):
            a, b, c = cyc[i], cyc[j], cyc[k]
            if not st.applicable(a, b, c):
                continue
            odd = ((j - i) & 1) + ((k - j) & 1) + ((L - k + i) & 1)
            if odd - (L & 1) == 2:
                yield a, b, c
    for g, h in itertools.permutations(evens, 2):
        Lg = len(g)
        for i in range(Lg):
            for j in range(i + 1, Lg, 2):
                for z in h:
                    yield st.orient(g[i], g[j], z)


def find_22_sequence(s, pibar=None) -> MoveSequence | None:
    st = as_state(s, pibar)
    if _two_move(st) is None:
        return None
    for t in iter_two_moves(st):
        child = st.copy()
        child.apply(*t)
        u = _two_move(child)
        if u is not None:
            return MoveSequence.replay(st, [t, u])
    return None


# -- fixed-shape sequences ----------------------------------------------------


def _pibar_order_is(st: State, syms: Sequence[int]) -> bool:
    pos = st.pos
    N = len(pos)
    base = pos[syms[0]]
    rel = [(pos[x] - base) % N for x in syms]
    return all(rel[i] < rel[i + 1] for i in range(len(rel) - 1))


_FIVE_FORMS = (
    # pibar order of (a b c d e)-symbols -> steps, with gamma = (a d b e c)
    ("abcde", ("abc", "bcd", "cde")),
    ("abced", ("bed",)),
    ("abecd", ("aec",)),
    ("aebdc", ("adc",)),
    ("abedc", ("adc",)),
    ("adbec", ("adb",)),
)


def seq_for_bad_oriented_5cycle(gamma: Sequence[int], s, pibar=None) -> MoveSequence:
    """A 2-move or the (3,2)-sequence for an oriented 5-cycle."""
    st = as_state(s, pibar)
    if len(gamma) != 5:
        raise ValueError("need a 5-cycle")
    for r in range(5):
        a, d, b, e, c = (gamma[(r + i) % 5] for i in range(5))
        if not st.applicable(a, b, c):
            continue
        name = {"a": a, "b": b, "c": c, "d": d, "e": e}
        for form, steps in _FIVE_FORMS:
            if _pibar_order_is(st, [name[ch] for ch in form]):
                seq = MoveSequence.replay(st, [tuple(name[ch] for ch in t) for t in steps])
                return seq
    raise InternalConsistencyError(f"no listed form matches 5-cycle {tuple(gamma)}", st.seq)


def _oriented_triples(st: State, cyc: Sequence[int]) -> Iterator[tuple[int, int, int]]:
    L = len(cyc)
    for i, j, k in itertools.combinations(range(L), 3):
        if st.applicable(cyc[i], cyc[j], cyc[k]):
            yield i, j, k


def seq_43_for_even_oriented_ge7(gamma: Sequence[int], s, pibar=None) -> MoveSequence:
    """A 2-move inside ``gamma`` or a (4,3)-sequence on its symbols."""
    st = as_state(s, pibar)
    L = len(gamma)
    if L < 7 or L % 2 == 0:
        raise ValueError("need an odd-length cycle of length at least 7")
    hit = _scan_cycle(st, gamma, True)
    if hit:
        return MoveSequence.replay(st, [tuple(gamma[t] for t in hit)])
    first = _scan_cycle(st, gamma, False)
    if first is None:
        raise ValueError("cycle is unoriented")
    candidates = itertools.chain([first], _oriented_triples(st, gamma))
    tried = 0
    for i, j, k in candidates:
        tried += 1
        if tried > 4 * L:
            break
        arcs = [(j - i, i, j, k), (k - j, j, k, i), (L - k + i, k, i, j)]
        for arc, ia, ib, ic in arcs:
            if arc % 2 == 0 or arc < 3:
                continue
            a, b, c = gamma[ia], gamma[ib], gamma[ic]
            d, e = gamma[(ia + 1) % L], gamma[(ia + 2) % L]
            f, g = gamma[(ib + 1) % L], gamma[(ic + 1) % L]
            if _pibar_order_is(st, (a, e, f, g, d, b, c)):
                seq = MoveSequence.replay(st, [(a, e, f), (d, e, f), (b, f, d), (a, c, g)])
                if seq.y >= 3:
                    return seq
            skel = Configuration.of([(a, d, e, b, f, c, g)], st)
            found = _model_search(skel, st, max_x=4, need=eleven_eighths_need)
            if found is not None:
                return found
    raise InternalConsistencyError(f"no 2-move or (4,3)-sequence for {tuple(gamma)}", st.seq)


# -- bounded search ---------------------------------------------------------------


def eleven_eighths_need(x: int) -> int | None:
    """Least number of 2-moves making x steps an 11/8-sequence."""
    if x < 1 or x > 11:
        return None
    return -(-8 * x // 11)


def three_halves_need(x: int) -> int | None:
    if x < 1 or x > 3:
        return None
    return -(-2 * x // 3)


class _Deadline:
    def __init__(self, seconds):
        self.end = None if seconds is None else time.monotonic() + seconds
        self.count = 0

    def check(self):
        self.count += 1
        if self.end is not None and self.count % 256 == 0 and time.monotonic() > self.end:
            raise SearchTimeout("search budget exhausted", None, None)


def search_sequence(st: State, symbols: Sequence[int], max_x: int,
                    need: Callable[[int], int | None], timeout: float | None = None) -> list[Triple] | None:
    """Iterative deepening over 0- and 2-moves drawn from ``symbols``.

    Returns the first sequence (shortest x, then lexicographic with 2-moves
    tried first) whose number of 2-moves reaches ``need(x)``, or None.
    Negative moves are never used: they cannot help reach the ratios
    searched for here within the depth bounds.
    """
    symbols = sorted(set(symbols))
    combos = list(itertools.combinations(symbols, 3))
    norm0 = st.norm()
    clock = _Deadline(timeout)
    for x in range(1, max_x + 1):
        y = need(x)
        if y is None or y > x or y > norm0:
            continue
        failed: set = set()
        path: list[Triple] = []

        def dfs(node: State, r: int, Y: int) -> bool:
            if Y <= 0:
                return True
            if r < Y or node.norm() < Y:
                return False
            key = (tuple(node.seq), tuple(node.alpha), r, Y)
            if key in failed:
                return False
            clock.check()
            twos, zeros = [], []
            for u, v, w in combos:
                a, b, c = node.orient(u, v, w)
                d = node.delta(a, b, c)
                if d == 2:
                    twos.append((a, b, c))
                elif d == 0 and r > Y:
                    zeros.append((a, b, c))
            for t, gain in itertools.chain(((t, 1) for t in twos), ((t, 0) for t in zeros)):
                child = node.copy()
                child.apply(*t)
                path.append(t)
                if dfs(child, r - 1, Y - gain):
                    return True
                path.pop()
            failed.add(key)
            return False

        if dfs(st, x, y):
            return list(path)
    return None


def _model_search(g: Configuration, real: State | None, max_x: int,
                  need: Callable[[int], int | None], timeout: float | None = None) -> MoveSequence | None:
    """Search the segment model of ``g``; map back and check on ``real``."""
    model, labels = g.model()
    found = search_sequence(model, range(len(labels)), max_x, need, timeout)
    if found is None:
        return None
    triples = [tuple(labels[v] for v in t) for t in found]
    if real is None:
        return MoveSequence.replay(model, found)
    seq = MoveSequence.replay(real, triples)
    want = need(seq.x)
    if want is not None and seq.y >= want:
        return seq
    # the model and the real state disagree; search the real state directly
    direct = search_sequence(real, labels, max_x, need, timeout)
    if direct is None:
        return None
    return MoveSequence.replay(real, direct)


def find_eleven_eighths(g: Configuration, pibar=None, timeout: float | None = None) -> MoveSequence | None:
    """An 11/8-sequence written with the symbols of ``g``, if one exists.

    ``pibar`` (a State, ExtendedCycle or SigmaPiInv) is the real permutation
    the configuration lives in; without it the configuration is treated as
    an abstract one and the sequence refers to its own symbols.
    """
    real = None if pibar is None else as_state(pibar)
    try:
        norm = config_norm(g)
    except ValueError:
        norm = None
    max_x = 11 if norm is None else min(11, (11 * norm) // 8)
    return _model_search(g, real, max(1, max_x), eleven_eighths_need, timeout)


# -- (3,2)-sequences ------------------------------------------------------------


def _three_segments(cyc: Sequence[int]) -> list[tuple[int, int, int]]:
    L = len(cyc)
    if L < 3:
        return []
    if L == 3:
        return [tuple(cyc)]
    return [(cyc[s], cyc[(s + 1) % L], cyc[(s + 2) % L]) for s in range(L)]


def find_32_sequence(s, pibar=None) -> MoveSequence:
    """A 2-move, or a (3,2)-sequence (a (4,3)-sequence for long oriented
    cycles, which is at least as good)."""
    st = as_state(s, pibar)
    if st.is_identity():
        raise ValueError("already sorted")
    t = _two_move(st)
    if t is not None:
        return MoveSequence.replay(st, [t])
    for cyc in st.cycles:
        if len(cyc) >= 5 and st.is_oriented(cyc):
            if len(cyc) == 5:
                return seq_for_bad_oriented_5cycle(cyc, st)
            return seq_43_for_even_oriented_ge7(cyc, st)
    need = three_halves_need
    cycles = st.nontrivial()
    for ci, c0 in enumerate(cycles):
        for gamma in _three_segments(c0):
            partners = []
            for cj, c1 in enumerate(cycles):
                if cj == ci:
                    continue
                for delta in _three_segments(c1):
                    if intersect_segments(gamma, delta, st):
                        partners.append((cj, delta))
            # interleaving segments: (a c b), (d e f), (a c b)
            for _, delta in partners:
                if interleave_segments(gamma, delta, st):
                    for p, q in ((gamma, delta), (delta, gamma)):
                        for r in range(3):
                            a, b, c = p[r], p[(r + 1) % 3], p[(r + 2) % 3]
                            for r2 in range(3):
                                d, e, f = q[r2], q[(r2 + 1) % 3], q[(r2 + 2) % 3]
                                if _pibar_order_is(st, (a, f, c, e, b, d)):
                                    seq = MoveSequence.replay(st, [(a, c, b), (d, e, f), (a, c, b)])
                                    if seq.y >= 2:
                                        return seq
            for _, delta in partners:
                found = _model_search(Configuration.of([gamma, delta], st), st, 3, need)
                if found is not None:
                    return found
            for (cj, delta), (ck, eps) in itertools.combinations(partners, 2):
                if cj == ck:
                    continue
                found = _model_search(Configuration.of([gamma, delta, eps], st), st, 3, need)
                if found is not None:
                    return found
        break  # one seed cycle is enough
    # last resort: direct search on the real state over a small support
    support = [x for c in cycles for x in c]
    if len(support) <= 15:
        found = search_sequence(st, support, 3, need)
        if found is not None:
            return MoveSequence.replay(st, found)
    raise InternalConsistencyError("no 2-move or (3,2)-sequence found", st.seq)


# -- case audit ---------------------------------------------------------------------


@dataclass(frozen=True)
class AuditRecord:
    key: tuple
    norm: int
    verdict: str  # sequence_found | extended | bad_small | counterexample
    detail: str = ""

    def line(self) -> str:
        segs = "".join("(" + " ".join(map(str, s)) + ")" for s in self.key)
        return f"{self.verdict}\tnorm={self.norm}\t{segs}\t{self.detail}".rstrip()


@dataclass
class AuditReport:
    records: list[AuditRecord] = field(default_factory=list)
    unions_checked: int = 0
    union_failures: list[str] = field(default_factory=list)

    @property
    def counterexamples(self) -> list[AuditRecord]:
        return [r for r in self.records if r.verdict == "counterexample"]

    def bad_small(self) -> dict[str, set[int]]:
        out: dict[str, set[int]] = {}
        for r in self.records:
            if r.verdict == "bad_small":
                out.setdefault(r.detail, set()).add(r.norm)
        return out

    def lines(self) -> list[str]:
        return [r.line() for r in self.records]


def audit_cases(norm_limit: int, timeout: float | None = None) -> AuditReport:
    """Depth-first extension of the basic configurations up to ``norm_limit``.

    A branch stops as soon as its configuration allows an 11/8-sequence.
    Full small configurations without one are recorded as bad, tagged with
    their recognised shape; anything of norm 9 or more without one is a
    counterexample.
    """
    if norm_limit < 2:
        raise ValueError("norm_limit must be at least 2")
    report = AuditReport()
    seen: set = set()

    def visit(cfg: Configuration):
        cfg = cfg.canonical()
        if cfg.segments in seen:
            return
        seen.add(cfg.segments)
        norm = config_norm(cfg)
        seq = find_eleven_eighths(cfg, timeout=timeout)
        if seq is not None:
            report.records.append(AuditRecord(cfg.segments, norm, "sequence_found", f"({seq.x},{seq.y})"))
            return
        if norm >= 9:
            report.records.append(AuditRecord(cfg.segments, norm, "counterexample"))
            return
        if not open_gates(cfg):
            kind = classify_component(cfg)
            report.records.append(AuditRecord(cfg.segments, norm, "bad_small", str(kind)))
        else:
            report.records.append(AuditRecord(cfg.segments, norm, "extended"))
        if norm < norm_limit:
            for nxt in extend_configuration(cfg):
                visit(nxt)

    for cfg in basic_configurations().values():
        visit(cfg)

    # unions of bad small components with total norm in [8, norm_limit]
    bad = {}
    for r in report.records:
        if r.verdict == "bad_small" and r.detail != str(ComponentKind.NOT_BAD):
            bad.setdefault(r.key, r.norm)
    for combo in _bad_unions(bad, norm_limit):
        report.unions_checked += 1
        if find_eleven_eighths(combo, timeout=timeout) is None:
            report.union_failures.append(str(combo))
    return report


def disjoint_union(parts: Sequence[Configuration]) -> Configuration:
    """Side-by-side placement: each part occupies its own arc of pibar."""
    segs, order = [], []
    shift = 0
    for p in parts:
        p = p.canonical()
        segs.extend(tuple(x + shift for x in s) for s in p.segments)
        order.extend(x + shift for x in p.order)
        shift += len(p.order)
    return Configuration(tuple(segs), tuple(order))


def _bad_unions(bad: dict, norm_limit: int):
    items = sorted(bad.items())
    for size in range(2, 9):
        for combo in itertools.combinations_with_replacement(items, size):
            total = sum(n for _, n in combo)
            if 8 <= total <= norm_limit:
                yield disjoint_union([Configuration(k, tuple(range(sum(len(s) for s in k))))
                                      for k, _ in combo])
