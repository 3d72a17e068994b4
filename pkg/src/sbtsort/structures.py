"""Configurations of spi: segments, gates, components and extensions.

A configuration is a product of segments (prefixes of cycles of spi in some
rotation), at most one per cycle.  Everything structural about it depends only
on the segments and on the cyclic order in which their symbols appear in
pibar, so a :class:`Configuration` stores exactly that: the segments and the
support listed in pibar's cyclic order.  Such a configuration can come from a
real permutation (:meth:`Configuration.of`) or be purely abstract, as in the
extension enumeration.

Reading pibar^-1 is reading ``order`` backwards.  "Alternate order" is
symmetric under reversal, so intersection tests can use pibar directly.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .algebra import ExtendedCycle, SigmaPiInv, State, cyclic_increasing

__all__ = [
    "Segment",
    "Configuration",
    "ComponentKind",
    "oriented_triplet",
    "pairs_intersect",
    "intersect_segments",
    "interleave_segments",
    "cycles_intersect",
    "components",
    "open_gates",
    "config_norm",
    "classify_component",
    "is_bad_oriented_5cycle",
    "extend",
    "basic_configurations",
]


@dataclass(frozen=True)
class Segment:
    symbols: tuple[int, ...]
    owner: int | None = None  # leading (largest) symbol of the owning cycle

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"repeated symbol in segment {self.symbols}")

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)


def _positions(ref):
    """(position lookup, modulus) for any cyclic-order reference."""
    if isinstance(ref, ExtendedCycle):
        return ref.position_index, len(ref.seq)
    if isinstance(ref, State):
        return ref.pos, len(ref.seq)
    if isinstance(ref, Configuration):
        return ref.pos, len(ref.order)
    raise TypeError(f"not an ordering reference: {type(ref).__name__}")


@dataclass(frozen=True)
class Configuration:
    segments: tuple[tuple[int, ...], ...]
    order: tuple[int, ...]  # support in pibar's cyclic order
    owners: tuple[int | None, ...] = field(default=(), compare=False)
    pos: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        segs = tuple(tuple(s) for s in self.segments)
        object.__setattr__(self, "segments", segs)
        object.__setattr__(self, "order", tuple(self.order))
        if not self.owners:
            object.__setattr__(self, "owners", (None,) * len(segs))
        support = [x for s in segs for x in s]
        if len(set(support)) != len(support) or set(support) != set(self.order):
            raise ValueError("segments and order must cover the same distinct symbols")
        object.__setattr__(self, "pos", {x: i for i, x in enumerate(self.order)})

    @classmethod
    def of(cls, segments: Iterable[Sequence[int] | Segment], ref) -> "Configuration":
        """Configuration of concrete segments, ordered by ``ref``."""
        segs, owners = [], []
        for s in segments:
            if isinstance(s, Segment):
                segs.append(s.symbols)
                owners.append(s.owner)
            else:
                segs.append(tuple(s))
                owners.append(None)
        pos, _ = _positions(ref)
        order = sorted((x for s in segs for x in s), key=lambda x: pos[x])
        return cls(tuple(segs), tuple(order), tuple(owners))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.order)

    def segment_objects(self) -> tuple[Segment, ...]:
        return tuple(Segment(s, o) for s, o in zip(self.segments, self.owners))

    def __len__(self):
        return len(self.segments)

    def __str__(self):
        return "".join("(" + " ".join(map(str, s)) + ")" for s in self.segments)

    # -- canonical form -----------------------------------------------------

    def canonical(self) -> "Configuration":
        """Relabel along pibar from every starting point; keep the smallest.

        Two configurations with the same canonical form are the same up to
        renaming symbols and rotating pibar.
        """
        S = len(self.order)
        best = None
        for r in range(S):
            lab = {self.order[(r + i) % S]: i for i in range(S)}
            segs = []
            for s in self.segments:
                t = [lab[x] for x in s]
                k = t.index(min(t))
                segs.append(tuple(t[k:] + t[:k]))
            key = tuple(sorted(segs))
            if best is None or key < best:
                best = key
        return Configuration(best, tuple(range(S)))

    def key(self) -> tuple:
        return self.canonical().segments

    def model(self) -> tuple[State, list[int]]:
        """A :class:`State` on symbols ``0..S-1`` whose alpha is the product
        of the segments, and the map back to this configuration's symbols."""
        S = len(self.order)
        lab = {x: i for i, x in enumerate(self.order)}
        alpha = list(range(S))
        for s in self.segments:
            for x, y in zip(s, s[1:] + s[:1]):
                alpha[lab[x]] = lab[y]
        return State(range(S), alpha), list(self.order)


# -- order predicates -------------------------------------------------------


def oriented_triplet(a: int, b: int, c: int, ref) -> bool:
    """For a, b, c met in this order along a cycle: is their pibar^-1 order
    (a .. c .. b ..), i.e. their pibar order (a .. b .. c ..)?"""
    pos, m = _positions(ref)
    return cyclic_increasing(pos[a], pos[b], pos[c], m)


def _between(p: int, lo: int, hi: int, m: int) -> bool:
    """Strictly inside the forward arc lo -> hi."""
    return 0 < (p - lo) % m < (hi - lo) % m


def pairs_intersect(p: tuple[int, int], q: tuple[int, int], ref) -> bool:
    """The two pairs occur in alternate order."""
    pos, m = _positions(ref)
    a, b = pos[p[0]], pos[p[1]]
    return _between(pos[q[0]], a, b, m) != _between(pos[q[1]], a, b, m)


def _cyc_pairs(s: Sequence[int]):
    L = len(s)
    if L < 2:
        return []
    if L == 2:
        return [(s[0], s[1])]
    return [(s[i], s[(i + 1) % L]) for i in range(L)]


def _cyc_triples(s: Sequence[int]):
    L = len(s)
    return [(s[i], s[(i + 1) % L], s[(i + 2) % L]) for i in range(L)] if L >= 3 else []


def intersect_segments(s1: Sequence[int], s2: Sequence[int], ref) -> bool:
    if set(s1) & set(s2):
        return False
    return any(pairs_intersect(p, q, ref) for p in _cyc_pairs(s1) for q in _cyc_pairs(s2))


def interleave_segments(s1: Sequence[int], s2: Sequence[int], ref) -> bool:
    """Triplets (a b c), (d e f) alternating as (a e b f c d) in pibar^-1
    (or the same with the roles of the segments swapped)."""
    if set(s1) & set(s2):
        return False
    pos, m = _positions(ref)

    def inc(*syms):
        ps = [pos[x] for x in syms]
        base = ps[0]
        rel = [(p - base) % m for p in ps]
        return all(rel[i] < rel[i + 1] for i in range(len(rel) - 1))

    for a, b, c in _cyc_triples(s1):
        for d, e, f in _cyc_triples(s2):
            # pibar^-1 = (a e b f c d)  <=>  pibar = (a d c f b e)
            if inc(a, d, c, f, b, e):
                return True
            # pibar^-1 = (d b e c f a)  <=>  pibar = (d a f c e b)
            if inc(d, a, f, c, e, b):
                return True
    return False


def cycles_intersect(c1: Sequence[int], c2: Sequence[int], ref) -> bool:
    """Whole-cycle intersection: some consecutive pair of ``c1`` is a chord
    with symbols of ``c2`` on both sides."""
    pos, m = _positions(ref)
    q = [pos[x] for x in c2]
    for a, b in _cyc_pairs(c1):
        pa, pb = pos[a], pos[b]
        first = _between(q[0], pa, pb, m)
        for p in q[1:]:
            if _between(p, pa, pb, m) != first:
                return True
    return False


def components(s: SigmaPiInv | State, pibar=None) -> list[Configuration]:
    """Connected components of the non-trivial cycles under intersection
    (interleaving pairs always intersect as well)."""
    if isinstance(s, State):
        cycles = [tuple(c) for c in s.nontrivial()]
        ref = s
    else:
        cycles = list(s.value.nontrivial())
        ref = pibar if pibar is not None else s.pibar
    k = len(cycles)
    comp = [-1] * k
    out = []
    for i in range(k):
        if comp[i] >= 0:
            continue
        comp[i] = len(out)
        members = [i]
        stack = [i]
        while stack:
            u = stack.pop()
            for v in range(k):
                if comp[v] < 0 and cycles_intersect(cycles[u], cycles[v], ref):
                    comp[v] = comp[i]
                    members.append(v)
                    stack.append(v)
        members.sort()
        segs = [Segment(cycles[j], max(cycles[j])) for j in members]
        out.append(Configuration.of(segs, ref))
    return out


def _is_oriented_segment(s: Sequence[int], pos, m) -> bool:
    L = len(s)
    if L < 3:
        return False
    ps = [pos[x] for x in s]
    return sum(1 for i in range(L) if ps[i - 1] < ps[i]) > 1


def open_gates(g: Configuration) -> list[tuple[int, int]]:
    pos, m = g.pos, len(g.order)
    gates = []
    for si, s in enumerate(g.segments):
        for a, b in _cyc_pairs(s):
            pa, pb = pos[a], pos[b]
            if any(cyclic_increasing(pa, pb, pos[e], m) for e in s if e != a and e != b):
                continue
            crossed = False
            for sj, t in enumerate(g.segments):
                if sj == si:
                    continue
                for c, d in _cyc_pairs(t):
                    if _between(pos[c], pa, pb, m) != _between(pos[d], pa, pb, m):
                        crossed = True
                        break
                if crossed:
                    break
            if not crossed:
                gates.append((a, b))
    return gates


def config_norm(g: Configuration) -> int:
    if any(len(s) % 2 == 0 for s in g.segments):
        raise ValueError("3-norm of a configuration needs odd-length segments")
    return (len(g.order) - len(g.segments)) // 2


class ComponentKind(enum.Enum):
    BAD_ORIENTED_5CYCLE = "bad_oriented_5cycle"
    UNORIENTED_INTERLEAVING_PAIR = "unoriented_interleaving_pair"
    NECKLACE_4 = "necklace_4"
    NECKLACE_5 = "necklace_5"
    NECKLACE_6 = "necklace_6"
    TWISTED_NECKLACE_4 = "twisted_necklace_4"
    NOT_BAD = "not_bad"

    def __str__(self):
        return self.value


def is_bad_oriented_5cycle(s: Sequence[int], ref) -> bool:
    """s = (a d b e c) with pibar = (a .. b .. c .. d .. e ..) for some rotation."""
    if len(s) != 5:
        return False
    pos, m = _positions(ref)
    for r in range(5):
        a, d, b, e, c = (s[(r + i) % 5] for i in range(5))
        ps = [pos[x] for x in (a, b, c, d, e)]
        rel = [(p - ps[0]) % m for p in ps]
        if rel == sorted(rel):
            return True
    return False


def _intersection_degrees(g: Configuration) -> list[list[int]]:
    k = len(g.segments)
    adj = [[] for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            if intersect_segments(g.segments[i], g.segments[j], g):
                adj[i].append(j)
                adj[j].append(i)
    return adj


def _connected(adj) -> bool:
    if not adj:
        return True
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == len(adj)


def classify_component(g: Configuration, pibar=None) -> ComponentKind:
    segs = g.segments
    if len(segs) == 1 and is_bad_oriented_5cycle(segs[0], g):
        return ComponentKind.BAD_ORIENTED_5CYCLE
    pos, m = g.pos, len(g.order)
    if not all(len(s) == 3 and not _is_oriented_segment(s, pos, m) for s in segs):
        return ComponentKind.NOT_BAD
    k = len(segs)
    if k == 2:
        if interleave_segments(segs[0], segs[1], g):
            return ComponentKind.UNORIENTED_INTERLEAVING_PAIR
        return ComponentKind.NOT_BAD
    adj = _intersection_degrees(g)
    if not _connected(adj):
        return ComponentKind.NOT_BAD
    degs = sorted(len(a) for a in adj)
    if k in (4, 5, 6) and all(d == 2 for d in degs):
        return {4: ComponentKind.NECKLACE_4, 5: ComponentKind.NECKLACE_5, 6: ComponentKind.NECKLACE_6}[k]
    if k == 4 and degs == [2, 2, 3, 3]:
        return ComponentKind.TWISTED_NECKLACE_4
    return ComponentKind.NOT_BAD


# -- extensions ---------------------------------------------------------------


def basic_configurations() -> dict[str, Configuration]:
    """The starting points of the extension analysis, as abstract shapes."""
    # bad oriented 5-cycle (a d b e c), pibar = (a b c d e)
    bad5 = Configuration(((0, 3, 1, 4, 2),), (0, 1, 2, 3, 4))
    # (a b c)(d e f) with pibar^-1 = (a f b c d e), i.e. pibar = (a e d c b f)
    inter = Configuration(((0, 4, 3), (2, 1, 5)), tuple(range(6)))
    # (a b c)(d e f) with pibar^-1 = (a e b f c d), i.e. pibar = (a d c f b e)
    leave = Configuration(((0, 4, 2), (1, 5, 3)), tuple(range(6)))
    return {
        "bad_oriented_5cycle": bad5,
        "unoriented_intersecting_pair": inter,
        "unoriented_interleaving_pair": leave,
    }


def _insertions(order: tuple[int, ...], new: Sequence[int]):
    """All cyclic orders obtained by inserting ``new`` (as an ordered run of
    distinct symbols placed anywhere, any interleaving) while keeping
    ``order[0]`` first.  Yields (new_order, positions of ``new``)."""
    S = len(order)
    total = S + len(new)
    k = len(new)

    def rec(start, chosen):
        if len(chosen) == k:
            yield tuple(chosen)
            return
        for p in range(start, total - (k - len(chosen)) + 1):
            yield from rec(p + 1, chosen + [p])

    for slots in rec(1, []):
        out = []
        it = iter(order)
        slotset = dict(zip(slots, new))
        for i in range(total):
            out.append(slotset[i] if i in slotset else next(it))
        yield tuple(out)


def _closes_gate(before_gates, after: Configuration) -> bool:
    after_gates = set(open_gates(after))
    return any(gte not in after_gates for gte in before_gates)


def extend(g: Configuration, pibar=None) -> list[Configuration]:
    """Configurations one 3-norm larger, by the three sufficient extensions.

    Symbols are abstract: new ones are labelled past the current maximum.
    Results are canonical and deduplicated; order is deterministic.
    """
    gates = open_gates(g)
    fresh = max(g.order) + 1
    out: dict[tuple, Configuration] = {}

    def keep(c: Configuration):
        c = c.canonical()
        out.setdefault(c.segments, c)

    # rules 1 and 2: a new unoriented 3-cycle segment
    u, v, w = fresh, fresh + 1, fresh + 2
    for order in _insertions(g.order, (u, v, w)):
        # pibar order u, v, w makes (u w v) the unoriented 3-cycle
        seg = (u, w, v)
        c = Configuration(g.segments + (seg,), order)
        if gates:
            if _closes_gate(gates, c):
                keep(c)
        elif any(intersect_segments(seg, s, c) for s in g.segments):
            keep(c)

    # rule 3: lengthen one segment by two symbols
    x, y = fresh, fresh + 1
    for si, s in enumerate(g.segments):
        k = len(s)
        pm = g.pos
        if _is_oriented_segment(s, pm, len(g.order)):
            continue
        for i, j in itertools.combinations(range(1, k + 2), 2):
            body = list(s)
            body.insert(i, x)
            body.insert(j, y)
            seg = tuple(body)
            segs = g.segments[:si] + (seg,) + g.segments[si + 1:]
            for xy in ((x, y), (y, x)):
                for order in _insertions(g.order, xy):
                    c = Configuration(segs, order)
                    if k == 3 and is_bad_oriented_5cycle(seg, c):
                        keep(c)
                        continue
                    if _is_oriented_segment(seg, c.pos, len(order)):
                        continue
                    if gates:
                        if _closes_gate(gates, c):
                            keep(c)
                    elif len(open_gates(c)) <= 2:
                        keep(c)
    return [out[k] for k in sorted(out)]
