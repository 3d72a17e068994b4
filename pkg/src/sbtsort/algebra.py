"""Algebraic view of sorting by transpositions.

A one-line permutation ``pi`` becomes the (n+1)-cycle ``pibar = (0 pi_1 ... pi_n)``.
A transposition is a 3-cycle ``tau = (a b c)`` whose symbols occur in ``pibar``
in that cyclic order ("applicable"); applying it means ``pibar <- tau * pibar``.
Sorting is finished when ``pibar`` equals ``iotabar = (0 1 ... n)``, i.e. when
``spi = iotabar * pibar^-1`` is the identity.  Applying ``tau`` right-multiplies
``spi`` by ``tau^-1``.

The quantity driving everything is ``c_odd``, the number of odd-length cycles of
``spi`` (1-cycles included); the 3-norm ``(n + 1 - c_odd) / 2`` is a lower bound
on the distance and a move changes ``c_odd`` by -2, 0 or +2.

The immutable types (:class:`ExtendedCycle`, :class:`SigmaPiInv`,
:class:`ThreeCycle`) are the public surface.  :class:`State` is the mutable
workhorse used by the searches: a cyclic order of symbols plus a permutation
``alpha`` on them, updated in place.  For a real permutation ``alpha`` is
``spi``; for a configuration it is the product of the configuration's segments.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import NotApplicable
from .perm_core import CyclePerm, Permutation, TranspositionDesc, decompose

__all__ = [
    "ThreeCycle",
    "ExtendedCycle",
    "SigmaPiInv",
    "State",
    "extend",
    "sigma_pi_inv",
    "c_odd_count",
    "three_norm",
    "lower_bound",
    "is_applicable",
    "apply_3cycle",
    "to_rho",
    "move_type",
    "cyclic_increasing",
]


def cyclic_increasing(p: int, q: int, r: int, modulus: int) -> bool:
    """True iff positions p, q, r are met in this order walking forward."""
    return (q - p) % modulus < (r - p) % modulus


@dataclass(frozen=True)
class ThreeCycle:
    """The 3-cycle ``(a b c)``; stored rotated so that ``a`` is the smallest."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        a, b, c = self.a, self.b, self.c
        if len({a, b, c}) != 3:
            raise ValueError(f"3-cycle needs distinct symbols: {(a, b, c)}")
        m = min(a, b, c)
        while a != m:
            a, b, c = b, c, a
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @classmethod
    def parse(cls, text: str) -> "ThreeCycle":
        vals = [int(t) for t in text.replace("(", " ").replace(")", " ").replace(",", " ").split()]
        return cls(*vals)

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def inverse(self) -> "ThreeCycle":
        return ThreeCycle(self.a, self.c, self.b)

    def __str__(self):
        return f"({self.a} {self.b} {self.c})"


@dataclass(frozen=True)
class ExtendedCycle:
    """``pibar = (0 pi_1 ... pi_n)`` together with each symbol's position in it."""

    seq: tuple[int, ...]
    position_index: tuple[int, ...] = field(repr=False, compare=False)

    @classmethod
    def from_sequence(cls, seq: Sequence[int]) -> "ExtendedCycle":
        seq = list(seq)
        z = seq.index(0)
        seq = seq[z:] + seq[:z]
        pos = [0] * len(seq)
        for i, x in enumerate(seq):
            pos[x] = i
        return cls(tuple(seq), tuple(pos))

    @property
    def n(self) -> int:
        return len(self.seq) - 1

    @property
    def cycle(self) -> CyclePerm:
        table = [0] * len(self.seq)
        for x, y in zip(self.seq, self.seq[1:] + self.seq[:1]):
            table[x] = y
        return decompose(table)

    def permutation(self) -> Permutation:
        return Permutation(self.seq[1:])

    def inverse_table(self) -> tuple[int, ...]:
        out = [0] * len(self.seq)
        for x, y in zip(self.seq, self.seq[1:] + self.seq[:1]):
            out[y] = x
        return tuple(out)

    def __str__(self):
        return "(" + " ".join(map(str, self.seq)) + ")"


def extend(pi: Permutation) -> ExtendedCycle:
    return ExtendedCycle.from_sequence((0,) + pi.image)


def _spi_table(pibar: ExtendedCycle) -> list[int]:
    # iotabar(pibar^-1(x)) = predecessor of x in pibar, plus one (mod n+1)
    m = len(pibar.seq)
    seq, pos = pibar.seq, pibar.position_index
    return [(seq[pos[x] - 1] + 1) % m for x in range(m)]


@dataclass(frozen=True)
class SigmaPiInv:
    """``spi = iotabar * pibar^-1`` with per-cycle orientation flags."""

    value: CyclePerm
    pibar: ExtendedCycle = field(repr=False)
    oriented: tuple[bool, ...] = field(default=(), compare=False)

    def __post_init__(self):
        pos = self.pibar.position_index
        flags = tuple(_is_oriented([pos[x] for x in cyc]) for cyc in self.value.cycles)
        object.__setattr__(self, "oriented", flags)

    @property
    def cycles(self) -> tuple[tuple[int, ...], ...]:
        return self.value.cycles

    @property
    def size(self) -> int:
        return self.value.ground_size

    def is_identity(self) -> bool:
        return self.value.is_identity()

    def __str__(self):
        return str(self.value)


def _is_oriented(positions: Sequence[int]) -> bool:
    """A cycle is unoriented iff its symbols' pibar positions, read in cycle
    order, decrease cyclically (at most one ascent, counting the wrap)."""
    L = len(positions)
    if L < 3:
        return False
    ascents = sum(1 for i in range(L) if positions[i - 1] < positions[i])
    return ascents > 1


def sigma_pi_inv(pibar: ExtendedCycle) -> SigmaPiInv:
    return SigmaPiInv(decompose(_spi_table(pibar)), pibar)


def c_odd_count(s: SigmaPiInv | CyclePerm) -> int:
    """Odd-length cycles, 1-cycles included."""
    cycles = s.cycles
    return sum(1 for c in cycles if len(c) % 2 == 1)


def three_norm(s: SigmaPiInv) -> int:
    return (s.size - c_odd_count(s)) // 2


def lower_bound(pi: Permutation) -> int:
    return three_norm(sigma_pi_inv(extend(pi)))


def is_applicable(t: ThreeCycle, pibar: ExtendedCycle) -> bool:
    pos = pibar.position_index
    return cyclic_increasing(pos[t.a], pos[t.b], pos[t.c], len(pos))


def _require_applicable(t, pibar):
    if not is_applicable(t, pibar):
        raise NotApplicable(f"{t} is not applicable to {pibar}")


def apply_3cycle(t: ThreeCycle, pibar: ExtendedCycle) -> ExtendedCycle:
    """The (n+1)-cycle ``t * pibar``."""
    _require_applicable(t, pibar)
    st = State(pibar.seq, range(len(pibar.seq)))
    st.apply(t.a, t.b, t.c)
    return ExtendedCycle.from_sequence(st.seq)


def to_rho(t: ThreeCycle, pibar: ExtendedCycle) -> TranspositionDesc:
    _require_applicable(t, pibar)
    return TranspositionDesc(*rho_from_positions(pibar.position_index, t.a, t.b, t.c))


def rho_from_positions(pos: Sequence[int], a: int, b: int, c: int) -> tuple[int, int, int]:
    """Block-swap indices for the applicable 3-cycle (a b c).

    Rotate (a b c) so the first symbol sits earliest in pibar; with positions
    p1 < p2 < p3 the move is rho(p1, p2, p3), except that when p1 is the dummy
    0 the equivalent cut is rho(p2, p3, n+1).
    """
    m = len(pos)
    ps = sorted((pos[a], pos[b], pos[c]))
    p1, p2, p3 = ps
    if p1 == 0:
        return p2, p3, m
    return p1, p2, p3


def move_type(t: ThreeCycle, pibar: ExtendedCycle) -> int:
    """Change in c_odd(spi) caused by applying ``t``: -2, 0 or +2."""
    _require_applicable(t, pibar)
    st = State.from_pibar(pibar)
    return st.delta(t.a, t.b, t.c)


# -- mutable engine -------------------------------------------------------


class State:
    """Cyclic order ``seq`` of symbols ``0..m-1`` and a permutation ``alpha``.

    ``seq[0]`` is an anchor that never moves (0 for real permutations), so
    ``seq[1:]`` reads as the one-line permutation.  ``alpha`` is kept in
    canonical cycle form in ``cycles`` together with per-symbol lookup arrays
    ``cid`` (cycle number) and ``cidx`` (index inside the cycle).
    """

    __slots__ = ("seq", "pos", "alpha", "cycles", "cid", "cidx")

    def __init__(self, seq: Iterable[int], alpha: Iterable[int]):
        self.seq = list(seq)
        self.alpha = list(alpha)
        m = len(self.seq)
        self.pos = [0] * m
        for i, x in enumerate(self.seq):
            self.pos[x] = i
        self._refresh()

    @classmethod
    def from_permutation(cls, pi: Permutation | Sequence[int]) -> "State":
        image = pi.image if isinstance(pi, Permutation) else tuple(pi)
        seq = (0,) + tuple(image)
        m = len(seq)
        pos = [0] * m
        for i, x in enumerate(seq):
            pos[x] = i
        alpha = [(seq[pos[x] - 1] + 1) % m for x in range(m)]
        return cls(seq, alpha)

    @classmethod
    def from_pibar(cls, pibar: ExtendedCycle) -> "State":
        return cls(pibar.seq, _spi_table(pibar))

    def copy(self) -> "State":
        new = State.__new__(State)
        new.seq = self.seq[:]
        new.pos = self.pos[:]
        new.alpha = self.alpha[:]
        new.cycles = self.cycles  # rebuilt, never mutated in place
        new.cid = self.cid
        new.cidx = self.cidx
        return new

    def _refresh(self):
        alpha = self.alpha
        m = len(alpha)
        cid = [-1] * m
        cidx = [0] * m
        cycles = []
        for start in range(m - 1, -1, -1):
            if cid[start] >= 0:
                continue
            k = len(cycles)
            cyc = []
            x = start
            while cid[x] < 0:
                cid[x] = k
                cidx[x] = len(cyc)
                cyc.append(x)
                x = alpha[x]
            cycles.append(cyc)
        self.cycles = cycles
        self.cid = cid
        self.cidx = cidx

    # -- queries ------------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.seq)

    def key(self):
        return tuple(self.seq), tuple(self.alpha)

    def permutation(self) -> Permutation:
        return Permutation(tuple(self.seq[1:]))

    def c_odd(self) -> int:
        return sum(1 for c in self.cycles if len(c) & 1)

    def norm(self) -> int:
        return (len(self.seq) - self.c_odd()) // 2

    def is_identity(self) -> bool:
        return len(self.cycles) == len(self.seq)

    def nontrivial(self) -> list[list[int]]:
        return [c for c in self.cycles if len(c) > 1]

    def applicable(self, a: int, b: int, c: int) -> bool:
        pos = self.pos
        return cyclic_increasing(pos[a], pos[b], pos[c], len(pos))

    def orient(self, x: int, y: int, z: int) -> tuple[int, int, int]:
        """The applicable cyclic orientation of three distinct symbols."""
        return (x, y, z) if self.applicable(x, y, z) else (x, z, y)

    def is_oriented(self, cyc: Sequence[int]) -> bool:
        pos = self.pos
        return _is_oriented([pos[x] for x in cyc])

    def delta(self, a: int, b: int, c: int) -> int:
        """Change of c_odd when the applicable 3-cycle (a b c) is applied."""
        cid, cidx, cycles = self.cid, self.cidx, self.cycles
        ga, gb, gc = cid[a], cid[b], cid[c]
        if ga == gb == gc:
            L = len(cycles[ga])
            ia, ib, ic = cidx[a], cidx[b], cidx[c]
            d1 = (ib - ia) % L
            if d1 < (ic - ia) % L:
                # same cyclic order in the cycle: it breaks into three pieces
                d2 = (ic - ib) % L
                d3 = L - d1 - d2
                return (d1 & 1) + (d2 & 1) + (d3 & 1) - (L & 1)
            return 0
        if ga == gb or gb == gc or gc == ga:
            if ga == gb:
                x, y, g, h = a, b, ga, gc
            elif gb == gc:
                x, y, g, h = b, c, gb, ga
            else:
                x, y, g, h = c, a, gc, gb
            Lg, Lh = len(cycles[g]), len(cycles[h])
            l1 = (cidx[y] - cidx[x]) % Lg
            l2 = Lg + Lh - l1
            return (l1 & 1) + (l2 & 1) - (Lg & 1) - (Lh & 1)
        La, Lb, Lc = len(cycles[ga]), len(cycles[gb]), len(cycles[gc])
        return ((La + Lb + Lc) & 1) - (La & 1) - (Lb & 1) - (Lc & 1)

    def rho(self, a: int, b: int, c: int) -> tuple[int, int, int]:
        return rho_from_positions(self.pos, a, b, c)

    # -- mutation -----------------------------------------------------------

    def apply(self, a: int, b: int, c: int) -> None:
        """Apply the applicable 3-cycle (a b c) in place."""
        pos, seq = self.pos, self.seq
        p1, p2, p3 = sorted((pos[a], pos[b], pos[c]))
        if p1 == 0:
            new = seq[:p2] + seq[p3:] + seq[p2:p3]
            lo = p2
        else:
            new = seq[:p1] + seq[p2:p3] + seq[p1:p2] + seq[p3:]
            lo = p1
        hi = len(seq) if p1 == 0 else p3
        for i in range(lo, hi):
            pos[new[i]] = i
        self.seq = new
        al = self.alpha
        al[a], al[b], al[c] = al[c], al[a], al[b]
        self._refresh()

    def apply_rho(self, i: int, j: int, k: int) -> tuple[int, int, int]:
        """Apply rho(i, j, k); returns the equivalent 3-cycle."""
        seq = self.seq
        m = len(seq)
        a, b = seq[i], seq[j]
        c = seq[k] if k < m else seq[0]
        self.apply(a, b, c)
        return a, b, c
