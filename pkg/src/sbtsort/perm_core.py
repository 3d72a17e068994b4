"""Permutation algebra on small finite symbol sets.

Two representations live here:

* :class:`Permutation` -- the one-line array ``[pi_1 ... pi_n]`` over ``1..n``.
  This is the genome being sorted; transpositions (block swaps) act on it.
* :class:`CyclePerm` -- a bijection of ``{0 .. m-1}`` stored as disjoint
  cycles, 1-cycles included.  All of the algebraic machinery works on these.

Canonical cycle form: every cycle is rotated to start at its largest symbol
and cycles are listed by that leading symbol, largest first.  Two CyclePerms
are equal iff their canonical forms are equal.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GroundSetMismatch, IndexViolation

__all__ = [
    "Permutation",
    "TranspositionDesc",
    "CyclePerm",
    "apply_transposition",
    "compose",
    "inverse",
    "decompose",
    "parity",
    "identity_cycles",
]


@dataclass(frozen=True)
class Permutation:
    """One-line permutation ``[pi_1 ... pi_n]`` of ``{1..n}``."""

    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(v) for v in self.image)
        object.__setattr__(self, "image", image)
        if sorted(image) != list(range(1, len(image) + 1)):
            raise ValueError(f"not a permutation of 1..{len(image)}: {list(image)}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse whitespace/comma separated integers, brackets optional."""
        tokens = re.findall(r"-?\d+", text)
        if not tokens:
            raise ValueError(f"no integers in {text!r}")
        return cls(tuple(int(t) for t in tokens))

    @property
    def n(self) -> int:
        return len(self.image)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.image, 1))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.image, 1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """Function composition ``x -> self(other(x))``."""
        if other.n != self.n:
            raise ValueError("length mismatch")
        return Permutation(tuple(self.image[v - 1] for v in other.image))

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(self.image)

    def __getitem__(self, i):
        return self.image[i]

    def __str__(self):
        return " ".join(map(str, self.image))


@dataclass(frozen=True, order=True)
class TranspositionDesc:
    """The block swap rho(i, j, k); indices are 1-based, ``i < j < k <= n+1``."""

    i: int
    j: int
    k: int

    def __post_init__(self):
        if not self.i < self.j < self.k:
            raise IndexViolation(f"need i < j < k, got {self}")

    def check(self, n: int) -> None:
        if self.i < 1 or self.k > n + 1:
            raise IndexViolation(f"{self} out of range for n={n}")

    def inverse(self) -> "TranspositionDesc":
        """The descriptor that swaps the two blocks back."""
        return TranspositionDesc(self.i, self.i + (self.k - self.j), self.k)

    def __str__(self):
        return f"rho({self.i},{self.j},{self.k})"


def apply_transposition(pi: Permutation, t: TranspositionDesc) -> Permutation:
    """Move the block ``pi_i..pi_{j-1}`` to just after ``pi_{k-1}``."""
    t.check(pi.n)
    a = pi.image
    i, j, k = t.i - 1, t.j - 1, t.k - 1
    return Permutation(a[:i] + a[j:k] + a[i:j] + a[k:])


# -- cycle form -------------------------------------------------------------


def _canonical_cycles(table: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    m = len(table)
    seen = [False] * m
    cycles = []
    for start in range(m - 1, -1, -1):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = table[x]
        if x != start:
            raise ValueError("function table is not a bijection")
        # walking from the largest unseen symbol downwards means ``start`` is
        # already the maximum of its cycle
        cycles.append(tuple(cyc))
    return tuple(cycles)


@dataclass(frozen=True)
class CyclePerm:
    """A permutation of ``{0 .. ground_size-1}`` in canonical disjoint-cycle form."""

    ground_size: int
    cycles: tuple[tuple[int, ...], ...]

    @classmethod
    def from_table(cls, table: Sequence[int]) -> "CyclePerm":
        table = list(table)
        if sorted(table) != list(range(len(table))):
            raise ValueError("function table is not a bijection")
        return cls(len(table), _canonical_cycles(table))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], ground_size: int) -> "CyclePerm":
        """Build from (possibly partial, non-canonical) cycle lists."""
        table = list(range(ground_size))
        seen = set()
        for cyc in cycles:
            cyc = list(cyc)
            for x in cyc:
                if x in seen or not 0 <= x < ground_size:
                    raise ValueError(f"bad or repeated symbol {x}")
                seen.add(x)
            for x, y in zip(cyc, cyc[1:] + cyc[:1]):
                table[x] = y
        return cls.from_table(table)

    @classmethod
    def parse(cls, text: str, ground_size: int | None = None) -> "CyclePerm":
        """Parse ``"(0 11 13)(1 7 4)"``; commas are accepted as separators."""
        groups = re.findall(r"\(([^)]*)\)", text)
        cycles = [[int(t) for t in re.findall(r"\d+", g)] for g in groups]
        if ground_size is None:
            ground_size = 1 + max((max(c) for c in cycles if c), default=-1)
        return cls.from_cycles(cycles, ground_size)

    @classmethod
    def identity(cls, ground_size: int) -> "CyclePerm":
        return cls.from_table(range(ground_size))

    @property
    def table(self) -> tuple[int, ...]:
        out = [0] * self.ground_size
        for cyc in self.cycles:
            for x, y in zip(cyc, cyc[1:] + cyc[:1]):
                out[x] = y
        return tuple(out)

    def __call__(self, x: int) -> int:
        return self.table[x]

    @property
    def support(self) -> frozenset[int]:
        return frozenset(x for c in self.cycles if len(c) > 1 for x in c)

    def nontrivial(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c for c in self.cycles if len(c) > 1)

    def is_identity(self) -> bool:
        return all(len(c) == 1 for c in self.cycles)

    def __mul__(self, other: "CyclePerm") -> "CyclePerm":
        return compose(self, other)

    def __str__(self):
        parts = self.nontrivial()
        if not parts:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in parts)

    def full_str(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles)


def identity_cycles(ground_size: int) -> CyclePerm:
    return CyclePerm.identity(ground_size)


def decompose(table: Sequence[int]) -> CyclePerm:
    """Canonical disjoint-cycle decomposition of a bijection given as a table."""
    return CyclePerm.from_table(table)


def compose(a: CyclePerm, b: CyclePerm) -> CyclePerm:
    """``x -> a(b(x))``."""
    if a.ground_size != b.ground_size:
        raise GroundSetMismatch(f"{a.ground_size} != {b.ground_size}")
    ta, tb = a.table, b.table
    return CyclePerm.from_table([ta[tb[x]] for x in range(a.ground_size)])


def inverse(a: CyclePerm) -> CyclePerm:
    return CyclePerm(a.ground_size, _canonical_cycles(_invert(a.table)))


def _invert(table):
    out = [0] * len(table)
    for x, y in enumerate(table):
        out[y] = x
    return out


def parity(a: CyclePerm) -> str:
    """``"even"`` or ``"odd"``; a k-cycle contributes k-1 two-cycles."""
    return "even" if sum(len(c) - 1 for c in a.cycles) % 2 == 0 else "odd"
