"""Cycle graph G(pi), used to cross-check the algebraic layer.

Vertices are signed integers ``+0, -1, +1, ..., -(n+1)``; since ``-0`` does not
exist we keep vertices as ``(sign, value)`` pairs.  Black edge ``i`` runs from
``-pi_i`` to ``+pi_{i-1}`` (with ``pi_0 = 0`` and ``pi_{n+1} = n+1``), gray
edges run from ``+i`` to ``-(i+1)``.  Cycles are reported as sequences of black
edge labels, rotated to start at the largest label.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .perm_core import CyclePerm, Permutation

__all__ = [
    "CycleGraph",
    "build",
    "is_oriented",
    "intersects",
    "interleaves",
    "to_algebraic",
    "correspondence_check",
    "c_odd",
    "to_dot",
]

Vertex = tuple[int, int]  # (sign, value), sign in {+1, -1}


@dataclass(frozen=True)
class CycleGraph:
    n: int
    extended: tuple[int, ...]  # (0, pi_1, ..., pi_n, n+1)
    black_edges: tuple[tuple[Vertex, Vertex], ...]
    gray_edges: tuple[tuple[Vertex, Vertex], ...]
    cycles: tuple[tuple[int, ...], ...]

    def c_odd(self) -> int:
        """Cycles with an odd number of black edges."""
        return sum(1 for c in self.cycles if len(c) % 2 == 1)


def _rotate_to_max(c: list[int]) -> tuple[int, ...]:
    k = c.index(max(c))
    return tuple(c[k:] + c[:k])


def build(pi: Permutation) -> CycleGraph:
    n = pi.n
    ext = (0,) + pi.image + (n + 1,)
    pos = [0] * (n + 2)
    for i, v in enumerate(ext):
        pos[v] = i
    black = tuple(((-1, ext[i]), (1, ext[i - 1])) for i in range(1, n + 2))
    gray = tuple(((1, i), (-1, i + 1)) for i in range(n + 1))

    # black edge i ends at +pi_{i-1}; the gray edge leads to -(pi_{i-1}+1),
    # which is where black edge pos(pi_{i-1}+1) starts
    nxt = [0] * (n + 2)
    for i in range(1, n + 2):
        nxt[i] = pos[ext[i - 1] + 1]
    seen = [False] * (n + 2)
    cycles = []
    for start in range(n + 1, 0, -1):
        if seen[start]:
            continue
        c = []
        x = start
        while not seen[x]:
            seen[x] = True
            c.append(x)
            x = nxt[x]
        cycles.append(_rotate_to_max(c))
    return CycleGraph(n, ext, black, gray, tuple(cycles))


def c_odd(pi: Permutation) -> int:
    return build(pi).c_odd()


def is_oriented(labels: Sequence[int]) -> bool:
    """A canonically labelled cycle is unoriented iff its labels decrease."""
    labels = _rotate_to_max(list(labels))
    return any(labels[s] < labels[s + 1] for s in range(len(labels) - 1))


def _pairs(c: Sequence[int]):
    L = len(c)
    return [(c[s], c[(s + 1) % L]) for s in range(L)] if L > 1 else []


def _triples(c: Sequence[int]):
    L = len(c)
    return [(c[s], c[(s + 1) % L], c[(s + 2) % L]) for s in range(L)] if L > 2 else []


def intersects(C: Sequence[int], D: Sequence[int]) -> bool:
    """Some consecutive pairs (a, b) of C and (e, f) of D satisfy
    a > e > b > f or e > a > f > b."""
    if set(C) & set(D):
        return False
    for a, b in _pairs(C):
        for e, f in _pairs(D):
            if a > e > b > f or e > a > f > b:
                return True
    return False


def interleaves(C: Sequence[int], D: Sequence[int]) -> bool:
    """Consecutive triples (a, b, c) of C and (d, e, f) of D with
    a > d > b > e > c > f or d > a > e > b > f > c."""
    if set(C) & set(D):
        return False
    for a, b, c in _triples(C):
        for d, e, f in _triples(D):
            if a > d > b > e > c > f or d > a > e > b > f > c:
                return True
    return False


def to_algebraic(g: CycleGraph) -> CyclePerm:
    """Relabel each black edge by the (unsigned) vertex its gray edge enters,
    with n+1 read as 0; the result should be sigma * pibar^-1."""
    m = g.n + 1
    ext = g.extended
    cycles = [[(ext[i - 1] + 1) % m for i in c] for c in g.cycles]
    return CyclePerm.from_cycles(cycles, m)


def correspondence_check(pi: Permutation) -> bool:
    from .algebra import extend, sigma_pi_inv

    return to_algebraic(build(pi)) == sigma_pi_inv(extend(pi)).value


def _vname(v: Vertex) -> str:
    return ("+" if v[0] > 0 else "-") + str(v[1])


def to_dot(g: CycleGraph) -> str:
    """Graphviz rendering; black edges bold, gray edges gray."""
    lines = ["digraph G {", "  rankdir=LR;"]
    order = []
    for v in g.extended:
        if v > 0:
            order.append((-1, v))
        if v <= g.n:
            order.append((1, v))
    for v in order:
        lines.append(f'  "{_vname(v)}";')
    for i, (u, v) in enumerate(g.black_edges, 1):
        lines.append(f'  "{_vname(u)}" -> "{_vname(v)}" [style=bold, label="{i}"];')
    for u, v in g.gray_edges:
        lines.append(f'  "{_vname(u)}" -> "{_vname(v)}" [color=gray];')
    lines.append("}")
    return "\n".join(lines) + "\n"
