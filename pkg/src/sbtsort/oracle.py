"""Exact transposition distances.

Small n: a breadth-first table over all of S_n, one byte per permutation,
indexed by Lehmer-code rank.  Larger single permutations: IDA* with the
3-norm lower bound as heuristic.
"""
from __future__ import annotations

import itertools
import math
import struct
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .algebra import State
from .errors import ResourceLimit, SearchTimeout
from .perm_core import Permutation

__all__ = [
    "DistanceTable",
    "build_table",
    "save_table",
    "load_table",
    "rank",
    "rank_many",
    "exact_distance",
    "ida_star",
    "DEFAULT_CAP",
]

MAGIC = b"TDPT"
VERSION = 1
_HEADER = struct.Struct("<4sIII")
DEFAULT_CAP = 10
HARD_CAP = 11
UNSEEN = 255


@dataclass(frozen=True)
class DistanceTable:
    n: int
    dist: np.ndarray  # uint8, length n!

    def __getitem__(self, pi: Permutation | Sequence[int]) -> int:
        image = pi.image if isinstance(pi, Permutation) else tuple(pi)
        if len(image) != self.n:
            raise ValueError(f"table is for n={self.n}, got length {len(image)}")
        return int(self.dist[rank(image)])

    @property
    def diameter(self) -> int:
        return int(self.dist.max())

    def histogram(self) -> list[int]:
        return np.bincount(self.dist).tolist()


def _weights(n: int) -> np.ndarray:
    return np.array([math.factorial(n - 1 - i) for i in range(n)], dtype=np.int64)


def rank(image: Sequence[int]) -> int:
    """Lehmer-code rank of a permutation of 1..n (identity has rank 0)."""
    n = len(image)
    r = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if image[j] < image[i])
        r += smaller * math.factorial(n - 1 - i)
    return r


def rank_many(P: np.ndarray) -> np.ndarray:
    """Ranks of the rows of ``P`` (any integer dtype)."""
    m, n = P.shape
    w = _weights(n)
    out = np.zeros(m, dtype=np.int64)
    for i in range(n - 1):
        c = (P[:, i + 1:] < P[:, i:i + 1]).sum(axis=1)
        out += c * w[i]
    return out


def _moves(n: int) -> np.ndarray:
    """Index arrays of every block swap rho(i, j, k) on length-n arrays."""
    rows = []
    for i, j, k in itertools.combinations(range(n + 1), 3):
        rows.append(list(range(i)) + list(range(j, k)) + list(range(i, j)) + list(range(k, n)))
    return np.array(rows, dtype=np.intp)


def build_table(n: int, allow_large: bool = False, chunk: int = 1 << 14) -> DistanceTable:
    """Breadth-first search from the identity over all block swaps."""
    cap = HARD_CAP if allow_large else DEFAULT_CAP
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise ResourceLimit(f"table for n={n} exceeds the cap of {cap}")
    total = math.factorial(n)
    dist = np.full(total, UNSEEN, dtype=np.uint8)
    dist[0] = 0
    moves = _moves(n)
    frontier = np.arange(1, n + 1, dtype=np.uint8)[None, :]
    d = 0
    while len(frontier):
        d += 1
        found = []
        for s in range(0, len(frontier), chunk):
            block = frontier[s:s + chunk]
            # every neighbour of every row: shape (rows * moves, n)
            nb = block[:, moves].reshape(-1, n)
            r = rank_many(nb)
            fresh = dist[r] == UNSEEN
            if not fresh.any():
                continue
            r, nb = r[fresh], nb[fresh]
            r, first = np.unique(r, return_index=True)
            dist[r] = d
            found.append(nb[first])
        frontier = np.concatenate(found) if found else np.empty((0, n), dtype=np.uint8)
    if (dist == UNSEEN).any():
        raise RuntimeError("breadth-first search left permutations unreached")
    return DistanceTable(n, dist)


def save_table(table: DistanceTable, path: str | Path) -> None:
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, table.n, 0))
        fh.write(table.dist.tobytes())


def load_table(path: str | Path) -> DistanceTable:
    with open(path, "rb") as fh:
        head = fh.read(_HEADER.size)
        if len(head) != _HEADER.size:
            raise ValueError("truncated table header")
        magic, version, n, _ = _HEADER.unpack(head)
        if magic != MAGIC:
            raise ValueError("not a distance table file")
        if version != VERSION:
            raise ValueError(f"unsupported table version {version}")
        data = np.frombuffer(fh.read(), dtype=np.uint8)
    if len(data) != math.factorial(n):
        raise ValueError(f"table body has {len(data)} entries, expected {math.factorial(n)}")
    return DistanceTable(n, data.copy())


# -- IDA* ---------------------------------------------------------------------


def ida_star(pi: Permutation, timeout: float | None = None) -> int:
    """Exact distance by iterative deepening on g + 3-norm."""
    start = State.from_permutation(pi)
    h0 = start.norm()
    if h0 == 0:
        return 0
    end = None if timeout is None else time.monotonic() + timeout
    syms = range(len(start.seq))
    combos = list(itertools.combinations(syms, 3))
    bound = h0
    counter = [0]

    while True:
        best_g: dict = {}

        def dfs(node: State, g: int) -> bool:
            h = node.norm()
            if h == 0:
                return True
            if g + h > bound:
                return False
            key = tuple(node.seq)
            prev = best_g.get(key)
            if prev is not None and prev <= g:
                return False
            best_g[key] = g
            counter[0] += 1
            if end is not None and counter[0] % 512 == 0 and time.monotonic() > end:
                raise SearchTimeout(f"no answer within {timeout}s", bound, None)
            slack = bound - g - h  # how many non-2-moves we can still afford
            twos, zeros, negs = [], [], []
            for u, v, w in combos:
                a, b, c = node.orient(u, v, w)
                dlt = node.delta(a, b, c)
                if dlt == 2:
                    twos.append((a, b, c))
                elif dlt == 0:
                    if slack >= 1:
                        zeros.append((a, b, c))
                elif slack >= 2:
                    negs.append((a, b, c))
            for t in itertools.chain(twos, zeros, negs):
                child = node.copy()
                child.apply(*t)
                if dfs(child, g + 1):
                    return True
            return False

        if dfs(start, 0):
            return bound
        bound += 1


_TABLES: dict[int, DistanceTable] = {}


def exact_distance(pi: Permutation | Sequence[int], table: DistanceTable | None = None,
                   timeout: float | None = None) -> int:
    """Table lookup when a table for this n is given or registered, else IDA*."""
    if not isinstance(pi, Permutation):
        pi = Permutation(tuple(pi))
    if table is not None and table.n == pi.n:
        return table[pi]
    cached = _TABLES.get(pi.n)
    if cached is not None:
        return cached[pi]
    return ida_star(pi, timeout)


def register_table(table: DistanceTable) -> None:
    _TABLES[table.n] = table
