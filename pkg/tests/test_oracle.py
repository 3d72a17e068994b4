import itertools

import numpy as np
import pytest

from sbtsort.errors import ResourceLimit, SearchTimeout
from sbtsort.oracle import (
    build_table,
    exact_distance,
    ida_star,
    load_table,
    rank,
    rank_many,
    save_table,
)
from sbtsort.perm_core import Permutation
from conftest import P


def test_rank_is_a_bijection():
    perms = list(itertools.permutations(range(1, 6)))
    ranks = [rank(p) for p in perms]
    assert sorted(ranks) == list(range(120))
    assert ranks == sorted(ranks)  # lexicographic order
    assert rank_many(np.array(perms)).tolist() == ranks


def test_small_tables():
    assert build_table(4).diameter == 3
    t = build_table(5)
    assert t[(1, 2, 3, 4, 5)] == 0
    assert t.histogram()[0] == 1
    assert sum(t.histogram()) == 120


def test_reverse_permutations(tables):
    # the reverse of 1..n needs floor(n/2) + 1 block swaps for n >= 3
    for n in range(3, 9):
        assert tables(n)[tuple(range(n, 0, -1))] == n // 2 + 1


def test_table_against_ida(tables):
    t = tables(6)
    for image in itertools.permutations(range(1, 7)):
        assert ida_star(Permutation(image)) == t[image]


def test_cap():
    with pytest.raises(ResourceLimit):
        build_table(12, allow_large=True)
    with pytest.raises(ResourceLimit):
        build_table(11)


def test_save_load(tmp_path):
    t = build_table(5)
    path = tmp_path / "t5.bin"
    save_table(t, path)
    raw = path.read_bytes()
    assert raw[:4] == b"TDPT" and len(raw) == 16 + 120
    u = load_table(path)
    assert u.n == 5 and (u.dist == t.dist).all()
    bad = tmp_path / "bad.bin"
    bad.write_bytes(b"XXXX" + raw[4:])
    with pytest.raises(ValueError):
        load_table(bad)
    short = tmp_path / "short.bin"
    short.write_bytes(raw[:-1])
    with pytest.raises(ValueError):
        load_table(short)


@pytest.mark.parametrize("text, want", [
    ("5 4 3 2 1 6 11 10 9 8 7", 6),
    ("4 8 3 7 2 6 1 5 9 14 13 12 11 10", 7),
    ("1 2 3", 0),
])
def test_exact_distance(text, want):
    assert exact_distance(P(text)) == want


def test_exact_distance_uses_table(tables):
    assert exact_distance(P("4 3 2 1 8 7 6 5"), table=tables(8)) == 4


def test_ida_timeout():
    with pytest.raises(SearchTimeout):
        ida_star(P("13 12 11 10 9 8 7 6 5 4 3 2 1 14 20 19 18 17 16 15"), timeout=0.01)
