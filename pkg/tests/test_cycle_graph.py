import itertools
import random

from sbtsort import cycle_graph as cg
from sbtsort.perm_core import CyclePerm, Permutation
from conftest import P

EX4 = "6 5 3 2 1 8 7 4 9 14 13 12 11 10"


def _same_cycle(c, d):
    """Equal as cyclic sequences, in either direction."""
    if len(c) != len(d):
        return False
    k = len(c)
    rots = {tuple(c[i:] + c[:i]) for i in range(k)}
    r = list(reversed(c))
    rots |= {tuple(r[i:] + r[:i]) for i in range(k)}
    return tuple(d) in rots


def test_reverse_blocks_single_cycle():
    g = cg.build(P("4 3 2 1 8 7 6 5"))
    assert len(g.cycles) == 1
    assert _same_cycle(list(g.cycles[0]), [9, 6, 8, 2, 4, 1, 3, 5, 7])


def test_identity_graph():
    g = cg.build(Permutation.identity(6))
    assert len(g.cycles) == 7
    assert all(len(c) == 1 for c in g.cycles)
    assert g.c_odd() == 7


def test_example_cycles_and_orientation():
    g = cg.build(P(EX4))
    assert set(g.cycles) == {(5, 3, 1), (8, 6, 4), (9, 2, 7), (14, 12, 10), (15, 13, 11)}
    assert cg.is_oriented((9, 2, 7))
    assert not cg.is_oriented((5, 3, 1))
    assert not cg.is_oriented((4,))
    assert cg.intersects((5, 3, 1), (8, 6, 4))
    assert cg.interleaves((15, 13, 11), (14, 12, 10))
    assert not cg.intersects((5, 3, 1), (5, 3, 1))
    assert not cg.interleaves((5, 3, 1), (5, 3, 1))


def test_correspondence_example():
    pi = P("4 8 3 7 2 6 1 5 9 14 13 12 11 10")
    assert cg.to_algebraic(cg.build(pi)) == CyclePerm.parse("(0 11 13)(1 7 4)(2 8 5)(3 9 6)(10 12 14)", 15)
    assert cg.correspondence_check(pi)
    assert cg.correspondence_check(Permutation.identity(5))


def test_correspondence_s6_and_random():
    for image in itertools.permutations(range(1, 7)):
        assert cg.correspondence_check(Permutation(image))
    rng = random.Random(5)
    for n in (30, 101):
        a = list(range(1, n + 1))
        rng.shuffle(a)
        assert cg.correspondence_check(Permutation(tuple(a)))


def test_to_dot():
    text = cg.to_dot(cg.build(P("2 1")))
    assert text.startswith("digraph")
    assert text.count("style=bold") == 3
    assert text.count("color=gray") == 3
