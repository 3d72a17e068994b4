from hypothesis import given, settings
from hypothesis import strategies as st

from sbtsort.algebra import State, ThreeCycle, apply_3cycle, extend, lower_bound, to_rho
from sbtsort.cycle_graph import correspondence_check
from sbtsort.perm_core import Permutation, apply_transposition, compose, decompose, inverse
from sbtsort.solver import diameter_bound, f, sbt1375


def perms(lo=1, hi=40):
    return st.integers(lo, hi).flatmap(lambda n: st.permutations(range(1, n + 1))).map(
        lambda xs: Permutation(tuple(xs)))


@settings(max_examples=150, deadline=None)
@given(perms())
def test_solver_sorts_within_bounds(pi):
    r = sbt1375(pi)
    assert r.replay().is_identity()
    norm = State.from_permutation(pi).norm()
    assert lower_bound(pi) <= r.distance <= f(norm)
    assert r.distance <= diameter_bound(pi.n)


@settings(max_examples=150, deadline=None)
@given(perms(3, 30), st.data())
def test_three_cycle_simulates_block_swap(pi, data):
    pibar = extend(pi)
    m = pi.n + 1
    p = sorted(data.draw(st.lists(st.integers(0, m - 1), min_size=3, max_size=3, unique=True)))
    t = ThreeCycle(*(pibar.seq[i] for i in p))
    after = apply_3cycle(t, pibar)
    assert after.permutation() == apply_transposition(pi, to_rho(t, pibar))


@settings(max_examples=150, deadline=None)
@given(perms(1, 60))
def test_correspondence(pi):
    assert correspondence_check(pi)


@settings(max_examples=100, deadline=None)
@given(st.permutations(range(9)), st.permutations(range(9)))
def test_group_laws(a, b):
    x, y = decompose(a), decompose(b)
    assert compose(x, inverse(x)).is_identity()
    assert inverse(compose(x, y)) == compose(inverse(y), inverse(x))
