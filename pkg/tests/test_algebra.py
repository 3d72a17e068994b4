import itertools

import pytest

from sbtsort.algebra import (
    ExtendedCycle,
    State,
    ThreeCycle,
    apply_3cycle,
    c_odd_count,
    extend,
    is_applicable,
    lower_bound,
    move_type,
    sigma_pi_inv,
    three_norm,
    to_rho,
)
from sbtsort.errors import NotApplicable
from sbtsort.perm_core import CyclePerm, Permutation, TranspositionDesc, apply_transposition
from conftest import P

FIX14 = "4 8 3 7 2 6 1 5 9 14 13 12 11 10"
EX1 = "6 5 3 2 1 8 7 4 9 14 13 12 11 10"


def spi(text):
    return sigma_pi_inv(extend(P(text)))


def test_extend():
    assert extend(P("4 3 2 1 8 7 6 5")).cycle == CyclePerm.parse("(0 4 3 2 1 8 7 6 5)")
    assert extend(Permutation.identity(5)).seq == (0, 1, 2, 3, 4, 5)
    assert extend(P(FIX14)).seq == (0, 4, 8, 3, 7, 2, 6, 1, 5, 9, 14, 13, 12, 11, 10)


@pytest.mark.parametrize("text, cycles", [
    (FIX14, "(0 11 13)(1 7 4)(2 8 5)(3 9 6)(10 12 14)"),
    (EX1, "(0 11 13)(1 3 6)(2 4 8)(5 7 9)(10 12 14)"),
])
def test_sigma_pi_inv(text, cycles):
    assert spi(text).value == CyclePerm.parse(cycles, 15)


def test_sigma_pi_inv_identity():
    s = spi("1 2 3 4")
    assert s.is_identity()
    assert len(s.value.cycles) == 5


def test_c_odd_and_norm():
    assert c_odd_count(spi("1 2 3 4 5 6 7 8")) == 9
    assert c_odd_count(spi(FIX14)) == 5
    assert c_odd_count(CyclePerm.parse("(0 4 3 7 6 5)(1 8)(2)", 9)) == 1
    assert three_norm(spi("4 3 2 1 8 7 6 5")) == 4
    assert three_norm(spi("1 2 3")) == 0
    assert three_norm(spi(FIX14)) == 5


@pytest.mark.parametrize("text, want", [("4 3 2 1 8 7 6 5", 4), ("3 6 2 5 1 4 10 9 8 7", 5), ("1 2 3", 0)])
def test_lower_bound(text, want):
    assert lower_bound(P(text)) == want


def test_applicability_and_application():
    pibar = extend(P("4 3 2 1 8 7 6 5"))
    t = ThreeCycle.parse("(0 2 7)")
    assert is_applicable(t, pibar)
    assert not is_applicable(ThreeCycle.parse("(0 1 2)"), pibar)
    assert apply_3cycle(t, pibar).cycle == CyclePerm.parse("(0 4 3 7 6 5 2 1 8)")
    with pytest.raises(NotApplicable):
        apply_3cycle(ThreeCycle.parse("(0 1 2)"), pibar)
    # any three consecutive symbols of pibar are applicable
    for i in range(len(pibar.seq)):
        trip = [pibar.seq[(i + d) % len(pibar.seq)] for d in range(3)]
        assert is_applicable(ThreeCycle(*trip), pibar)


def test_to_rho():
    pibar = extend(P(FIX14))
    assert to_rho(ThreeCycle.parse("(1 4 7)"), pibar) == TranspositionDesc(1, 4, 7)
    pi = P("4 3 2 1 8 7 6 5")
    rho = to_rho(ThreeCycle.parse("(0 2 7)"), extend(pi))
    assert apply_transposition(pi, rho) == P("4 3 7 6 5 2 1 8")
    # the matching descriptor is unique among all C(9, 3)
    hits = [d for d in itertools.combinations(range(1, 10), 3)
            if apply_transposition(pi, TranspositionDesc(*d)) == P("4 3 7 6 5 2 1 8")]
    assert [TranspositionDesc(*h) for h in hits] == [rho]


def test_move_type_three_cycle_of_spi():
    pibar = extend(P(FIX14))
    for cyc in spi(FIX14).value.nontrivial():
        a, b, c = cyc
        t = ThreeCycle(a, b, c)
        if is_applicable(t, pibar):
            assert move_type(t, pibar) == 2


def test_move_type_exhaustive_small():
    # move_type agrees with the c_odd difference for every applicable triple, n <= 5
    for n in range(2, 6):
        for image in itertools.permutations(range(1, n + 1)):
            pibar = extend(Permutation(image))
            before = c_odd_count(sigma_pi_inv(pibar))
            for trip in itertools.permutations(range(n + 1), 3):
                t = ThreeCycle(*trip)
                if not is_applicable(t, pibar):
                    continue
                after = c_odd_count(sigma_pi_inv(apply_3cycle(t, pibar)))
                assert move_type(t, pibar) == after - before


def test_state_matches_functional_layer():
    for image in itertools.permutations(range(1, 7)):
        pi = Permutation(image)
        st = State.from_permutation(pi)
        assert st.norm() == lower_bound(pi)
        for x, y, z in itertools.combinations(range(7), 3):
            a, b, c = st.orient(x, y, z)
            t = ThreeCycle(a, b, c)
            nxt = st.copy()
            nxt.apply(a, b, c)
            assert nxt.permutation() == apply_transposition(pi, to_rho(t, extend(pi)))
            assert st.delta(a, b, c) == move_type(t, extend(pi))
            break  # one triple per permutation keeps this quick


def test_state_apply_rho_roundtrip():
    pi = P("3 6 2 5 1 4 10 9 8 7")
    st = State.from_permutation(pi)
    st.apply_rho(6, 8, 11)
    assert st.permutation() == P("3 6 2 5 1 9 8 7 4 10")


def test_extended_cycle_from_sequence_rotates():
    e = ExtendedCycle.from_sequence([2, 1, 0, 3])
    assert e.seq[0] == 0
    assert e.permutation() == P("3 2 1")
