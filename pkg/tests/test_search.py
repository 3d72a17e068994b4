import itertools

import pytest

from sbtsort import search as Q
from sbtsort import structures as S
from sbtsort.algebra import State, ThreeCycle
from sbtsort.errors import NotApplicable
from sbtsort.perm_core import Permutation
from conftest import P

FIX14 = "4 8 3 7 2 6 1 5 9 14 13 12 11 10"


def test_find_2move_oriented_three_cycle():
    st = State.from_permutation(P("2 3 1"))
    t = Q.find_2move(st)
    assert isinstance(t, ThreeCycle)
    assert st.delta(t.a, t.b, t.c) == 2
    assert Q.find_2move(State.from_permutation(Permutation.identity(4))) is None


def test_find_2move_even_cycles():
    # two 2-cycles of spi: a 2-move always joins them
    for image in itertools.permutations(range(1, 6)):
        st = State.from_permutation(Permutation(image))
        evens = [c for c in st.cycles if len(c) % 2 == 0]
        if len(evens) >= 2:
            t = Q._odd_pair_move(st, evens[0], evens[1])
            assert st.applicable(*t) and st.delta(*t) == 2


def test_two_move_matches_brute_force():
    for n in range(2, 7):
        for image in itertools.permutations(range(1, n + 1)):
            st = State.from_permutation(Permutation(image))
            brute = any(st.delta(*st.orient(*c)) == 2 for c in itertools.combinations(range(n + 1), 3))
            assert (Q.find_2move(st) is not None) == brute


def test_find_22_sequence():
    s = Q.find_22_sequence(State.from_permutation(P("4 3 2 1 8 7 6 5")))
    assert s is not None and s.x == 2 and s.y == 2
    assert Q.find_22_sequence(State.from_permutation(P("5 4 3 2 1 6 11 10 9 8 7"))) is None
    assert Q.find_22_sequence(State.from_permutation(Permutation.identity(3))) is None


def test_move_sequence_replay():
    st = State.from_permutation(P(FIX14))
    seq = Q.MoveSequence.replay(st, [(1, 4, 7), (2, 8, 5), (1, 4, 7), (3, 9, 6)])
    assert (seq.x, seq.y) == (4, 3)
    assert seq.is_ratio(11, 8)
    assert st.norm() == 5  # the original state is untouched
    with pytest.raises(NotApplicable):
        Q.MoveSequence.replay(st, [(0, 1, 2)])


def test_eleven_eighths_example():
    st = State.from_permutation(P(FIX14))
    g = S.Configuration.of([(1, 7, 4), (2, 8, 5), (3, 9, 6)], st)
    s = Q.find_eleven_eighths(g, st)
    assert s is not None and s.is_ratio(11, 8)
    assert (s.x, s.y) == (4, 3)
    after = Q.MoveSequence.replay(st, s.triples())
    assert after.y == 3


def test_bad_small_components_have_no_sequence():
    b = S.basic_configurations()
    assert Q.find_eleven_eighths(b["unoriented_interleaving_pair"]) is None
    assert Q.find_eleven_eighths(b["bad_oriented_5cycle"]) is None


def test_bad_oriented_5cycle_sequence():
    m, _ = S.basic_configurations()["bad_oriented_5cycle"].model()
    s = Q.seq_for_bad_oriented_5cycle(m.nontrivial()[0], m)
    assert (s.x, s.y) in {(3, 2), (1, 1)}
    st = m.copy()
    Q.MoveSequence.replay(st, s.triples(), inplace=True)
    assert st.norm() == m.norm() - s.y


def test_find_32_on_interleaving_pair():
    m, _ = S.basic_configurations()["unoriented_interleaving_pair"].model()
    s = Q.find_32_sequence(m)
    assert (s.x, s.y) == (3, 2)
    a, b, c = s.triples()[0]
    assert s.triples()[2] == (a, b, c)
    st = m.copy()
    Q.MoveSequence.replay(st, s.triples(), inplace=True)
    assert st.is_identity()


def test_find_32_prefers_a_2move():
    st = State.from_permutation(P("2 3 1"))
    s = Q.find_32_sequence(st)
    assert (s.x, s.y) == (1, 1)


def test_seq_43_long_oriented_cycle():
    st = State.from_permutation(P("2 4 6 1 3 5 7"))
    cyc = [c for c in st.nontrivial() if len(c) >= 7][0]
    assert st.is_oriented(cyc)
    s = Q.seq_43_for_even_oriented_ge7(cyc, st)
    assert s.is_ratio(4, 3) or (s.x, s.y) == (1, 1)


def test_need_tables():
    assert [Q.eleven_eighths_need(x) for x in (1, 2, 4, 8, 11)] == [1, 2, 3, 6, 8]
    assert Q.eleven_eighths_need(12) is None
    assert Q.three_halves_need(3) == 2


def test_audit_norm_two():
    rep = Q.audit_cases(2)
    assert rep.counterexamples == []
    assert rep.bad_small() == {"bad_oriented_5cycle": {2}, "unoriented_interleaving_pair": {2}}


def test_audit_three_no_counterexamples():
    rep = Q.audit_cases(3)
    assert rep.counterexamples == []


def test_union_of_bad_components_has_sequence():
    rep = Q.audit_cases(4)
    keys = {}
    for r in rep.records:
        if r.verdict == "bad_small":
            keys.setdefault(r.detail, r.key)

    def cfg(key):
        return S.Configuration(key, tuple(range(sum(len(s) for s in key))))

    pair = cfg(keys["unoriented_interleaving_pair"])
    neck = cfg(keys["necklace_4"])
    union = Q.disjoint_union([pair, pair, neck])
    assert S.config_norm(union) == 8
    s = Q.find_eleven_eighths(union, timeout=120)
    assert s is not None and s.is_ratio(11, 8)
    assert rep.union_failures == []
