import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from beliefpairs.errors import InvariantViolation, UnknownAtom, VocabularyMismatch, VocabularyTooLarge
from beliefpairs.lattice import (
    BeliefPair,
    Vocabulary,
    WorldSet,
    bottom_kn,
    enumerate_belief_pairs,
    enumerate_world_sets,
    is_complete,
    is_consistent,
    join_kn,
    leq_kn,
    leq_w,
    lfp,
    meet_kn,
)

V1 = Vocabulary(("p",))
V2 = Vocabulary(("p", "q"))
ALL1, NONE1 = WorldSet.all(V1), WorldSet.empty(V1)


def ws(v, *interps):
    return WorldSet.of(v, interps)


class TestVocabulary:
    def test_atom_masks(self):
        assert V2.atom_mask("p") == 0b1010
        assert V2.atom_mask("q") == 0b1100

    def test_masks_match_interpretation_bits(self):
        v = Vocabulary(("a", "b", "c", "d"))
        for k, a in enumerate(v.atoms):
            for i in range(v.size):
                assert bool(v.atom_mask(a) >> i & 1) == bool(i >> k & 1)

    def test_show_interpretation(self):
        assert V2.show_interpretation(0) == "{}"
        assert V2.show_interpretation(3) == "{p, q}"

    def test_rejects_duplicates_and_bad_names(self):
        with pytest.raises(ValueError):
            Vocabulary(("p", "p"))
        with pytest.raises(ValueError):
            Vocabulary(("P",))
        with pytest.raises(ValueError):
            Vocabulary(("true",))

    def test_cap(self):
        with pytest.raises(VocabularyTooLarge):
            Vocabulary(tuple(f"a{k}" for k in range(21)))

    def test_unknown_atom(self):
        with pytest.raises(UnknownAtom):
            V1.index("q")

    def test_mixed_vocabularies(self):
        with pytest.raises(VocabularyMismatch):
            BeliefPair(ALL1, WorldSet.all(V2))


class TestOrders:
    def test_leq_w_examples(self):
        assert leq_w(ALL1, NONE1)
        assert leq_w(ws(V1, 1), ws(V1, 1))
        assert not leq_w(ws(V1, 0), ws(V1, 1))

    def test_leq_kn_examples(self):
        for b in enumerate_belief_pairs(V1):
            assert leq_kn(BeliefPair(ALL1, NONE1), b)
            assert leq_kn(b, b)
        a, n = BeliefPair(ALL1, ALL1), BeliefPair(NONE1, NONE1)
        assert not leq_kn(a, n) and not leq_kn(n, a)

    def test_consistency(self):
        assert is_consistent(BeliefPair(ALL1, NONE1)) and not is_complete(BeliefPair(ALL1, NONE1))
        q = ws(V1, 1)
        assert is_consistent(BeliefPair(q, q)) and is_complete(BeliefPair(q, q))
        assert not is_consistent(BeliefPair(ws(V1, 0), ws(V1, 1)))

    def test_bottom(self):
        assert bottom_kn(V1) == BeliefPair(WorldSet(V1, 0b11), WorldSet(V1, 0))
        assert bottom_kn(V2) == BeliefPair(WorldSet(V2, 0b1111), WorldSet(V2, 0))
        assert all(leq_kn(bottom_kn(V2), b) for b in enumerate_belief_pairs(V2))

    def test_enumeration_counts(self):
        assert len(list(enumerate_world_sets(V1))) == 4
        assert len(list(enumerate_world_sets(V2))) == 16
        assert len(list(enumerate_belief_pairs(V2))) == 256
        assert sum(1 for _ in enumerate_world_sets(Vocabulary(("p", "q", "r", "s")))) == 65536

    def test_enumeration_caps(self):
        with pytest.raises(VocabularyTooLarge):
            next(enumerate_world_sets(Vocabulary(tuple("pqrst"))))
        with pytest.raises(VocabularyTooLarge):
            next(enumerate_belief_pairs(Vocabulary(tuple("pqrs"))))


@pytest.mark.parametrize("v", [V1, V2])
def test_world_order_is_partial_order(v):
    sets = list(enumerate_world_sets(v))
    for a in sets:
        assert leq_w(a, a)
        for b in sets:
            if leq_w(a, b) and leq_w(b, a):
                assert a == b
            for c in sets:
                if leq_w(a, b) and leq_w(b, c):
                    assert leq_w(a, c)


def test_knowledge_order_is_partial_order():
    pairs = list(enumerate_belief_pairs(V1))
    for a, b, c in itertools.product(pairs, repeat=3):
        if leq_kn(a, b) and leq_kn(b, a):
            assert a == b
        if leq_kn(a, b) and leq_kn(b, c):
            assert leq_kn(a, c)


def test_knowledge_order_antisymmetric_n2():
    pairs = list(enumerate_belief_pairs(V2))
    for a in pairs:
        assert leq_kn(a, a)
        for b in pairs:
            if a != b:
                assert not (leq_kn(a, b) and leq_kn(b, a))


def test_meets_and_joins_n2():
    pairs = list(enumerate_belief_pairs(V2))
    for a in pairs:
        for b in pairs:
            m, j = meet_kn(a, b), join_kn(a, b)
            assert leq_kn(m, a) and leq_kn(m, b)
            assert leq_kn(a, j) and leq_kn(b, j)
            assert meet_kn(a, j) == a and join_kn(a, m) == a  # absorption
    # greatest lower bound: check against brute force on a sample
    for a, b in itertools.islice(itertools.product(pairs, repeat=2), 0, None, 97):
        lower = [c for c in pairs if leq_kn(c, a) and leq_kn(c, b)]
        upper = [c for c in pairs if leq_kn(a, c) and leq_kn(b, c)]
        assert all(leq_kn(c, meet_kn(a, b)) for c in lower)
        assert all(leq_kn(join_kn(a, b), c) for c in upper)


@given(st.integers(0, 15), st.integers(0, 15))
def test_world_set_ops(a, b):
    x, y = WorldSet(V2, a), WorldSet(V2, b)
    assert set(x & y) == set(x) & set(y)
    assert set(x | y) == set(x) | set(y)
    assert x.issubset(y) == set(x).issubset(set(y))
    assert len(x) == len(set(x))


def test_world_set_show():
    assert ws(V2, 0, 1).show() == "[{}, {p}]"
    assert BeliefPair(ws(V1, 0, 1), NONE1).show() == "P=[{}, {p}], S=[]"


def test_lfp_counts_and_cap():
    fix = lfp(lambda x: min(x + 1, 3), 0, 10)
    assert fix.value == 3 and fix.iterations == 4
    with pytest.raises(InvariantViolation):
        lfp(lambda x: x + 1, 0, 5)
