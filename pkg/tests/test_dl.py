import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from beliefpairs import ael, dl
from beliefpairs.errors import InvariantViolation, TooManyDefaults
from beliefpairs.harness.generate import GenConfig, gen_default_theory
from beliefpairs.lattice import (
    BeliefPair,
    Vocabulary,
    WorldSet,
    enumerate_belief_pairs,
    enumerate_world_sets,
    is_complete,
    leq_kn,
)
from beliefpairs.syntax import TRUE, Atom, Default, DefaultTheory, konolige, parse_default_theory
from beliefpairs.truth import entails

V2 = Vocabulary(("p", "q"))
ALL = WorldSet.all(V2)
P_TRUE = WorldSet(V2, V2.atom_mask("p"))
Q_TRUE = WorldSet(V2, V2.atom_mask("q"))
PQP = parse_default_theory("D: p : q / p.")
FACT_P = parse_default_theory("W:\np")
EMPTY = DefaultTheory((), ())
EVEN = parse_default_theory("D:\ntrue : ~p / q.\ntrue : ~q / p.")


class TestApprox:
    def test_unreachable_prerequisite(self):
        assert dl.e_approx(PQP, BeliefPair(ALL, ALL)) == BeliefPair(ALL, ALL)

    def test_facts_only(self):
        for b in enumerate_belief_pairs(V2):
            assert dl.e_approx(FACT_P, b) == BeliefPair(P_TRUE, P_TRUE)

    def test_weak_operator(self):
        for q in enumerate_world_sets(V2):
            assert dl.e_weak(EMPTY, q) == ALL
            assert dl.e_weak(FACT_P, q) == P_TRUE

    def test_e_weak_guards_completeness(self, monkeypatch):
        monkeypatch.setattr(dl, "e_approx", lambda d, b: BeliefPair(ALL, P_TRUE))
        with pytest.raises(InvariantViolation):
            dl.e_weak(PQP, ALL)


class TestWeak:
    def test_two_weak_extensions(self):
        assert dl.weak_extensions(PQP, V2) == [P_TRUE, ALL]

    def test_weak_matches_oracle(self):
        assert dl.weak_oracle(PQP, V2) == [P_TRUE, ALL]

    def test_empty_kk(self):
        assert dl.kripke_kleene_dl(EMPTY, V2).value == BeliefPair(ALL, ALL)


class TestStable:
    def test_values(self):
        assert dl.e_stable(PQP, ALL) == ALL
        for s in enumerate_world_sets(V2):
            assert dl.e_stable(FACT_P, s) == P_TRUE

    def test_free_default_fires(self):
        d = DefaultTheory((), (Default(TRUE, (Atom("q"),), Atom("p")),))
        assert dl.e_stable(d, ALL) == P_TRUE
        assert dl.reiter_oracle(d, V2) == [P_TRUE]

    def test_extensions(self):
        assert dl.reiter_extensions(PQP, V2) == [ALL]
        assert dl.reiter_extensions(EMPTY, V2) == [ALL]

    def test_extension_theory_is_tautologies(self):
        (e,) = dl.reiter_extensions(PQP, V2)
        assert not entails(e, Atom("p")) and not entails(e, Atom("q"))

    def test_well_founded(self):
        wf = dl.well_founded_dl(PQP, V2).value
        assert wf == BeliefPair(ALL, ALL) and is_complete(wf)

    def test_even_pair(self):
        assert dl.reiter_extensions(EVEN) == [P_TRUE, Q_TRUE]
        wf = dl.well_founded_dl(EVEN).value
        assert all(leq_kn(wf, b) for b in dl.partial_extensions_dl(EVEN))


class TestOracle:
    def test_examples(self):
        assert dl.reiter_oracle(PQP, V2) == [ALL]
        assert dl.reiter_oracle(EVEN) == [P_TRUE, Q_TRUE]
        assert dl.reiter_oracle(FACT_P, V2) == [P_TRUE]

    def test_grounding_matters(self):
        # p : true / p is not self-supporting
        d = parse_default_theory("D: p : true / p.")
        assert dl.reiter_oracle(d) == [WorldSet.all(Vocabulary(("p",)))]
        assert len(dl.weak_oracle(d)) == 2

    def test_inconsistent_extension(self):
        d = parse_default_theory("W:\np & ~p")
        v = Vocabulary(("p",))
        assert dl.reiter_oracle(d, v) == [WorldSet.empty(v)] == dl.reiter_extensions(d, v)

    def test_cap(self):
        d = DefaultTheory((), tuple(Default(TRUE, (TRUE,), Atom("p")) for _ in range(17)))
        with pytest.raises(TooManyDefaults):
            dl.reiter_oracle(d)


def corpus(seed, n=2):
    return gen_default_theory(GenConfig(seed=seed, n=n), 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_reiter_matches_oracle(seed):
    d = corpus(seed)
    assert dl.reiter_extensions(d, V2) == dl.reiter_oracle(d, V2)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_weak_matches_oracle_random(seed):
    d = corpus(seed)
    assert dl.weak_extensions(d, V2) == dl.weak_oracle(d, V2)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_operators_agree_with_translation(seed):
    d = corpus(seed)
    t = konolige(d)
    for b in enumerate_belief_pairs(V2):
        assert dl.e_approx(d, b) == ael.d_approx(t, b)
    for q in enumerate_world_sets(V2):
        assert dl.e_stable(d, q) == ael.d_stable(t, q)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_stable_antimonotone(seed):
    d = corpus(seed)
    table = dl.stable_table(d, V2)
    for a in range(16):
        for b in range(16):
            if b & ~a == 0:  # b subset of a
                assert table[a] & ~table[b] == 0
