"""Default-logic operators, their semantics, and classical oracles.

The operators mirror the autoepistemic ones: ``e_approx`` on belief pairs
(partial weak extensions, Kripke-Kleene), ``e_weak`` on world sets (weak
extensions), ``e_stable`` and ``e_stable_pair`` (Reiter extensions, partial
extensions, well-founded).

A default theory's "theory" is always reported as a world set; use
:func:`beliefpairs.truth.entails` to ask about particular formulas.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import NamedTuple, Optional

from .errors import InvariantViolation, TooManyDefaults
from .lattice import (
    BeliefPair,
    Fixpoint,
    Vocabulary,
    WorldSet,
    bottom_kn,
    check_world_set_cap,
    enumerate_belief_pairs,
    lfp,
    pair_cap,
    world_cap,
)
from .syntax import DefaultTheory
from .truth import objective_bits

MAX_ORACLE_DEFAULTS = 16


class _Compiled(NamedTuple):
    facts: int
    # (prerequisite, justifications, consequent) as world-set bits
    rules: tuple[tuple[int, tuple[int, ...], int], ...]


@lru_cache(maxsize=4096)
def _compile(delta: DefaultTheory, v: Vocabulary) -> _Compiled:
    facts = v.full
    for f in delta.facts:
        facts &= objective_bits(v, f)
    rules = tuple(
        (
            objective_bits(v, d.prerequisite),
            tuple(objective_bits(v, b) for b in d.justifications),
            objective_bits(v, d.consequent),
        )
        for d in delta.defaults
    )
    return _Compiled(facts, rules)


def _truth_bits(c: _Compiled, full: int, p: int, s: int) -> int:
    """Interpretations where every fact and default is conservatively true."""
    m = c.facts
    for alpha, betas, gamma in c.rules:
        if s & ~alpha:
            continue
        if any(p & beta == 0 for beta in betas):
            continue
        m &= gamma
    return m


def vocabulary_of(delta: DefaultTheory, vocab: Optional[Vocabulary] = None) -> Vocabulary:
    if vocab is None:
        return Vocabulary(delta.atoms())
    return vocab.covering(delta.atoms())


def e_approx(delta: DefaultTheory, b: BeliefPair) -> BeliefPair:
    v = b.vocab
    c = _compile(delta, v)
    lower = _truth_bits(c, v.full, b.s.bits, b.p.bits)
    upper = _truth_bits(c, v.full, b.p.bits, b.s.bits)
    return BeliefPair(WorldSet(v, lower), WorldSet(v, upper))


def e_weak(delta: DefaultTheory, q: WorldSet) -> WorldSet:
    out = e_approx(delta, BeliefPair(q, q))
    if out.p != out.s:
        raise InvariantViolation(f"e_approx broke completeness at {q}")
    return out.p


def kripke_kleene_dl(delta: DefaultTheory, vocab: Optional[Vocabulary] = None) -> Fixpoint:
    v = vocabulary_of(delta, vocab)
    return lfp(lambda b: e_approx(delta, b), bottom_kn(v), pair_cap(v))


def _stable_bits(delta: DefaultTheory, v: Vocabulary, s: int) -> int:
    c = _compile(delta, v)
    full = v.full
    return lfp(lambda p: _truth_bits(c, full, s, p), full, world_cap(v)).value


def e_stable(delta: DefaultTheory, s: WorldSet) -> WorldSet:
    return WorldSet(s.vocab, _stable_bits(delta, s.vocab, s.bits))


def e_stable_pair(delta: DefaultTheory, b: BeliefPair) -> BeliefPair:
    return BeliefPair(e_stable(delta, b.s), e_stable(delta, b.p))


def well_founded_dl(delta: DefaultTheory, vocab: Optional[Vocabulary] = None) -> Fixpoint:
    v = vocabulary_of(delta, vocab)
    return lfp(lambda b: e_stable_pair(delta, b), bottom_kn(v), pair_cap(v))


# ----------------------------------------------------------------------------
# Fixpoint lists
# ----------------------------------------------------------------------------


def weak_extensions(delta: DefaultTheory, vocab: Optional[Vocabulary] = None) -> list[WorldSet]:
    v = vocabulary_of(delta, vocab)
    check_world_set_cap(v)
    c = _compile(delta, v)
    return [WorldSet(v, q) for q in range(1 << v.size) if _truth_bits(c, v.full, q, q) == q]


def partial_weak_extensions(delta: DefaultTheory, vocab: Optional[Vocabulary] = None) -> list[BeliefPair]:
    v = vocabulary_of(delta, vocab)
    return [b for b in enumerate_belief_pairs(v) if e_approx(delta, b) == b]


def stable_table(delta: DefaultTheory, v: Vocabulary) -> list[int]:
    check_world_set_cap(v)
    return [_stable_bits(delta, v, s) for s in range(1 << v.size)]


def reiter_extensions(delta: DefaultTheory, vocab: Optional[Vocabulary] = None) -> list[WorldSet]:
    v = vocabulary_of(delta, vocab)
    table = stable_table(delta, v)
    return [WorldSet(v, q) for q, image in enumerate(table) if image == q]


def partial_extensions_dl(delta: DefaultTheory, vocab: Optional[Vocabulary] = None) -> list[BeliefPair]:
    v = vocabulary_of(delta, vocab)
    table = stable_table(delta, v)
    pairs = sorted((table[s], s) for s in range(len(table)) if table[table[s]] == s)
    return [BeliefPair(WorldSet(v, p), WorldSet(v, s)) for p, s in pairs]


# ----------------------------------------------------------------------------
# Oracles working from the classical definitions
# ----------------------------------------------------------------------------


def _subsets(k: int):
    for r in range(k + 1):
        yield from combinations(range(k), r)


def reiter_oracle(delta: DefaultTheory, vocab: Optional[Vocabulary] = None) -> list[WorldSet]:
    """Reiter extensions by guessing the set of generating defaults.

    For each subset ``G`` of the defaults the candidate extension is
    ``W`` plus the consequents of ``G``. Starting from ``W`` we apply, until
    nothing changes, every default whose prerequisite follows from what has
    been derived so far and whose justifications are each consistent with the
    candidate. The candidate is an extension when exactly ``G`` gets applied.
    """
    v = vocabulary_of(delta, vocab)
    if len(delta.defaults) > MAX_ORACLE_DEFAULTS:
        raise TooManyDefaults(
            f"the Reiter oracle handles at most {MAX_ORACLE_DEFAULTS} defaults, got {len(delta.defaults)}")
    c = _compile(delta, v)
    k = len(c.rules)
    found = set()
    for gen in _subsets(k):
        candidate = c.facts
        for j in gen:
            candidate &= c.rules[j][2]
        derived = c.facts
        applied: set[int] = set()
        changed = True
        while changed:
            changed = False
            for j, (alpha, betas, gamma) in enumerate(c.rules):
                if j in applied:
                    continue
                entailed = derived & ~alpha == 0
                consistent = all(candidate & beta for beta in betas)
                if entailed and consistent:
                    applied.add(j)
                    derived &= gamma
                    changed = True
        if applied == set(gen) and derived == candidate:
            found.add(candidate)
    return [WorldSet(v, q) for q in sorted(found)]


def weak_oracle(delta: DefaultTheory, vocab: Optional[Vocabulary] = None) -> list[WorldSet]:
    """Weak extensions by guessing the set of applicable defaults.

    A candidate ``E = Cn(W + consequents(G))`` is a weak extension when ``G``
    is exactly the set of defaults whose prerequisite is in ``E`` and whose
    justifications are each consistent with ``E``, and those consequents
    regenerate ``E``. Prerequisites are tested against ``E`` itself, not
    against a grounded derivation.
    """
    v = vocabulary_of(delta, vocab)
    if len(delta.defaults) > MAX_ORACLE_DEFAULTS:
        raise TooManyDefaults(
            f"the weak-extension oracle handles at most {MAX_ORACLE_DEFAULTS} defaults")
    c = _compile(delta, v)
    found = set()
    for gen in _subsets(len(c.rules)):
        candidate = c.facts
        for j in gen:
            candidate &= c.rules[j][2]
        applicable = {
            j for j, (alpha, betas, _) in enumerate(c.rules)
            if candidate & ~alpha == 0 and all(candidate & beta for beta in betas)
        }
        if applicable == set(gen):
            found.add(candidate)
    return [WorldSet(v, q) for q in sorted(found)]
