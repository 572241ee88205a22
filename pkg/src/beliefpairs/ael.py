"""Autoepistemic operators and the semantics they induce.

``d_moore`` is Moore's revision operator on world sets; its fixpoints are
expansions. ``d_approx`` lifts it to belief pairs; its fixpoints are partial
expansions and its knowledge-least fixpoint is the Kripke-Kleene pair.
``d_stable`` revises the conservative world set to the least fixpoint of the
lower component with the liberal side held fixed; its fixpoints are
extensions. ``d_stable_pair`` applies it crosswise, giving partial extensions
and the well-founded pair.
"""

from __future__ import annotations

from itertools import product
from typing import Optional

from .lattice import (
    BeliefPair,
    Fixpoint,
    Vocabulary,
    WorldSet,
    bottom_kn,
    check_world_set_cap,
    enumerate_belief_pairs,
    enumerate_world_sets,
    lfp,
    pair_cap,
    world_cap,
)
from .syntax import FALSE, TRUE, Formula, K, ModalTheory, modal_subformulas
from .syntax import And, Iff, Implies, Not, Or
from .truth import conservative_bits, objective_bits, theory_bits


def vocabulary_of(t: ModalTheory, vocab: Optional[Vocabulary] = None) -> Vocabulary:
    if vocab is None:
        return Vocabulary(t.atoms())
    return vocab.covering(t.atoms())


def d_moore(t: ModalTheory, q: WorldSet) -> WorldSet:
    v = q.vocab
    return WorldSet(v, theory_bits(v, t.formulas, q.bits, q.bits))


def d_approx(t: ModalTheory, b: BeliefPair) -> BeliefPair:
    v = b.vocab
    lower = theory_bits(v, t.formulas, b.s.bits, b.p.bits)
    upper = theory_bits(v, t.formulas, b.p.bits, b.s.bits)
    return BeliefPair(WorldSet(v, lower), WorldSet(v, upper))


def kripke_kleene(t: ModalTheory, vocab: Optional[Vocabulary] = None) -> Fixpoint:
    """Knowledge-least fixpoint of ``d_approx``, iterated from the bottom pair."""
    v = vocabulary_of(t, vocab)
    return lfp(lambda b: d_approx(t, b), bottom_kn(v), pair_cap(v))


def _stable_bits(t: ModalTheory, v: Vocabulary, s: int) -> int:
    return lfp(lambda p: theory_bits(v, t.formulas, s, p), v.full, world_cap(v)).value


def d_stable(t: ModalTheory, s: WorldSet) -> WorldSet:
    """Least fixpoint (from the full world set) of ``P -> lower(d_approx(P, s))``."""
    return WorldSet(s.vocab, _stable_bits(t, s.vocab, s.bits))


def d_stable_pair(t: ModalTheory, b: BeliefPair) -> BeliefPair:
    return BeliefPair(d_stable(t, b.s), d_stable(t, b.p))


def well_founded_ael(t: ModalTheory, vocab: Optional[Vocabulary] = None) -> Fixpoint:
    v = vocabulary_of(t, vocab)
    return lfp(lambda b: d_stable_pair(t, b), bottom_kn(v), pair_cap(v))


# ----------------------------------------------------------------------------
# Fixpoint lists
# ----------------------------------------------------------------------------


def expansions_brute(t: ModalTheory, vocab: Optional[Vocabulary] = None) -> list[WorldSet]:
    v = vocabulary_of(t, vocab)
    return [q for q in enumerate_world_sets(v) if d_moore(t, q) == q]


def _substitute(f: Formula, values: dict[Formula, bool]) -> Formula:
    """Replace each outermost ``K phi`` by the guessed constant."""
    if isinstance(f, K):
        return TRUE if values[f.arg] else FALSE
    if isinstance(f, Not):
        return Not(_substitute(f.arg, values))
    if isinstance(f, (And, Or, Implies, Iff)):
        return type(f)(_substitute(f.left, values), _substitute(f.right, values))
    return f


def expansions_guess(t: ModalTheory, vocab: Optional[Vocabulary] = None) -> list[WorldSet]:
    """Expansions by guessing the truth of every modal atom.

    Each guess reduces ``t`` to an objective theory; its models form the only
    candidate for that guess, which is kept when re-evaluating every modal
    atom against the candidate reproduces the guess.
    """
    v = vocabulary_of(t, vocab)
    subs = modal_subformulas(t)
    found: set[int] = set()
    for guess in product((False, True), repeat=len(subs)):
        values = dict(zip(subs, guess))
        q = v.full
        for f in t.formulas:
            q &= objective_bits(v, _substitute(f, values))
        ok = all(
            bool(conservative_bits(v, K(phi), q, q)) == g for phi, g in values.items()
        )
        if ok:
            found.add(q)
    return [WorldSet(v, bits) for bits in sorted(found)]


def expansions(t: ModalTheory, vocab: Optional[Vocabulary] = None, method: str = "guess") -> list[WorldSet]:
    if method == "guess":
        return expansions_guess(t, vocab)
    if method == "brute":
        return expansions_brute(t, vocab)
    raise ValueError(f"unknown method {method!r}")


def partial_expansions(t: ModalTheory, vocab: Optional[Vocabulary] = None) -> list[BeliefPair]:
    v = vocabulary_of(t, vocab)
    return [b for b in enumerate_belief_pairs(v) if d_approx(t, b) == b]


def stable_table(t: ModalTheory, v: Vocabulary) -> list[int]:
    """``d_stable`` on every world set, indexed by bit-vector."""
    check_world_set_cap(v)
    return [_stable_bits(t, v, s) for s in range(1 << v.size)]


def extensions_ael(t: ModalTheory, vocab: Optional[Vocabulary] = None) -> list[WorldSet]:
    v = vocabulary_of(t, vocab)
    table = stable_table(t, v)
    return [WorldSet(v, q) for q, image in enumerate(table) if image == q]


def partial_extensions_ael(t: ModalTheory, vocab: Optional[Vocabulary] = None) -> list[BeliefPair]:
    """Pairs ``(P, S)`` with ``P = d_stable(S)`` and ``S = d_stable(P)``."""
    v = vocabulary_of(t, vocab)
    table = stable_table(t, v)
    pairs = [(table[s], s) for s in range(len(table)) if table[table[s]] == s]
    return [BeliefPair(WorldSet(v, p), WorldSet(v, s)) for p, s in sorted(pairs)]
