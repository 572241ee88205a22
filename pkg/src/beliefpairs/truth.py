"""Truth functions over world sets and belief pairs.

Each function exists in two forms. The pointwise form (``eval_*``) follows
the defining clauses literally, one interpretation at a time. The set form
(``*_models``) computes, for all interpretations at once, the bit-vector of
those where the formula comes out true; the operators use it. Tests check
that the two agree.

Implication and biconditional are rewritten on the fly as
``~a | b`` and ``(~a | b) & (~b | a)``, so the antecedent of an implication is
evaluated with the pair's components swapped.
"""

from __future__ import annotations

from enum import Enum

from .errors import NotObjective
from .lattice import BeliefPair, Vocabulary, WorldSet
from .syntax import (
    And,
    Atom,
    Default,
    FalseConst,
    Formula,
    Iff,
    Implies,
    K,
    Not,
    Or,
    TrueConst,
    is_objective,
    show,
)


class FourVal(Enum):
    """A 4-valued truth value as (conservative, liberal) estimates."""

    T4 = (True, True)
    F4 = (False, False)
    U = (False, True)
    I4 = (True, False)

    @classmethod
    def of(cls, conservative: bool, liberal: bool) -> "FourVal":
        return cls((conservative, liberal))

    def __str__(self) -> str:
        return {"T4": "t", "F4": "f", "U": "u", "I4": "i"}[self.name]


# ----------------------------------------------------------------------------
# Pointwise evaluation
# ----------------------------------------------------------------------------


def _classical(v: Vocabulary, i: int, f: Formula) -> bool:
    if isinstance(f, Atom):
        return bool(i >> v.index(f.name) & 1)
    if isinstance(f, TrueConst):
        return True
    if isinstance(f, FalseConst):
        return False
    if isinstance(f, Not):
        return not _classical(v, i, f.arg)
    if isinstance(f, And):
        return _classical(v, i, f.left) and _classical(v, i, f.right)
    if isinstance(f, Or):
        return _classical(v, i, f.left) or _classical(v, i, f.right)
    if isinstance(f, Implies):
        return not _classical(v, i, f.left) or _classical(v, i, f.right)
    if isinstance(f, Iff):
        return _classical(v, i, f.left) == _classical(v, i, f.right)
    raise NotObjective(f"objective formula expected: {show(f)}")


def eval_moore(q: WorldSet, i: int, f: Formula) -> bool:
    """Truth of ``f`` at world ``i`` of the possible-world structure ``q``."""
    v = q.vocab
    if isinstance(f, Atom):
        return bool(i >> v.index(f.name) & 1)
    if isinstance(f, TrueConst):
        return True
    if isinstance(f, FalseConst):
        return False
    if isinstance(f, Not):
        return not eval_moore(q, i, f.arg)
    if isinstance(f, And):
        return eval_moore(q, i, f.left) and eval_moore(q, i, f.right)
    if isinstance(f, Or):
        return eval_moore(q, i, f.left) or eval_moore(q, i, f.right)
    if isinstance(f, Implies):
        return not eval_moore(q, i, f.left) or eval_moore(q, i, f.right)
    if isinstance(f, Iff):
        return eval_moore(q, i, f.left) == eval_moore(q, i, f.right)
    if isinstance(f, K):
        return all(eval_moore(q, j, f.arg) for j in q)
    raise TypeError(f"not a formula: {f!r}")


def eval_conservative(b: BeliefPair, i: int, f: Formula) -> bool:
    """Conservative estimate of ``f`` at ``i``.

    Negation flips to the swapped pair, so positive occurrences of modal
    atoms are judged against ``P`` and negative ones against ``S``.
    """
    v = b.vocab
    if isinstance(f, Atom):
        return bool(i >> v.index(f.name) & 1)
    if isinstance(f, TrueConst):
        return True
    if isinstance(f, FalseConst):
        return False
    if isinstance(f, Not):
        return not eval_conservative(b.swap(), i, f.arg)
    if isinstance(f, And):
        return eval_conservative(b, i, f.left) and eval_conservative(b, i, f.right)
    if isinstance(f, Or):
        return eval_conservative(b, i, f.left) or eval_conservative(b, i, f.right)
    if isinstance(f, Implies):
        return eval_conservative(b, i, Or(Not(f.left), f.right))
    if isinstance(f, Iff):
        a, c = f.left, f.right
        return eval_conservative(b, i, And(Or(Not(a), c), Or(Not(c), a)))
    if isinstance(f, K):
        return all(eval_conservative(b, j, f.arg) for j in b.p)
    raise TypeError(f"not a formula: {f!r}")


def eval_four(b: BeliefPair, i: int, f: Formula) -> FourVal:
    return FourVal.of(eval_conservative(b, i, f), eval_conservative(b.swap(), i, f))


def eval_default(b: BeliefPair, i: int, d: Default) -> bool:
    """Conservative truth of a default at ``i``.

    True when the prerequisite fails somewhere in ``S``, some justification
    fails everywhere in ``P``, or the consequent holds at ``i``.
    """
    v = b.vocab
    if any(not _classical(v, j, d.prerequisite) for j in b.s):
        return True
    if any(all(not _classical(v, j, beta) for j in b.p) for beta in d.justifications):
        return True
    return _classical(v, i, d.consequent)


def entails(q: WorldSet, f: Formula) -> bool:
    """Whether objective ``f`` holds in every world of ``q``."""
    if not is_objective(f):
        raise NotObjective(f"entailment is defined for objective formulas: {show(f)}")
    return all(_classical(q.vocab, i, f) for i in q)


def believes(q: WorldSet, f: Formula) -> bool:
    """Whether ``f`` (possibly modal) belongs to the theory of ``q``."""
    return q.bits & ~moore_models(q, f).bits == 0


# ----------------------------------------------------------------------------
# Set-at-a-time evaluation on raw bit-vectors
# ----------------------------------------------------------------------------


def objective_bits(v: Vocabulary, f: Formula) -> int:
    """Bit-vector of the interpretations satisfying objective ``f``."""
    full = v.full
    if isinstance(f, Atom):
        return v.atom_mask(f.name)
    if isinstance(f, TrueConst):
        return full
    if isinstance(f, FalseConst):
        return 0
    if isinstance(f, Not):
        return full ^ objective_bits(v, f.arg)
    if isinstance(f, And):
        return objective_bits(v, f.left) & objective_bits(v, f.right)
    if isinstance(f, Or):
        return objective_bits(v, f.left) | objective_bits(v, f.right)
    if isinstance(f, Implies):
        return (full ^ objective_bits(v, f.left)) | objective_bits(v, f.right)
    if isinstance(f, Iff):
        return full ^ objective_bits(v, f.left) ^ objective_bits(v, f.right)
    raise NotObjective(f"objective formula expected: {show(f)}")


def conservative_bits(v: Vocabulary, f: Formula, p: int, s: int) -> int:
    """Bits of ``{I : h_(p,s),I(f) = t}``."""
    full = v.full
    if isinstance(f, Atom):
        return v.atom_mask(f.name)
    if isinstance(f, TrueConst):
        return full
    if isinstance(f, FalseConst):
        return 0
    if isinstance(f, Not):
        return full ^ conservative_bits(v, f.arg, s, p)
    if isinstance(f, And):
        return conservative_bits(v, f.left, p, s) & conservative_bits(v, f.right, p, s)
    if isinstance(f, Or):
        return conservative_bits(v, f.left, p, s) | conservative_bits(v, f.right, p, s)
    if isinstance(f, Implies):
        return (full ^ conservative_bits(v, f.left, s, p)) | conservative_bits(v, f.right, p, s)
    if isinstance(f, Iff):
        a_pos = conservative_bits(v, f.left, p, s)
        a_neg = conservative_bits(v, f.left, s, p)
        c_pos = conservative_bits(v, f.right, p, s)
        c_neg = conservative_bits(v, f.right, s, p)
        return ((full ^ a_neg) | c_pos) & ((full ^ c_neg) | a_pos)
    if isinstance(f, K):
        # modal atoms do not depend on the interpretation: all or nothing
        return full if p & ~conservative_bits(v, f.arg, p, s) == 0 else 0
    raise TypeError(f"not a formula: {f!r}")


def theory_bits(v: Vocabulary, formulas, p: int, s: int) -> int:
    """Bits of the interpretations where every formula is conservatively true."""
    m = v.full
    for f in formulas:
        m &= conservative_bits(v, f, p, s)
        if not m:
            break
    return m


def conservative_models(b: BeliefPair, f: Formula) -> WorldSet:
    return WorldSet(b.vocab, conservative_bits(b.vocab, f, b.p.bits, b.s.bits))


def moore_models(q: WorldSet, f: Formula) -> WorldSet:
    return WorldSet(q.vocab, conservative_bits(q.vocab, f, q.bits, q.bits))


def models(v: Vocabulary, f: Formula) -> WorldSet:
    return WorldSet(v, objective_bits(v, f))


def default_bits(v: Vocabulary, d: Default, p: int, s: int) -> int:
    full = v.full
    if s & ~objective_bits(v, d.prerequisite):
        return full
    if any(p & objective_bits(v, beta) == 0 for beta in d.justifications):
        return full
    return objective_bits(v, d.consequent)


def default_models(b: BeliefPair, d: Default) -> WorldSet:
    return WorldSet(b.vocab, default_bits(b.vocab, d, b.p.bits, b.s.bits))
