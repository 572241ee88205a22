"""Possible-world structures, belief pairs and their orders.

An interpretation of an ``n``-atom vocabulary is an integer in ``[0, 2**n)``
whose bit ``k`` is the truth value of atom ``k``. A possible-world structure
is a set of interpretations, stored as an integer bit-vector of width
``2**n``: bit ``j`` is set when interpretation ``j`` is a possible world.

Two orders are provided. ``leq_w`` is reverse inclusion on world sets (fewer
worlds means more knowledge). ``leq_kn`` is the knowledge order on belief
pairs ``(P, S)``: the conservative component shrinks and the liberal one grows.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, NamedTuple, TypeVar

from .errors import (
    InvariantViolation,
    UnknownAtom,
    VocabularyMismatch,
    VocabularyTooLarge,
)
from .syntax import ATOM_RE

MAX_ATOMS = 20
MAX_WORLD_SET_ENUM = 4
MAX_PAIR_ENUM = 3


@dataclass(frozen=True)
class Vocabulary:
    atoms: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        if len(set(self.atoms)) != len(self.atoms):
            raise ValueError(f"duplicate atom names in {list(self.atoms)}")
        for a in self.atoms:
            if not ATOM_RE.fullmatch(a) or a in ("true", "false"):
                raise ValueError(f"invalid atom name {a!r}")
        if len(self.atoms) > MAX_ATOMS:
            raise VocabularyTooLarge(f"at most {MAX_ATOMS} atoms are supported, got {len(self.atoms)}")

    @property
    def n(self) -> int:
        return len(self.atoms)

    @property
    def size(self) -> int:
        """Number of interpretations."""
        return 1 << len(self.atoms)

    @cached_property
    def full(self) -> int:
        return (1 << self.size) - 1

    @cached_property
    def _positions(self) -> dict[str, int]:
        return {a: k for k, a in enumerate(self.atoms)}

    @cached_property
    def _masks(self) -> tuple[int, ...]:
        masks = []
        for k in range(self.n):
            # blocks of 2**k worlds alternate false/true
            half = 1 << k
            width = half << 1
            m = ((1 << half) - 1) << half
            while width < self.size:
                m |= m << width
                width <<= 1
            masks.append(m)
        return tuple(masks)

    def index(self, atom: str) -> int:
        try:
            return self._positions[atom]
        except KeyError:
            raise UnknownAtom(f"atom {atom!r} is not in the vocabulary {list(self.atoms)}") from None

    def atom_mask(self, atom: str) -> int:
        """World-set bits of the interpretations in which ``atom`` is true."""
        return self._masks[self.index(atom)]

    def true_atoms(self, i: int) -> tuple[str, ...]:
        return tuple(a for k, a in enumerate(self.atoms) if i >> k & 1)

    def interpretation(self, true_atoms: Iterable[str]) -> int:
        i = 0
        for a in true_atoms:
            i |= 1 << self.index(a)
        return i

    def show_interpretation(self, i: int) -> str:
        return "{" + ", ".join(self.true_atoms(i)) + "}"

    def covering(self, atoms: Iterable[str]) -> "Vocabulary":
        """Check that every atom is declared; returns ``self`` for chaining."""
        for a in atoms:
            self.index(a)
        return self


def _check_same(a: Vocabulary, b: Vocabulary):
    if a != b:
        raise VocabularyMismatch(f"vocabularies differ: {list(a.atoms)} vs {list(b.atoms)}")


@dataclass(frozen=True)
class WorldSet:
    vocab: Vocabulary
    bits: int

    @classmethod
    def all(cls, vocab: Vocabulary) -> "WorldSet":
        return cls(vocab, vocab.full)

    @classmethod
    def empty(cls, vocab: Vocabulary) -> "WorldSet":
        return cls(vocab, 0)

    @classmethod
    def of(cls, vocab: Vocabulary, interpretations: Iterable[int]) -> "WorldSet":
        bits = 0
        for i in interpretations:
            if not 0 <= i < vocab.size:
                raise ValueError(f"interpretation index {i} out of range")
            bits |= 1 << i
        return cls(vocab, bits)

    def __contains__(self, i: int) -> bool:
        return bool(self.bits >> i & 1)

    def __iter__(self) -> Iterator[int]:
        bits, i = self.bits, 0
        while bits:
            if bits & 1:
                yield i
            bits >>= 1
            i += 1

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __and__(self, other: "WorldSet") -> "WorldSet":
        _check_same(self.vocab, other.vocab)
        return WorldSet(self.vocab, self.bits & other.bits)

    def __or__(self, other: "WorldSet") -> "WorldSet":
        _check_same(self.vocab, other.vocab)
        return WorldSet(self.vocab, self.bits | other.bits)

    def issubset(self, other: "WorldSet") -> bool:
        _check_same(self.vocab, other.vocab)
        return self.bits & ~other.bits == 0

    def interpretations(self) -> list[tuple[str, ...]]:
        return [self.vocab.true_atoms(i) for i in self]

    def show(self) -> str:
        return "[" + ", ".join(self.vocab.show_interpretation(i) for i in self) + "]"

    __str__ = show


@dataclass(frozen=True)
class BeliefPair:
    """``p`` is the conservative estimate, ``s`` the liberal one.

    Inconsistent pairs (``s`` not contained in ``p``) are legal values.
    """

    p: WorldSet
    s: WorldSet

    def __post_init__(self):
        _check_same(self.p.vocab, self.s.vocab)

    @classmethod
    def complete(cls, q: WorldSet) -> "BeliefPair":
        return cls(q, q)

    @property
    def vocab(self) -> Vocabulary:
        return self.p.vocab

    def swap(self) -> "BeliefPair":
        return BeliefPair(self.s, self.p)

    def show(self) -> str:
        return f"P={self.p.show()}, S={self.s.show()}"

    __str__ = show


def leq_w(q1: WorldSet, q2: WorldSet) -> bool:
    """``q1`` below ``q2`` in the knowledge order on world sets (``q2`` subset of ``q1``)."""
    return q2.issubset(q1)


def leq_kn(b1: BeliefPair, b2: BeliefPair) -> bool:
    return b1.s.issubset(b2.s) and b2.p.issubset(b1.p)


def meet_kn(b1: BeliefPair, b2: BeliefPair) -> BeliefPair:
    return BeliefPair(b1.p | b2.p, b1.s & b2.s)


def join_kn(b1: BeliefPair, b2: BeliefPair) -> BeliefPair:
    return BeliefPair(b1.p & b2.p, b1.s | b2.s)


def is_consistent(b: BeliefPair) -> bool:
    return b.s.issubset(b.p)


def is_complete(b: BeliefPair) -> bool:
    return b.p == b.s


def bottom_kn(v: Vocabulary) -> BeliefPair:
    """The least informative pair: every world conservatively possible, none liberally."""
    return BeliefPair(WorldSet.all(v), WorldSet.empty(v))


def check_world_set_cap(v: Vocabulary):
    if v.n > MAX_WORLD_SET_ENUM:
        raise VocabularyTooLarge(
            f"enumerating world sets needs n <= {MAX_WORLD_SET_ENUM} atoms, got {v.n}")


def check_pair_cap(v: Vocabulary):
    if v.n > MAX_PAIR_ENUM:
        raise VocabularyTooLarge(
            f"enumerating belief pairs needs n <= {MAX_PAIR_ENUM} atoms, got {v.n}")


def enumerate_world_sets(v: Vocabulary) -> Iterator[WorldSet]:
    check_world_set_cap(v)
    return (WorldSet(v, bits) for bits in range(1 << v.size))


def enumerate_belief_pairs(v: Vocabulary) -> Iterator[BeliefPair]:
    check_pair_cap(v)
    sets = list(enumerate_world_sets(v))
    return (BeliefPair(p, s) for p in sets for s in sets)


T = TypeVar("T")


class Fixpoint(NamedTuple):
    value: object
    iterations: int


def lfp(step: Callable[[T], T], start: T, cap: int) -> Fixpoint:
    """Kleene iteration from ``start`` until the value repeats.

    ``iterations`` counts operator applications, including the final one that
    confirmed stability. Exceeding ``cap`` means the operator was not monotone.
    """
    x = start
    for k in range(1, cap + 1):
        y = step(x)
        if y == x:
            return Fixpoint(x, k)
        x = y
    raise InvariantViolation(f"fixpoint iteration exceeded {cap} steps")


def pair_cap(v: Vocabulary) -> int:
    return 2 * v.size + 2


def world_cap(v: Vocabulary) -> int:
    return v.size + 2
