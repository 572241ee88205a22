"""Seeded random instances: formulas, modal theories, default theories, programs.

Every generator derives its own ``random.Random`` from ``(kind, seed, index)``
so that any single instance can be regenerated without replaying the others.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..lattice import Vocabulary
from ..syntax import (
    FALSE,
    TRUE,
    And,
    Atom,
    Clause,
    Default,
    DefaultTheory,
    Formula,
    Iff,
    Implies,
    K,
    ModalTheory,
    Not,
    Or,
    Program,
)

_NAMES = "pqrstuvw"


def atom_names(n: int) -> tuple[str, ...]:
    return tuple(_NAMES[k] if k < len(_NAMES) else f"a{k}" for k in range(n))


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    n: int = 2
    depth: int = 2
    size: int = 3
    defaults: int = 3
    facts: int = 1
    clauses: int = 3
    samples: int = 100

    def __post_init__(self):
        for name in ("n", "depth", "size", "defaults", "facts", "clauses", "samples"):
            if getattr(self, name) < 0:
                raise ValueError(f"GenConfig.{name} must be non-negative")
        if self.size < 1 or self.defaults < 1 or self.clauses < 1:
            raise ValueError("size, defaults and clauses must be at least 1")

    @property
    def vocab(self) -> Vocabulary:
        return Vocabulary(atom_names(self.n))

    def rng(self, kind: str, index: int) -> random.Random:
        return random.Random(f"{kind}:{self.seed}:{index}")


_LEAVES = ("atom", "const")
_OBJECTIVE = _LEAVES + ("not", "and", "or", "implies", "iff")
_MODAL = _OBJECTIVE + ("K",)
_BINARY = {"and": And, "or": Or, "implies": Implies, "iff": Iff}


def gen_formula(rng: random.Random, atoms, depth: int, modal: bool = True) -> Formula:
    """Uniform choice of node kind at each level; only leaves at depth 0."""
    kinds = _LEAVES if depth == 0 else (_MODAL if modal else _OBJECTIVE)
    if not atoms:
        kinds = tuple(k for k in kinds if k != "atom")
    kind = rng.choice(kinds)
    if kind == "atom":
        return Atom(rng.choice(atoms))
    if kind == "const":
        return rng.choice((TRUE, FALSE))
    if kind == "not":
        return Not(gen_formula(rng, atoms, depth - 1, modal))
    if kind == "K":
        return K(gen_formula(rng, atoms, depth - 1, modal))
    left = gen_formula(rng, atoms, depth - 1, modal)
    right = gen_formula(rng, atoms, depth - 1, modal)
    return _BINARY[kind](left, right)


def gen_modal_theory(cfg: GenConfig, index: int = 0) -> ModalTheory:
    rng = cfg.rng("modal", index)
    atoms = atom_names(cfg.n)
    count = rng.randint(1, cfg.size)
    return ModalTheory(tuple(gen_formula(rng, atoms, cfg.depth) for _ in range(count)))


def gen_default_theory(cfg: GenConfig, index: int = 0) -> DefaultTheory:
    rng = cfg.rng("default", index)
    atoms = atom_names(cfg.n)

    def obj():
        return gen_formula(rng, atoms, cfg.depth, modal=False)

    facts = tuple(obj() for _ in range(rng.randint(0, cfg.facts)))
    defaults = []
    for _ in range(rng.randint(1, cfg.defaults)):
        alpha = obj()
        betas = tuple(obj() for _ in range(rng.randint(1, 2)))
        defaults.append(Default(alpha, betas, obj()))
    return DefaultTheory(facts, tuple(defaults))


def gen_program(cfg: GenConfig, index: int = 0) -> Program:
    rng = cfg.rng("program", index)
    atoms = atom_names(cfg.n)
    clauses = []
    for _ in range(rng.randint(1, cfg.clauses)):
        head = rng.choice(atoms)
        pos = tuple(rng.sample(atoms, rng.randint(0, min(2, len(atoms)))))
        neg = tuple(rng.sample(atoms, rng.randint(0, min(2, len(atoms)))))
        clauses.append(Clause(head, pos, neg))
    return Program(tuple(clauses))
