"""Fixpoint semantics for autoepistemic logic, default logic and logic programs
over finite propositional vocabularies, built on belief pairs."""

from .errors import InvariantViolation, ParseError
from .lattice import BeliefPair, Vocabulary, WorldSet, bottom_kn, leq_kn, leq_w
from .syntax import (
    Default,
    DefaultTheory,
    ModalTheory,
    Program,
    konolige,
    lp_to_dl,
    parse_default_theory,
    parse_formula,
    parse_modal_theory,
    parse_program,
)

__version__ = "0.1.0"
