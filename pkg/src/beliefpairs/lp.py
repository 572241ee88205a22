"""Normal logic programs: the 4-valued one-step operator and its semantics.

Atom pairs ``(lower, upper)`` play the role belief pairs play for the modal
and default languages: ``lower`` holds atoms known true, atoms missing from
``upper`` are known false. The knowledge order grows ``lower`` and shrinks
``upper``; iteration starts at ``(set(), all atoms)``.

The oracles (``gl_oracle``, ``alternating_oracle``) are the textbook
constructions via the Gelfond-Lifschitz reduct and share no code with the
operator path.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from . import dl
from .errors import InvariantViolation, TooManyAtoms
from .lattice import Vocabulary, WorldSet, lfp
from .syntax import Program, lp_to_dl

MAX_LP_ATOMS = 16


@dataclass(frozen=True)
class AtomPair:
    lower: frozenset
    upper: frozenset

    def __post_init__(self):
        object.__setattr__(self, "lower", frozenset(self.lower))
        object.__setattr__(self, "upper", frozenset(self.upper))

    def is_consistent(self) -> bool:
        return self.lower <= self.upper

    def show(self, order: Optional[Iterable[str]] = None) -> str:
        return f"lower={show_atoms(self.lower, order)}, upper={show_atoms(self.upper, order)}"

    __str__ = show


def show_atoms(atoms: Iterable[str], order: Optional[Iterable[str]] = None) -> str:
    atoms = set(atoms)
    names = [a for a in order if a in atoms] if order is not None else sorted(atoms)
    return "{" + ", ".join(names) + "}"


def leq_kn(a: AtomPair, b: AtomPair) -> bool:
    return a.lower <= b.lower and b.upper <= a.upper


def _atoms(program: Program, atoms: Optional[Iterable[str]]) -> tuple[str, ...]:
    own = program.atoms()
    if atoms is None:
        return own
    atoms = tuple(atoms)
    missing = [a for a in own if a not in atoms]
    if missing:
        raise ValueError(f"atoms {missing} are used by the program but not declared")
    return atoms


def _cap(atoms: tuple[str, ...]):
    if len(atoms) > MAX_LP_ATOMS:
        raise TooManyAtoms(f"model enumeration handles at most {MAX_LP_ATOMS} atoms, got {len(atoms)}")


def tp(program: Program, i: Iterable[str]) -> frozenset:
    i = frozenset(i)
    return frozenset(
        c.head for c in program.clauses
        if i.issuperset(c.pos) and i.isdisjoint(c.neg)
    )


def tp_four(program: Program, ap: AtomPair) -> AtomPair:
    """Positive literals read the same side, negated literals the opposite side."""
    lower = frozenset(
        c.head for c in program.clauses
        if ap.lower.issuperset(c.pos) and ap.upper.isdisjoint(c.neg)
    )
    upper = frozenset(
        c.head for c in program.clauses
        if ap.upper.issuperset(c.pos) and ap.lower.isdisjoint(c.neg)
    )
    return AtomPair(lower, upper)


def t_stable(program: Program, s: Iterable[str]) -> frozenset:
    """Least fixpoint of the lower step with the upper side fixed to ``s``."""
    s = frozenset(s)
    cap = len(program.clauses) + 2
    return lfp(lambda low: tp_four(program, AtomPair(low, s)).lower, frozenset(), cap).value


def bottom(program: Program, atoms: Optional[Iterable[str]] = None) -> AtomPair:
    return AtomPair(frozenset(), frozenset(_atoms(program, atoms)))


def kk_lp(program: Program, atoms: Optional[Iterable[str]] = None):
    start = bottom(program, atoms)
    return lfp(lambda ap: tp_four(program, ap), start, 2 * len(start.upper) + 4)


def t_stable_pair(program: Program, ap: AtomPair) -> AtomPair:
    return AtomPair(t_stable(program, ap.upper), t_stable(program, ap.lower))


def wf_lp(program: Program, atoms: Optional[Iterable[str]] = None):
    start = bottom(program, atoms)
    return lfp(lambda ap: t_stable_pair(program, ap), start, 2 * len(start.upper) + 4)


def _subsets(atoms: tuple[str, ...]):
    for r in range(len(atoms) + 1):
        for combo in combinations(atoms, r):
            yield frozenset(combo)


def _canonical(models: Iterable[frozenset], atoms: tuple[str, ...]) -> list[frozenset]:
    rank = {a: k for k, a in enumerate(atoms)}
    return sorted(models, key=lambda m: sum(1 << rank[a] for a in m))


def supported_models(program: Program, atoms: Optional[Iterable[str]] = None) -> list[frozenset]:
    atoms = _atoms(program, atoms)
    _cap(atoms)
    return _canonical((m for m in _subsets(atoms) if tp(program, m) == m), atoms)


def stable_models(program: Program, atoms: Optional[Iterable[str]] = None) -> list[frozenset]:
    atoms = _atoms(program, atoms)
    _cap(atoms)
    return _canonical((m for m in _subsets(atoms) if t_stable(program, m) == m), atoms)


# ----------------------------------------------------------------------------
# Textbook oracles
# ----------------------------------------------------------------------------


def reduct(program: Program, m: frozenset) -> list[tuple[str, tuple[str, ...]]]:
    """Gelfond-Lifschitz reduct as (head, positive body) rules."""
    return [(c.head, c.pos) for c in program.clauses if m.isdisjoint(c.neg)]


def least_model(rules: list[tuple[str, tuple[str, ...]]]) -> frozenset:
    """Least model of a definite program by counter-based propagation."""
    waiting = [len(set(body)) for _, body in rules]
    watchers: dict[str, list[int]] = {}
    for k, (_, body) in enumerate(rules):
        for a in set(body):
            watchers.setdefault(a, []).append(k)
    model: set[str] = set()
    queue = [head for (head, _), w in zip(rules, waiting) if w == 0]
    while queue:
        a = queue.pop()
        if a in model:
            continue
        model.add(a)
        for k in watchers.get(a, ()):
            waiting[k] -= 1
            if waiting[k] == 0:
                queue.append(rules[k][0])
    return frozenset(model)


def gl_oracle(program: Program, atoms: Optional[Iterable[str]] = None) -> list[frozenset]:
    atoms = _atoms(program, atoms)
    _cap(atoms)
    return _canonical(
        (m for m in _subsets(atoms) if least_model(reduct(program, m)) == m), atoms)


def alternating_oracle(program: Program, atoms: Optional[Iterable[str]] = None) -> AtomPair:
    """Limit of the alternating fixpoint construction.

    ``gamma(X)`` is the least model of the reduct by ``X``. Underestimates
    ``gamma(gamma(...))`` rise from the empty set to the least fixpoint of
    ``gamma`` squared; the matching overestimate is ``gamma`` of that limit.
    """
    atoms = _atoms(program, atoms)
    _cap(atoms)

    def gamma(x):
        return least_model(reduct(program, x))

    under: frozenset = frozenset()
    for _ in range(len(atoms) + 2):
        nxt = gamma(gamma(under))
        if nxt == under:
            return AtomPair(under, gamma(under))
        under = nxt
    raise InvariantViolation("alternating sequence did not converge")


# ----------------------------------------------------------------------------
# Embedding into default logic
# ----------------------------------------------------------------------------


@dataclass
class EmbeddingReport:
    atoms: tuple[str, ...]
    checks: list[tuple[str, bool, str]]

    HEADER = ("# logic program vs. its default-logic translation"
              " (atom-level KK/WF alignment is a reconstruction)")

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def __str__(self) -> str:
        lines = [self.HEADER]
        for name, ok, detail in self.checks:
            lines.append(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        return "\n".join(lines)


def model_world_set(v: Vocabulary, m: Iterable[str]) -> WorldSet:
    """Interpretations making every atom of ``m`` true, others unconstrained."""
    bits = v.full
    for a in m:
        bits &= v.atom_mask(a)
    return WorldSet(v, bits)


def check_lp_embedding(program: Program, atoms: Optional[Iterable[str]] = None) -> EmbeddingReport:
    atoms = _atoms(program, atoms)
    v = Vocabulary(atoms)
    delta = lp_to_dl(program)
    checks = []

    def compare(name, lp_side, dl_side):
        lp_ws = sorted(model_world_set(v, m).bits for m in lp_side)
        dl_ws = sorted(q.bits for q in dl_side)
        shown = ", ".join(show_atoms(m, atoms) for m in lp_side) or "none"
        checks.append((name, lp_ws == dl_ws, f"{len(lp_ws)} vs {len(dl_ws)} [{shown}]"))

    compare("stable models = Reiter extensions",
            stable_models(program, atoms), dl.reiter_extensions(delta, v))
    compare("supported models = weak extensions",
            supported_models(program, atoms), dl.weak_extensions(delta, v))

    def verdicts(name, ap: AtomPair, pair):
        bad = []
        for a in atoms:
            mask = v.atom_mask(a)
            known_true = pair.p.bits & ~mask == 0
            possibly_true = pair.s.bits & ~mask == 0
            if (a in ap.lower) != known_true or (a in ap.upper) != possibly_true:
                bad.append(a)
        detail = f"{ap.show(atoms)}" + (f"; mismatched atoms {bad}" if bad else "")
        checks.append((name, not bad, detail))

    verdicts("Kripke-Kleene atom verdicts", kk_lp(program, atoms).value,
             dl.kripke_kleene_dl(delta, v).value)
    verdicts("well-founded atom verdicts", wf_lp(program, atoms).value,
             dl.well_founded_dl(delta, v).value)
    return EmbeddingReport(atoms, checks)
