"""Theorem checks over generated instances.

Each theorem is a function from one instance (plus the fixed vocabulary and a
seeded RNG for sampled sub-checks) to a list of failure messages. Where a
claim quantifies over the lattice, the check enumerates the lattice; where it
quantifies over comparable pairs, it samples them.

``THEOREM_IDS`` lists T1-T15 in order. ``ORACLE_IDS`` are the agreement
checks between operator-based fixpoint lists and independent algorithms.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .. import ael, dl, lp
from ..errors import InvariantViolation, VocabularyTooLarge
from ..lattice import (
    BeliefPair,
    Vocabulary,
    WorldSet,
    is_complete,
    is_consistent,
    leq_kn,
    leq_w,
)
from ..syntax import (
    Atom,
    DefaultTheory,
    ModalTheory,
    Program,
    K,
    konolige,
    modal_subformulas,
    parse_default_theory,
    parse_modal_theory,
    parse_program,
    print_default_theory,
    print_modal_theory,
    print_program,
    show,
)
from ..truth import FourVal, believes, entails, eval_four
from .generate import GenConfig, gen_default_theory, gen_formula, gen_modal_theory, gen_program

PROBES = 6
MONOTONE_SAMPLES = 40


@dataclass
class Failure:
    theorem: str
    seed: int
    index: int
    atoms: tuple[str, ...]
    instance: str
    message: str

    def reproduction(self) -> str:
        return (f"{self.theorem} seed={self.seed} index={self.index} "
                f"atoms={','.join(self.atoms)}\n{self.instance}")

    def __str__(self) -> str:
        return f"{self.message}\n{self.reproduction()}"


@dataclass
class TheoremReport:
    theorem: str
    title: str
    checked: int = 0
    failures: list[Failure] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.theorem} {self.title}: {self.checked} instances, "
                f"{len(self.failures)} failures, {self.elapsed:.2f}s")


@dataclass(frozen=True)
class Theorem:
    id: str
    title: str
    language: str  # "modal" | "default" | "program"
    max_n: int
    check: Callable


# ----------------------------------------------------------------------------
# Helpers
# ----------------------------------------------------------------------------


def _sets(v: Vocabulary) -> list[WorldSet]:
    return [WorldSet(v, b) for b in range(1 << v.size)]


def _pairs(v: Vocabulary) -> list[BeliefPair]:
    sets = _sets(v)
    return [BeliefPair(p, s) for p in sets for s in sets]


def _comparable_pairs(v: Vocabulary, rng: random.Random, count: int):
    """Random ``b1 <=kn b2``: shrink P, grow S."""
    for _ in range(count):
        p1, s1 = rng.getrandbits(v.size), rng.getrandbits(v.size)
        p2 = p1 & rng.getrandbits(v.size)
        s2 = s1 | rng.getrandbits(v.size)
        yield (BeliefPair(WorldSet(v, p1), WorldSet(v, s1)),
               BeliefPair(WorldSet(v, p2), WorldSet(v, s2)))


def _modal_probes(t: ModalTheory, v: Vocabulary, rng: random.Random):
    probes = list(modal_subformulas(t)) + [Atom(a) for a in v.atoms]
    probes += [gen_formula(rng, v.atoms, 2) for _ in range(PROBES)]
    return probes


def _objective_probes(delta: DefaultTheory, v: Vocabulary, rng: random.Random):
    probes = [Atom(a) for a in v.atoms] + list(delta.facts)
    for d in delta.defaults:
        probes.extend(d.formulas())
    probes += [gen_formula(rng, v.atoms, 2, modal=False) for _ in range(PROBES)]
    return probes


def _least(name: str, x: BeliefPair, fixpoints: list[BeliefPair], errs: list[str]):
    if x not in fixpoints:
        errs.append(f"{name} {x} is not among the brute-force fixpoints")
    for b in fixpoints:
        if not leq_kn(x, b):
            errs.append(f"{name} {x} is not below fixpoint {b}")


def _monotone(name: str, op, v: Vocabulary, rng: random.Random, errs: list[str]):
    for b1, b2 in _comparable_pairs(v, rng, MONOTONE_SAMPLES):
        if not leq_kn(op(b1), op(b2)):
            errs.append(f"{name} not monotone: {b1} <= {b2} but images are not ordered")
            return


def _antimonotone_table(name: str, table: list[int], errs: list[str]):
    # q2 subset of q1 means q1 below q2; antimonotone: image(q2) below image(q1)
    for q1 in range(len(table)):
        for q2 in range(len(table)):
            if q2 & ~q1 == 0 and table[q1] & ~table[q2] != 0:
                errs.append(f"{name} not antimonotone at bit-vectors {q1:b} / {q2:b}")
                return


def _minimal_world_sets(name: str, chosen: list[WorldSet], pool: list[WorldSet], errs: list[str]):
    for q in chosen:
        if q not in pool:
            errs.append(f"{name} {q} is not in the comparison pool")
        for other in pool:
            if other != q and leq_w(other, q):
                errs.append(f"{name} {q} is not minimal: {other} lies below it")


def _minimal_pairs(name: str, chosen: list[BeliefPair], pool: list[BeliefPair], errs: list[str]):
    for b in chosen:
        if b not in pool:
            errs.append(f"{name} {b} is not in the comparison pool")
        for o in pool:
            if o != b and leq_w(o.p, b.p) and leq_w(o.s, b.s):
                errs.append(f"{name} {b} is not minimal: {o} lies below it componentwise")


# ----------------------------------------------------------------------------
# Autoepistemic theorems
# ----------------------------------------------------------------------------


def t1(t: ModalTheory, v: Vocabulary, rng) -> list[str]:
    errs = []
    for q in _sets(v):
        d = ael.d_moore(t, q)
        if ael.d_approx(t, BeliefPair(q, q)) != BeliefPair(d, d):
            errs.append(f"d_approx on complete pair at {q} differs from d_moore {d}")
    return errs


def t2(t: ModalTheory, v: Vocabulary, rng) -> list[str]:
    errs = []
    kk = ael.kripke_kleene(t, v).value
    if not is_consistent(kk):
        errs.append(f"KK {kk} is inconsistent")
    _least("KK", kk, ael.partial_expansions(t, v), errs)
    exps = ael.expansions_brute(t, v)
    for phi in _modal_probes(t, v, rng):
        val = eval_four(kk, 0, K(phi))
        if val is FourVal.T4 and not all(believes(q, phi) for q in exps):
            errs.append(f"K {show(phi)} true under KK but missing from an expansion")
        if val is FourVal.F4 and any(believes(q, phi) for q in exps):
            errs.append(f"K {show(phi)} false under KK but held by an expansion")
    if is_complete(kk) and exps != [kk.p]:
        errs.append(f"KK complete but expansions are {[str(q) for q in exps]}")
    _monotone("d_approx", lambda b: ael.d_approx(t, b), v, rng, errs)
    return errs


def t3(t: ModalTheory, v: Vocabulary, rng) -> list[str]:
    errs = []
    table = ael.stable_table(t, v)
    for q in _sets(v):
        fixed = table[q.bits] == q.bits
        pair = BeliefPair(q, q)
        if fixed != (ael.d_stable_pair(t, pair) == pair):
            errs.append(f"fixpoint status of {q} differs between d_stable and d_stable_pair")
    return errs


def t4(t: ModalTheory, v: Vocabulary, rng) -> list[str]:
    errs = []
    wf = ael.well_founded_ael(t, v).value
    if not is_consistent(wf):
        errs.append(f"WF {wf} is inconsistent")
    _least("WF", wf, ael.partial_extensions_ael(t, v), errs)
    exts = ael.extensions_ael(t, v)
    for phi in _modal_probes(t, v, rng):
        val = eval_four(wf, 0, K(phi))
        if val is FourVal.T4 and not all(believes(q, phi) for q in exts):
            errs.append(f"K {show(phi)} true under WF but missing from an extension")
        if val is FourVal.F4 and any(believes(q, phi) for q in exts):
            errs.append(f"K {show(phi)} false under WF but held by an extension")
    if is_complete(wf) and exts != [wf.p]:
        errs.append(f"WF complete but extensions are {[str(q) for q in exts]}")
    _antimonotone_table("d_stable", ael.stable_table(t, v), errs)
    _monotone("d_stable_pair", lambda b: ael.d_stable_pair(t, b), v, rng, errs)
    return errs


def t5(t: ModalTheory, v: Vocabulary, rng) -> list[str]:
    errs = []
    kk = ael.kripke_kleene(t, v).value
    wf = ael.well_founded_ael(t, v).value
    if not leq_kn(kk, wf):
        errs.append(f"KK {kk} not below WF {wf}")
    _minimal_world_sets("extension", ael.extensions_ael(t, v), ael.expansions_brute(t, v), errs)
    _minimal_pairs("partial extension", ael.partial_extensions_ael(t, v),
                   ael.partial_expansions(t, v), errs)
    return errs


# ----------------------------------------------------------------------------
# Default-logic theorems
# ----------------------------------------------------------------------------


def t6(delta: DefaultTheory, v: Vocabulary, rng) -> list[str]:
    errs = []
    for q in _sets(v):
        out = dl.e_approx(delta, BeliefPair(q, q))
        if not is_complete(out):
            errs.append(f"e_approx maps complete {q} to incomplete {out}")
    return errs


def t7(delta: DefaultTheory, v: Vocabulary, rng) -> list[str]:
    errs = []
    for q in _sets(v):
        pair = BeliefPair(q, q)
        if (dl.e_weak(delta, q) == q) != (dl.e_approx(delta, pair) == pair):
            errs.append(f"fixpoint status of {q} differs between e_weak and e_approx")
    weak = dl.weak_extensions(delta, v)
    oracle = dl.weak_oracle(delta, v)
    if weak != oracle:
        errs.append(f"weak extensions {[str(q) for q in weak]} != oracle {[str(q) for q in oracle]}")
    return errs


def t8(delta: DefaultTheory, v: Vocabulary, rng) -> list[str]:
    errs = []
    kk = dl.kripke_kleene_dl(delta, v).value
    if not is_consistent(kk):
        errs.append(f"KK {kk} is inconsistent")
    _least("KK", kk, dl.partial_weak_extensions(delta, v), errs)
    weak = dl.weak_extensions(delta, v)
    for phi in _objective_probes(delta, v, rng):
        if entails(kk.p, phi) and not all(entails(q, phi) for q in weak):
            errs.append(f"{show(phi)} entailed by KK's P but not by every weak extension")
        if not entails(kk.s, phi) and any(entails(q, phi) for q in weak):
            errs.append(f"{show(phi)} refuted in KK's S but entailed by a weak extension")
    if is_complete(kk) and weak != [kk.p]:
        errs.append(f"KK complete but weak extensions are {[str(q) for q in weak]}")
    _monotone("e_approx", lambda b: dl.e_approx(delta, b), v, rng, errs)
    return errs


def t9(delta: DefaultTheory, v: Vocabulary, rng) -> list[str]:
    ext = dl.reiter_extensions(delta, v)
    oracle = dl.reiter_oracle(delta, v)
    if ext != oracle:
        return [f"extensions {[str(q) for q in ext]} != Reiter oracle {[str(q) for q in oracle]}"]
    return []


def t10(delta: DefaultTheory, v: Vocabulary, rng) -> list[str]:
    errs = []
    table = dl.stable_table(delta, v)
    for q in _sets(v):
        pair = BeliefPair(q, q)
        if (table[q.bits] == q.bits) != (dl.e_stable_pair(delta, pair) == pair):
            errs.append(f"fixpoint status of {q} differs between e_stable and e_stable_pair")
    return errs


def t11(delta: DefaultTheory, v: Vocabulary, rng) -> list[str]:
    errs = []
    _antimonotone_table("e_stable", dl.stable_table(delta, v), errs)
    _monotone("e_stable_pair", lambda b: dl.e_stable_pair(delta, b), v, rng, errs)
    return errs


def t12(delta: DefaultTheory, v: Vocabulary, rng) -> list[str]:
    errs = []
    wf = dl.well_founded_dl(delta, v).value
    if not is_consistent(wf):
        errs.append(f"WF {wf} is inconsistent")
    _least("WF", wf, dl.partial_extensions_dl(delta, v), errs)
    exts = dl.reiter_extensions(delta, v)
    for phi in _objective_probes(delta, v, rng):
        if entails(wf.p, phi) and not all(entails(q, phi) for q in exts):
            errs.append(f"{show(phi)} entailed by WF's P but not by every extension")
        if not entails(wf.s, phi) and any(entails(q, phi) for q in exts):
            errs.append(f"{show(phi)} refuted in WF's S but entailed by an extension")
    if is_complete(wf) and exts != [wf.p]:
        errs.append(f"WF complete but extensions are {[str(q) for q in exts]}")
    return errs


def t13(delta: DefaultTheory, v: Vocabulary, rng) -> list[str]:
    errs = []
    kk = dl.kripke_kleene_dl(delta, v).value
    wf = dl.well_founded_dl(delta, v).value
    if not leq_kn(kk, wf):
        errs.append(f"KK {kk} not below WF {wf}")
    _minimal_world_sets("extension", dl.reiter_extensions(delta, v),
                        dl.weak_extensions(delta, v), errs)
    _minimal_pairs("partial extension", dl.partial_extensions_dl(delta, v),
                   dl.partial_weak_extensions(delta, v), errs)
    return errs


def t14(delta: DefaultTheory, v: Vocabulary, rng) -> list[str]:
    errs = []
    t = konolige(delta)
    for q in _sets(v):
        if dl.e_weak(delta, q) != ael.d_moore(t, q):
            errs.append(f"E != D at {q}")
        if dl.e_stable(delta, q) != ael.d_stable(t, q):
            errs.append(f"E^st != D^st at {q}")
    for b in _pairs(v):
        if dl.e_approx(delta, b) != ael.d_approx(t, b):
            errs.append(f"approximating operators differ at {b}")
        if dl.e_stable_pair(delta, b) != ael.d_stable_pair(t, b):
            errs.append(f"stable pair operators differ at {b}")
    return errs


# ----------------------------------------------------------------------------
# Logic programs
# ----------------------------------------------------------------------------


def t15(program: Program, v: Vocabulary, rng) -> list[str]:
    report = lp.check_lp_embedding(program, v.atoms)
    return [f"{name}: {detail}" for name, ok, detail in report.checks if not ok]


# ----------------------------------------------------------------------------
# Oracle agreement
# ----------------------------------------------------------------------------


def o_guess(t: ModalTheory, v: Vocabulary, rng) -> list[str]:
    guess = ael.expansions_guess(t, v)
    brute = ael.expansions_brute(t, v)
    if guess != brute:
        return [f"guessed expansions {[str(q) for q in guess]} != brute force {[str(q) for q in brute]}"]
    return []


def o_gl(program: Program, v: Vocabulary, rng) -> list[str]:
    ours, theirs = lp.stable_models(program, v.atoms), lp.gl_oracle(program, v.atoms)
    return [] if ours == theirs else [f"stable models {ours} != GL oracle {theirs}"]


def o_alternating(program: Program, v: Vocabulary, rng) -> list[str]:
    ours = lp.wf_lp(program, v.atoms).value
    theirs = lp.alternating_oracle(program, v.atoms)
    return [] if ours == theirs else [f"wf_lp {ours} != alternating oracle {theirs}"]


THEOREMS = {
    th.id: th
    for th in [
        Theorem("T1", "complete pairs reduce the approximating operator to Moore's", "modal", 4, t1),
        Theorem("T2", "Kripke-Kleene fixpoint is consistent and below every partial expansion", "modal", 3, t2),
        Theorem("T3", "extensions are exactly the complete partial extensions", "modal", 4, t3),
        Theorem("T4", "well-founded fixpoint approximates all partial extensions", "modal", 3, t4),
        Theorem("T5", "KK below WF; extensions are minimal expansions", "modal", 3, t5),
        Theorem("T6", "the default operator preserves completeness", "default", 4, t6),
        Theorem("T7", "weak extensions are the complete partial weak extensions", "default", 4, t7),
        Theorem("T8", "default KK is consistent and approximates weak extensions", "default", 3, t8),
        Theorem("T9", "stable revision fixpoints are Reiter extensions", "default", 4, t9),
        Theorem("T10", "extensions are exactly the complete partial extensions", "default", 4, t10),
        Theorem("T11", "stable revision is antimonotone, its pair form monotone", "default", 3, t11),
        Theorem("T12", "default WF approximates all partial extensions", "default", 3, t12),
        Theorem("T13", "KK below WF; extensions are minimal weak extensions", "default", 3, t13),
        Theorem("T14", "Konolige translation aligns all four operators", "default", 3, t14),
        Theorem("T15", "logic programs embed into default logic", "program", 4, t15),
    ]
}
THEOREM_IDS = list(THEOREMS)

ORACLES = {
    th.id: th
    for th in [
        Theorem("O1", "guessed expansions match brute force", "modal", 3, o_guess),
        Theorem("O2", "Reiter extensions match the generating-defaults oracle", "default", 4, t9),
        Theorem("O3", "stable models match the GL-reduct oracle", "program", 16, o_gl),
        Theorem("O4", "well-founded model matches the alternating fixpoint", "program", 16, o_alternating),
    ]
}

_GENERATORS = {"modal": gen_modal_theory, "default": gen_default_theory, "program": gen_program}
_PRINTERS = {"modal": print_modal_theory, "default": print_default_theory, "program": print_program}
_PARSERS = {"modal": parse_modal_theory, "default": parse_default_theory, "program": parse_program}


def lookup(theorem_id: str) -> Theorem:
    try:
        return THEOREMS.get(theorem_id) or ORACLES[theorem_id]
    except KeyError:
        known = ", ".join(THEOREM_IDS + list(ORACLES))
        raise ValueError(f"unknown theorem id {theorem_id!r} (known: {known})") from None


def _probe_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"probe:{seed}:{index}")


def _run(th: Theorem, inst, v: Vocabulary, rng: random.Random) -> list[str]:
    # a fixpoint iteration overrunning its cap means a non-monotone operator
    try:
        return th.check(inst, v, rng)
    except InvariantViolation as e:
        return [f"invariant violated: {e}"]


def verify(theorem_id: str, cfg: GenConfig, instances: Optional[list] = None) -> TheoremReport:
    """Check one theorem on ``cfg.samples`` generated instances.

    Extra ``instances`` (already parsed, same language) are checked first and
    reported with negative indices.
    """
    th = lookup(theorem_id)
    if cfg.n > th.max_n:
        raise VocabularyTooLarge(f"{th.id} needs n <= {th.max_n}, got n={cfg.n}")
    v = cfg.vocab
    report = TheoremReport(th.id, th.title)
    start = time.perf_counter()
    work = [(-1 - k, inst) for k, inst in enumerate(instances or [])]
    work += [(k, _GENERATORS[th.language](cfg, k)) for k in range(cfg.samples)]
    for index, inst in work:
        messages = _run(th, inst, v, _probe_rng(cfg.seed, index))
        report.checked += 1
        if messages:
            report.failures.append(Failure(
                th.id, cfg.seed, index, v.atoms, _PRINTERS[th.language](inst),
                "; ".join(messages[:5])))
    report.elapsed = time.perf_counter() - start
    return report


def reproduce(failure: Failure) -> list[str]:
    """Re-run a recorded failure from its printed instance; returns the messages."""
    th = lookup(failure.theorem)
    inst = _PARSERS[th.language](failure.instance)
    v = Vocabulary(failure.atoms)
    return _run(th, inst, v, _probe_rng(failure.seed, failure.index))


def verify_all(cfg: GenConfig, ids: Optional[list[str]] = None) -> list[TheoremReport]:
    return [verify(tid, cfg) for tid in (ids or THEOREM_IDS)]
