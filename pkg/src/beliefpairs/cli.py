"""Command-line front end.

Exit codes: 0 on success, 1 on user error (bad input, unknown atom, caps
exceeded), 2 on an internal invariant violation or a failed theorem check.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import ael, dl, lp
from .errors import InvariantViolation
from .harness import report as reporting
from .harness.generate import GenConfig
from .harness.theorems import ORACLES, THEOREM_IDS, lookup, verify
from .lattice import BeliefPair, Fixpoint, Vocabulary, WorldSet
from .syntax import (
    K,
    is_objective,
    konolige,
    lp_to_dl,
    parse_default_theory,
    parse_formula,
    parse_modal_theory,
    parse_program,
    print_default_theory,
    print_modal_theory,
)
from .truth import believes, entails, eval_four

AEL_COMMANDS = ["expansions", "partial-expansions", "kk", "extensions", "partial-extensions", "wf"]
DL_COMMANDS = ["weak", "partial-weak", "kk", "extensions", "partial-extensions", "wf", "oracle"]
LP_COMMANDS = ["supported", "stable", "kk", "wf", "embed-check"]


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class _Failed(Exception):
    """A check ran to completion and reported failures."""


def _world_json(q: WorldSet) -> list[list[str]]:
    return [list(q.vocab.true_atoms(i)) for i in q]


class Output:
    def __init__(self, args, text: str):
        self.json = args.json
        self.command = " ".join(c for c in (args.group, getattr(args, "what", None)) if c)
        self.digest = hashlib.sha256(text.encode()).hexdigest()
        self.query = parse_formula(args.query) if getattr(args, "query", None) else None

    def header(self, semantics: str) -> dict:
        return {"command": self.command, "input_sha256": self.digest, "semantics": semantics}

    def world_sets(self, semantics: str, sets: list[WorldSet]):
        if self.json:
            obj = self.header(semantics)
            obj["world_sets"] = [_world_json(q) for q in sets]
            if self.query is not None:
                obj["query"] = [self._ask(q) for q in sets]
            print(json.dumps(obj))
            return
        print(f"# {semantics}: {len(sets)}")
        for q in sets:
            line = q.show()
            if self.query is not None:
                line += f"  {self._ask(q)}"
            print(line)

    def pairs(self, semantics: str, pairs: list[BeliefPair], fix: Optional[Fixpoint] = None):
        if self.json:
            obj = self.header(semantics)
            obj["pairs"] = [{"p": _world_json(b.p), "s": _world_json(b.s)} for b in pairs]
            if fix is not None:
                obj["iterations"] = fix.iterations
            if self.query is not None:
                obj["query"] = [self._ask_pair(b) for b in pairs]
            print(json.dumps(obj))
            return
        suffix = f", iterations: {fix.iterations}" if fix is not None else f": {len(pairs)}"
        print(f"# {semantics}{suffix}")
        for b in pairs:
            line = b.show()
            if self.query is not None:
                line += f"  {self._ask_pair(b)}"
            print(line)

    def _ask(self, q: WorldSet) -> bool:
        if is_objective(self.query):
            return entails(q, self.query)
        return believes(q, self.query)

    def _ask_pair(self, b: BeliefPair) -> str:
        return str(eval_four(b, 0, K(self.query)))


def _vocab(args, atoms) -> Vocabulary:
    if args.atoms:
        return Vocabulary(tuple(a.strip() for a in args.atoms.split(",") if a.strip())).covering(atoms)
    return Vocabulary(atoms)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def cmd_ael(args) -> int:
    text = _read(args.file)
    t = parse_modal_theory(text)
    v = _vocab(args, t.atoms())
    out = Output(args, text)
    what = args.what
    if what == "expansions":
        out.world_sets("expansions", ael.expansions(t, v, method=args.method))
    elif what == "partial-expansions":
        out.pairs("partial expansions", ael.partial_expansions(t, v))
    elif what == "kk":
        fix = ael.kripke_kleene(t, v)
        out.pairs("Kripke-Kleene", [fix.value], fix)
    elif what == "extensions":
        out.world_sets("extensions", ael.extensions_ael(t, v))
    elif what == "partial-extensions":
        out.pairs("partial extensions", ael.partial_extensions_ael(t, v))
    elif what == "wf":
        fix = ael.well_founded_ael(t, v)
        out.pairs("well-founded", [fix.value], fix)
    return 0


def cmd_dl(args) -> int:
    text = _read(args.file)
    delta = parse_default_theory(text)
    v = _vocab(args, delta.atoms())
    out = Output(args, text)
    what = args.what
    if what == "weak":
        out.world_sets("weak extensions", dl.weak_extensions(delta, v))
    elif what == "partial-weak":
        out.pairs("partial weak extensions", dl.partial_weak_extensions(delta, v))
    elif what == "kk":
        fix = dl.kripke_kleene_dl(delta, v)
        out.pairs("Kripke-Kleene", [fix.value], fix)
    elif what == "extensions":
        out.world_sets("extensions", dl.reiter_extensions(delta, v))
    elif what == "partial-extensions":
        out.pairs("partial extensions", dl.partial_extensions_dl(delta, v))
    elif what == "wf":
        fix = dl.well_founded_dl(delta, v)
        out.pairs("well-founded", [fix.value], fix)
    elif what == "oracle":
        out.world_sets("extensions (generating-defaults oracle)", dl.reiter_oracle(delta, v))
    return 0


def cmd_lp(args) -> int:
    if args.query:
        raise UsageError("--query applies to ael and dl commands only")
    text = _read(args.file)
    program = parse_program(text)
    atoms = _vocab(args, program.atoms()).atoms if args.atoms else program.atoms()
    out = Output(args, text)
    what = args.what
    if what in ("supported", "stable"):
        fn = lp.supported_models if what == "supported" else lp.stable_models
        models = fn(program, atoms)
        semantics = f"{what} models"
        if args.json:
            obj = out.header(semantics)
            obj["models"] = [[a for a in atoms if a in m] for m in models]
            print(json.dumps(obj))
        else:
            print(f"# {semantics}: {len(models)}")
            for m in models:
                print(lp.show_atoms(m, atoms))
        return 0
    if what in ("kk", "wf"):
        fix = lp.kk_lp(program, atoms) if what == "kk" else lp.wf_lp(program, atoms)
        semantics = "Kripke-Kleene" if what == "kk" else "well-founded"
        if args.json:
            obj = out.header(semantics)
            obj["lower"] = [a for a in atoms if a in fix.value.lower]
            obj["upper"] = [a for a in atoms if a in fix.value.upper]
            obj["iterations"] = fix.iterations
            print(json.dumps(obj))
        else:
            print(f"# {semantics}, iterations: {fix.iterations}")
            print(fix.value.show(atoms))
        return 0
    rep = lp.check_lp_embedding(program, atoms)
    if args.json:
        obj = out.header("embedding check")
        obj["checks"] = [{"name": n, "ok": ok, "detail": d} for n, ok, d in rep.checks]
        obj["passed"] = rep.passed
        print(json.dumps(obj))
    else:
        print(rep)
    if not rep.passed:
        raise _Failed("embedding check failed")
    return 0


def cmd_translate(args) -> int:
    text = _read(args.file)
    if args.what == "konolige":
        result = print_modal_theory(konolige(parse_default_theory(text)))
    else:
        result = print_default_theory(lp_to_dl(parse_program(text)))
    if args.json:
        obj = Output(args, text).header(args.what)
        obj["output"] = result
        print(json.dumps(obj))
    else:
        print(result, end="" if result.endswith("\n") else "\n")
    return 0


def _config(args) -> GenConfig:
    return GenConfig(seed=args.seed, n=args.n, depth=args.depth, samples=args.samples)


def cmd_verify(args) -> int:
    if args.theorem:
        ids = []
        for tid in args.theorem:
            lookup(tid)
            ids.append(tid)
    elif args.oracles:
        ids = list(ORACLES)
    else:
        ids = list(THEOREM_IDS)
        if args.with_oracles:
            ids += list(ORACLES)
    cfg = _config(args)
    reports = [verify(tid, cfg) for tid in ids]
    for r in reports:
        if args.json:
            print(json.dumps({
                "command": "verify", "theorem": r.theorem, "title": r.title,
                "checked": r.checked, "failures": [str(f) for f in r.failures],
                "elapsed_s": round(r.elapsed, 4), "passed": r.passed,
            }))
        else:
            print(r.line())
            for f in r.failures:
                print("  " + str(f).replace("\n", "\n  "))
    if args.report_dir:
        for path in reporting.write_theorem_report(reports, Path(args.report_dir)):
            print(f"wrote {path}", file=sys.stderr)
    failed = [r.theorem for r in reports if not r.passed]
    if failed:
        raise _Failed(f"failing checks: {', '.join(failed)}")
    return 0


def cmd_bench(args) -> int:
    try:
        ns = tuple(int(x) for x in args.ns.split(","))
    except ValueError:
        raise UsageError(f"--ns expects comma-separated integers, got {args.ns!r}") from None
    for n in ns:
        if not 1 <= n <= 3:
            raise UsageError("bench handles n between 1 and 3")
    rows = reporting.bench(seed=args.seed, ns=ns, samples=args.samples)
    print(",".join(reporting.TIMING_FIELDS))
    for r in rows:
        print(f"{r.logic},{r.method},{r.n},{r.instances},{r.total:.6f},{r.mean_ms:.4f}")
    if args.report_dir:
        for path in reporting.write_timing_report(rows, Path(args.report_dir)):
            print(f"wrote {path}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="beliefpairs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def common(p, query=True):
        p.add_argument("file")
        p.add_argument("--atoms", help="comma-separated vocabulary, fixes the atom order")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if query:
            p.add_argument("--query", help="formula to test against every result")

    p = sub.add_parser("ael", help="autoepistemic theories")
    p.add_argument("what", choices=AEL_COMMANDS)
    common(p)
    p.add_argument("--method", choices=["guess", "brute"], default="guess",
                   help="expansion search (default: guess modal atoms)")
    p.set_defaults(fn=cmd_ael)

    p = sub.add_parser("dl", help="default theories")
    p.add_argument("what", choices=DL_COMMANDS)
    common(p)
    p.set_defaults(fn=cmd_dl)

    p = sub.add_parser("lp", help="normal logic programs")
    p.add_argument("what", choices=LP_COMMANDS)
    common(p)
    p.set_defaults(fn=cmd_lp)

    p = sub.add_parser("translate", help="print a translated theory")
    p.add_argument("what", choices=["konolige", "lp2dl"])
    common(p, query=False)
    p.set_defaults(fn=cmd_translate)

    def gen_flags(p, samples):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=samples)
        p.add_argument("--report-dir", help="write CSV and PNG files here")

    p = sub.add_parser("verify", help="check theorems on random instances")
    which = p.add_mutually_exclusive_group()
    which.add_argument("--all", action="store_true", help="T1-T15 (the default)")
    which.add_argument("--theorem", action="append", metavar="ID")
    which.add_argument("--oracles", action="store_true", help="oracle agreement checks only")
    p.add_argument("--with-oracles", action="store_true", help="add oracle checks to --all")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--json", action="store_true")
    gen_flags(p, 100)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("bench", help="time KK/WF against full enumeration")
    p.add_argument("--ns", default="1,2,3")
    gen_flags(p, 5)
    p.set_defaults(fn=cmd_bench)
    return parser


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args)
    except SystemExit as e:  # --help
        return int(e.code or 0)
    except _Failed as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except InvariantViolation as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())
