"""Syntax trees, parsers and printers for the three input languages.

Modal theories are lists of formulas over atoms, Boolean connectives and the
belief operator ``K``. Default theories pair objective facts with defaults
``alpha : beta1, ..., betak / gamma``. Normal logic programs are clauses
``head :- a, not b.``.

Concrete syntax::

    formula   ~ & | -> <->, K prefix, true, false, parentheses
    theory    one formula per line, '#' starts a comment
    defaults  'W:' section (one fact per line), 'D:' section of
              'alpha : beta1, beta2 / gamma.' items
    program   'head :- lit1, not lit2.' and facts 'head.'

Precedence from tightest: ``~``/``K``, ``&``, ``|``, ``->`` (right
associative), ``<->``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .errors import NotObjective, ParseError, UnexpectedCharacter

ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*")
RESERVED = frozenset({"true", "false"})


# ----------------------------------------------------------------------------
# Formulas
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class TrueConst:
    def __str__(self) -> str:
        return "true"


@dataclass(frozen=True)
class FalseConst:
    def __str__(self) -> str:
        return "false"


@dataclass(frozen=True)
class Not:
    arg: "Formula"

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class K:
    arg: "Formula"

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return show(self)


Formula = Union[Atom, TrueConst, FalseConst, Not, K, And, Or, Implies, Iff]
BINARY = (And, Or, Implies, Iff)

TRUE = TrueConst()
FALSE = FalseConst()


def conj(parts: Iterable[Formula]) -> Formula:
    """Left-nested conjunction; the empty conjunction is ``true``."""
    result = None
    for f in parts:
        result = f if result is None else And(result, f)
    return TRUE if result is None else result


def walk(f: Formula) -> Iterator[Formula]:
    """Preorder, left to right."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, BINARY):
            stack.append(g.right)
            stack.append(g.left)
        elif isinstance(g, (Not, K)):
            stack.append(g.arg)


def atoms_of(formulas: Iterable[Formula]) -> tuple[str, ...]:
    """Atom names in order of first occurrence."""
    seen: dict[str, None] = {}
    for f in formulas:
        for g in walk(f):
            if isinstance(g, Atom):
                seen.setdefault(g.name)
    return tuple(seen)


def is_objective(f: Formula) -> bool:
    return not any(isinstance(g, K) for g in walk(f))


def require_objective(f: Formula, what: str = "formula") -> Formula:
    if not is_objective(f):
        raise NotObjective(f"{what} must not contain K: {show(f)}")
    return f


def depth(f: Formula) -> int:
    if isinstance(f, BINARY):
        return 1 + max(depth(f.left), depth(f.right))
    if isinstance(f, (Not, K)):
        return 1 + depth(f.arg)
    return 0


# Binding strength used by the printer; higher binds tighter.
_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_SYMBOL = {Iff: "<->", Implies: "->", Or: "|", And: "&"}


def show(f: Formula) -> str:
    """Print with the minimal parentheses that parse back to ``f``."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, TrueConst):
        return "true"
    if isinstance(f, FalseConst):
        return "false"
    if isinstance(f, (Not, K)):
        inner = show(f.arg)
        if isinstance(f.arg, BINARY):
            inner = f"({inner})"
        return ("~" if isinstance(f, Not) else "K") + inner
    prec = _PREC[type(f)]
    left, right = show(f.left), show(f.right)
    lp = _PREC.get(type(f.left), 9)
    rp = _PREC.get(type(f.right), 9)
    if isinstance(f, Implies):
        # right associative
        if lp <= prec:
            left = f"({left})"
        if rp < prec:
            right = f"({right})"
    else:
        if lp < prec:
            left = f"({left})"
        if rp <= prec:
            right = f"({right})"
    return f"{left} {_SYMBOL[type(f)]} {right}"


# ----------------------------------------------------------------------------
# Theories and programs
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class ModalTheory:
    formulas: tuple[Formula, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "formulas", tuple(self.formulas))

    def atoms(self) -> tuple[str, ...]:
        return atoms_of(self.formulas)

    def __len__(self) -> int:
        return len(self.formulas)

    def __iter__(self):
        return iter(self.formulas)

    def __str__(self) -> str:
        return print_modal_theory(self)


@dataclass(frozen=True)
class Default:
    prerequisite: Formula
    justifications: tuple[Formula, ...]
    consequent: Formula

    def __post_init__(self):
        object.__setattr__(self, "justifications", tuple(self.justifications))
        if not self.justifications:
            raise ValueError("a default needs at least one justification")
        require_objective(self.prerequisite, "default prerequisite")
        for b in self.justifications:
            require_objective(b, "default justification")
        require_objective(self.consequent, "default consequent")

    def formulas(self) -> tuple[Formula, ...]:
        return (self.prerequisite, *self.justifications, self.consequent)

    def __str__(self) -> str:
        betas = ", ".join(show(b) for b in self.justifications)
        return f"{show(self.prerequisite)} : {betas} / {show(self.consequent)}"


@dataclass(frozen=True)
class DefaultTheory:
    facts: tuple[Formula, ...] = ()
    defaults: tuple[Default, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "facts", tuple(self.facts))
        object.__setattr__(self, "defaults", tuple(self.defaults))
        for f in self.facts:
            require_objective(f, "fact")

    def atoms(self) -> tuple[str, ...]:
        fs = list(self.facts)
        for d in self.defaults:
            fs.extend(d.formulas())
        return atoms_of(fs)

    def __str__(self) -> str:
        return print_default_theory(self)


@dataclass(frozen=True)
class Clause:
    head: str
    pos: tuple[str, ...] = ()
    neg: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pos", tuple(self.pos))
        object.__setattr__(self, "neg", tuple(self.neg))

    def __str__(self) -> str:
        lits = list(self.pos) + [f"not {a}" for a in self.neg]
        if not lits:
            return f"{self.head}."
        return f"{self.head} :- {', '.join(lits)}."


@dataclass(frozen=True)
class Program:
    clauses: tuple[Clause, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(self.clauses))

    def atoms(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for c in self.clauses:
            for a in (c.head, *c.pos, *c.neg):
                seen.setdefault(a)
        return tuple(seen)

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self):
        return iter(self.clauses)

    def __str__(self) -> str:
        return print_program(self)


def print_modal_theory(t: ModalTheory) -> str:
    return "".join(show(f) + "\n" for f in t.formulas)


def print_default_theory(delta: DefaultTheory) -> str:
    lines = []
    if delta.facts:
        lines.append("W:")
        lines.extend(show(f) for f in delta.facts)
    if delta.defaults:
        lines.append("D:")
        lines.extend(f"{d}." for d in delta.defaults)
    return "".join(line + "\n" for line in lines)


def print_program(p: Program) -> str:
    return "".join(f"{c}\n" for c in p.clauses)


# ----------------------------------------------------------------------------
# Lexer
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<iff><->)|(?P<imp>->)|(?P<rule>:-)"
    r"|(?P<atom>[a-z][a-zA-Z0-9_]*)|(?P<K>K)|(?P<W>W:)|(?P<D>D:)"
    r"|(?P<not>~)|(?P<and>&)|(?P<or>\|)|(?P<lp>\()|(?P<rp>\))"
    r"|(?P<colon>:)|(?P<comma>,)|(?P<slash>/)|(?P<dot>\.)"
)


def tokenize(text: str) -> list[Token]:
    """Tokens including ``nl``; whitespace and comments are dropped."""
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise UnexpectedCharacter(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            tokens.append(Token("nl", "\n", line, col))
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            if kind == "atom" and m.group() in RESERVED:
                kind = m.group()
            tokens.append(Token(kind, m.group(), line, col))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token], end_line: int = 1, end_col: int = 1):
        self.tokens = tokens
        self.i = 0
        self.end = Token("eof", "", end_line, end_col)

    def peek(self) -> Token:
        return self.tokens[self.i] if self.i < len(self.tokens) else self.end

    def take(self) -> Token:
        tok = self.peek()
        self.i += 1
        return tok

    def at(self, *kinds: str) -> bool:
        return self.peek().kind in kinds

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            self.fail(f"expected {what}", tok)
        return self.take()

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"{message}, found {found}", tok.line, tok.col)

    # formula := imp ('<->' imp)*
    def formula(self) -> Formula:
        f = self.implication()
        while self.at("iff"):
            self.take()
            f = Iff(f, self.implication())
        return f

    def implication(self) -> Formula:
        f = self.disjunction()
        if self.at("imp"):
            self.take()
            return Implies(f, self.implication())
        return f

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.at("or"):
            self.take()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.at("and"):
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "not":
            self.take()
            return Not(self.unary())
        if tok.kind == "K":
            self.take()
            return K(self.unary())
        if tok.kind == "atom":
            self.take()
            return Atom(tok.text)
        if tok.kind == "true":
            self.take()
            return TRUE
        if tok.kind == "false":
            self.take()
            return FALSE
        if tok.kind == "lp":
            self.take()
            f = self.formula()
            self.expect("rp", "')'")
            return f
        self.fail("expected a formula", tok)

    def done(self):
        if self.i < len(self.tokens):
            self.fail("unexpected trailing input")


def _lines(tokens: list[Token]) -> list[list[Token]]:
    out: list[list[Token]] = [[]]
    for tok in tokens:
        if tok.kind == "nl":
            out.append([])
        else:
            out[-1].append(tok)
    return [ln for ln in out if ln]


def _parse_line_formula(line: list[Token]) -> Formula:
    last = line[-1]
    p = _Parser(line, last.line, last.col + len(last.text))
    f = p.formula()
    p.done()
    return f


def parse_formula(text: str) -> Formula:
    tokens = [t for t in tokenize(text) if t.kind != "nl"]
    if not tokens:
        raise ParseError("empty formula", 1, 1)
    return _parse_line_formula(tokens)


def parse_objective(text: str) -> Formula:
    return require_objective(parse_formula(text))


def parse_modal_theory(text: str) -> ModalTheory:
    return ModalTheory(tuple(_parse_line_formula(ln) for ln in _lines(tokenize(text))))


def parse_default_theory(text: str) -> DefaultTheory:
    facts: list[Formula] = []
    defaults: list[Default] = []
    section = None
    pending: list[Token] = []

    def flush():
        if not pending:
            return
        if section == "W":
            facts.append(_objective_line(pending))
        else:
            last = pending[-1]
            raise ParseError("default not terminated by '.'", last.line, last.col)
        pending.clear()

    for tok in tokenize(text):
        if tok.kind in ("W", "D"):
            flush()
            section = tok.kind
        elif section is None:
            if tok.kind != "nl":
                raise ParseError("expected a 'W:' or 'D:' section header", tok.line, tok.col)
        elif section == "W":
            if tok.kind == "nl":
                flush()
            else:
                pending.append(tok)
        elif tok.kind != "nl":
            # defaults may span lines; '.' terminates each one
            pending.append(tok)
            if tok.kind == "dot":
                defaults.append(_parse_default(pending))
                pending.clear()
    flush()
    return DefaultTheory(tuple(facts), tuple(defaults))


def _objective_line(line: list[Token]) -> Formula:
    f = _parse_line_formula(line)
    if not is_objective(f):
        raise ParseError("modal operator inside a fact", line[0].line, line[0].col)
    return f


def _parse_default(tokens: list[Token]) -> Default:
    last = tokens[-1]
    p = _Parser(tokens, last.line, last.col + 1)
    first = p.peek()
    alpha = p.formula()
    p.expect("colon", "':'")
    betas = [p.formula()]
    while p.at("comma"):
        p.take()
        betas.append(p.formula())
    p.expect("slash", "'/'")
    gamma = p.formula()
    p.expect("dot", "'.'")
    p.done()
    if not all(is_objective(f) for f in (alpha, gamma, *betas)):
        raise ParseError("modal operator inside a default", first.line, first.col)
    return Default(alpha, tuple(betas), gamma)


def parse_program(text: str) -> Program:
    tokens = [t for t in tokenize(text) if t.kind != "nl"]
    end = tokens[-1] if tokens else Token("eof", "", 1, 1)
    p = _Parser(tokens, end.line, end.col + 1)
    clauses = []
    while not p.at("eof"):
        tok = p.peek()
        if tok.kind == "rule":
            p.fail("clause has no head", tok)
        if tok.kind in ("K", "not"):
            p.fail("modal or classical operators are not allowed in a program", tok)
        head = p.expect("atom", "a clause head").text
        pos: list[str] = []
        neg: list[str] = []
        if p.at("rule"):
            p.take()
            if not p.at("dot"):
                while True:
                    lit = p.expect("atom", "a body literal")
                    if lit.text == "not":
                        neg.append(p.expect("atom", "an atom after 'not'").text)
                    else:
                        pos.append(lit.text)
                    if not p.at("comma"):
                        break
                    p.take()
        p.expect("dot", "'.'")
        if head == "not":
            p.fail("'not' cannot be a clause head", tok)
        clauses.append(Clause(head, tuple(pos), tuple(neg)))
    return Program(tuple(clauses))


# ----------------------------------------------------------------------------
# Translations
# ----------------------------------------------------------------------------


def konolige_default(d: Default) -> Formula:
    """``K alpha & ~K~beta1 & ... & ~K~betak -> gamma``."""
    body = conj([K(d.prerequisite), *(Not(K(Not(b))) for b in d.justifications)])
    return Implies(body, d.consequent)


def konolige(delta: DefaultTheory) -> ModalTheory:
    """Modal encoding of a default theory: facts first, then one formula per default."""
    return ModalTheory(tuple(delta.facts) + tuple(konolige_default(d) for d in delta.defaults))


def lp_to_dl(program: Program) -> DefaultTheory:
    """Clause ``p :- q1..qm, not r1..rk`` becomes ``q1 & .. & qm : ~r1, .., ~rk / p``."""
    defaults = []
    for c in program.clauses:
        alpha = conj(Atom(a) for a in c.pos)
        betas = tuple(Not(Atom(r)) for r in c.neg) or (TRUE,)
        defaults.append(Default(alpha, betas, Atom(c.head)))
    return DefaultTheory((), tuple(defaults))


def modal_subformulas(t: ModalTheory | Iterable[Formula]) -> list[Formula]:
    """Distinct ``phi`` such that ``K phi`` occurs, in first-occurrence order."""
    formulas = t.formulas if isinstance(t, ModalTheory) else t
    seen: dict[Formula, None] = {}
    for f in formulas:
        for g in walk(f):
            if isinstance(g, K):
                seen.setdefault(g.arg)
    return list(seen)
