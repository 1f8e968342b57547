"""Recursive-descent parser for the concrete formula syntax.

::

    S  ::= 'true' | 'false' | ATOM | '!' S | S '&' S | S '|' S | S '->' S
         | '(' S ')' | PO '[' P ']' | ('E' | 'A') '[' P ']'
    P  ::= 'X' S | S 'U' S | S 'U<=' INT S | 'F' S | 'G' S
    PO ::= 'Po' ('>=' | '>' | '<=' | '<' | '=') NUM
         | 'Po' 'in' ('[' | '(') NUM ',' NUM (']' | ')')

Precedence is ``!`` > ``&`` > ``|`` > ``->``; binary operators associate to
the left.  Atoms are double-quoted strings or bare identifiers that are not
keywords.  Inside ``[ ... ]`` the operands of ``U`` are full state formulae.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .formula import (
    TRUE,
    Always,
    And,
    Atom,
    BoundedUntil,
    Exists,
    Forall,
    Interval,
    Next,
    Not,
    Po,
    Until,
    WellFormednessError,
    check_well_formed,
    false,
    implies,
    is_poctl,
    lor,
    require_ctl,
    require_poctl,
    subformulae,
)

KEYWORDS = {"true", "false", "X", "U", "F", "G", "E", "A", "Po", "in"}

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<string>"[^"\n]*")
  | (?P<number>\d+(?:\.\d+)?(?:/\d+)?|\.\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>->|>=|<=|[!&|()\[\]<>=,])
    """,
    re.VERBOSE,
)


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str  # 'string', 'number', 'ident', 'op', 'eof'
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            newlines = chunk.count("\n")
            if newlines:
                line += newlines
                line_start = m.start() + chunk.rindex("\n") + 1
        else:
            tokens.append(Token(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise FormulaSyntaxError(f"{message}, found {found}", tok.line, tok.column)

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "ident") and self.tok.text == text

    def take(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected {text!r}")
        tok = self.tok
        self.pos += 1
        return tok

    def number(self) -> Fraction:
        tok = self.tok
        if tok.kind != "number":
            self.error("expected a number")
        self.pos += 1
        value = Fraction(tok.text)
        if not 0 <= value <= 1:
            raise FormulaSyntaxError(f"bound {tok.text} outside [0, 1]", tok.line, tok.column)
        return value

    # state formulae, lowest precedence first
    def state(self):
        left = self.disjunction()
        while self.at("->"):
            self.pos += 1
            left = implies(left, self.disjunction())
        return left

    def disjunction(self):
        left = self.conjunction()
        while self.at("|"):
            self.pos += 1
            left = lor(left, self.conjunction())
        return left

    def conjunction(self):
        left = self.unary()
        while self.at("&"):
            self.pos += 1
            left = And(left, self.unary())
        return left

    def unary(self):
        if self.at("!"):
            self.pos += 1
            return Not(self.unary())
        return self.primary()

    def primary(self):
        tok = self.tok
        if tok.kind == "string":
            self.pos += 1
            name = tok.text[1:-1]
            if not name:
                self.error("empty atom name", tok)
            return Atom(name)
        if tok.kind == "ident":
            if tok.text == "true":
                self.pos += 1
                return TRUE
            if tok.text == "false":
                self.pos += 1
                return false()
            if tok.text == "Po":
                self.pos += 1
                bound = self.bound()
                return Po(bound, self.bracketed_path())
            if tok.text in ("E", "A"):
                self.pos += 1
                path = self.bracketed_path()
                return Exists(path) if tok.text == "E" else Forall(path)
            if tok.text in KEYWORDS:
                self.error("expected a state formula")
            self.pos += 1
            return Atom(tok.text)
        if self.at("("):
            self.pos += 1
            inner = self.state()
            self.take(")")
            return inner
        self.error("expected a state formula")

    def bound(self) -> Interval:
        if self.at("in"):
            self.pos += 1
            if self.at("["):
                lower_closed = True
            elif self.at("("):
                lower_closed = False
            else:
                self.error("expected '[' or '('")
            self.pos += 1
            start = self.tok
            lo = self.number()
            self.take(",")
            hi = self.number()
            if self.at("]"):
                upper_closed = True
            elif self.at(")"):
                upper_closed = False
            else:
                self.error("expected ']' or ')'")
            self.pos += 1
            if lo > hi:
                raise FormulaSyntaxError("interval lower bound exceeds upper bound", start.line, start.column)
            return Interval(lo, hi, lower_closed, upper_closed)
        for op, make in (
            (">=", Interval.ge),
            (">", Interval.gt),
            ("<=", Interval.le),
            ("<", Interval.lt),
            ("=", Interval.eq),
        ):
            if self.at(op):
                self.pos += 1
                return make(self.number())
        self.error("expected a comparison after 'Po'")

    def bracketed_path(self):
        self.take("[")
        path = self.path()
        self.take("]")
        return path

    def path(self):
        for kw, make in (("X", Next), ("G", Always)):
            if self.at(kw):
                self.pos += 1
                return make(self.state())
        if self.at("F"):
            self.pos += 1
            return Until(TRUE, self.state())
        left = self.state()
        self.take("U")
        if self.at("<="):
            self.pos += 1
            tok = self.tok
            if tok.kind != "number" or not tok.text.isdigit():
                self.error("expected an integer step bound")
            self.pos += 1
            return BoundedUntil(left, self.state(), int(tok.text))
        return Until(left, self.state())

    def parse(self):
        f = self.state()
        if self.tok.kind != "eof":
            self.error("unexpected trailing input")
        return f


def parse_formula(text: str):
    """Parse either logic; a formula mixing Po with E/A is rejected."""
    f = _Parser(text).parse()
    if any(isinstance(n, (Exists, Forall)) for n in subformulae(f)) and not any(
        isinstance(n, Po) for n in subformulae(f)
    ):
        require_ctl(f)
    check_well_formed(f)
    return f


def parse_poctl(text: str):
    f = _Parser(text).parse()
    require_poctl(f)
    return f


def parse_ctl(text: str):
    f = _Parser(text).parse()
    require_ctl(f)
    return f


__all__ = [
    "FormulaSyntaxError",
    "WellFormednessError",
    "parse_formula",
    "parse_poctl",
    "parse_ctl",
    "tokenize",
    "is_poctl",
]
