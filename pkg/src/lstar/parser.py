"""Surface syntax for ``.lst`` files.

Grammar (``--`` starts a line comment)::

    file   ::= decl*
    decl   ::= 'mode' NAME
             | 'def' NAME ':' term '=' term
             | 'assume' NAME ':' term
             | 'check' term ':' term
    term   ::= '\\' binder+ '.' term
             | 'Sg' binder '.' term
             | binder+ '->' term
             | app ['->' term]
    binder ::= '(' NAME ':' term ')'
    app    ::= post+
    post   ::= atom ('.1' | '.2')*
    atom   ::= '*' | NAME | '(' term ')' | '(' term ',' term ')'

Names may end in ``'`` or ``*`` characters, which become the variable marker.
Identifiers are resolved while parsing: bound names become de Bruijn
indices, ``def`` names are expanded in place, reserved names become constants.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError, UnboundVariable
from .terms import (
    PLAIN,
    PRIMED,
    STARRED,
    App,
    Const,
    Lam,
    Marker,
    Pair,
    Pi,
    Proj,
    Sigma,
    Sort,
    Term,
    Var,
    shift,
)

CONSTANTS = (
    "U T qstar qFun qSum Eq Rel reflstar qFunE qSumE qEq qRel qEqE qRelE rel".split()
)
MODES = ("lstar", "lstarU", "lstarUeq", "internal")
KEYWORDS = {"Sg", "def", "assume", "check", "mode"}
RESERVED = set(CONSTANTS) | KEYWORDS | {"_"}

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+|--[^\n]*)
  | (?P<nl>\n)
  | (?P<proj>\.[12](?![A-Za-z0-9_]))
  | (?P<arrow>->|→)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*['*]*)
  | (?P<sym>[()\\,:.=*λΣ])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind != "ws":
            tok = m.group()
            if kind == "sym":
                kind = {"λ": "\\", "Σ": "Sg"}.get(tok, tok)
            elif kind == "name" and tok in KEYWORDS:
                kind = tok
            elif kind == "arrow":
                kind = "->"
            out.append(Token(kind, tok, line, m.start() - line_start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


def split_name(ident: str) -> tuple[str, Marker]:
    """``"x'"`` -> ``("x", PRIMED)``; only a single trailing mark is a marker."""
    if len(ident) > 1 and ident.endswith("'") and not ident.endswith("''"):
        return ident[:-1], PRIMED
    if len(ident) > 1 and ident.endswith("*") and not ident.endswith("**"):
        return ident[:-1], STARRED
    return ident, PLAIN


# -- declarations -------------------------------------------------------------


@dataclass
class Definition:
    name: str
    type: Term
    body: Term
    depth: int  # number of assumptions in scope when defined
    line: int


@dataclass
class Assume:
    name: str
    type: Term
    line: int


@dataclass
class Check:
    term: Term
    type: Term
    line: int


@dataclass
class ModePragma:
    mode: str
    line: int


@dataclass
class SourceFile:
    decls: list = field(default_factory=list)

    @property
    def mode(self) -> str | None:
        for d in self.decls:
            if isinstance(d, ModePragma):
                return d.mode
        return None


class _Parser:
    def __init__(self, text: str, defs: dict | None = None):
        self.toks = tokenize(text)
        self.pos = 0
        self.defs: dict[str, Definition] = dict(defs or {})
        self.assumed: list[str] = []

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def error(self, msg: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def eat(self, kind: str) -> Token:
        if self.tok.kind != kind:
            shown = self.tok.text or "end of input"
            raise self.error(f"expected {kind!r}, found {shown!r}")
        tok = self.tok
        self.pos += 1
        return tok

    def at(self, *kinds: str) -> bool:
        return self.tok.kind in kinds

    # names
    def binder_name(self) -> str:
        tok = self.eat("name")
        if tok.text in CONSTANTS:
            raise self.error(f"{tok.text!r} is reserved", tok)
        return tok.text

    def resolve(self, tok: Token, scope: list[str]) -> Term:
        ident = tok.text
        base, marker = split_name(ident)
        for k, n in enumerate(reversed(scope)):
            if n == ident and n != "_":
                return Var(k, base, marker)
        if ident in self.defs:
            d = self.defs[ident]
            return shift(d.body, len(scope) - d.depth)
        if ident in CONSTANTS:
            return Const(ident)
        raise UnboundVariable(f"unbound identifier {ident!r}", line=tok.line)

    # terms
    def binder(self, scope: list[str]) -> tuple[str, Term]:
        self.eat("(")
        name = self.binder_name()
        self.eat(":")
        ty = self.term(scope)
        self.eat(")")
        return name, ty

    def is_binder_start(self) -> bool:
        return self.at("(") and self.peek().kind == "name" and self.peek(2).kind == ":"

    def term(self, scope: list[str]) -> Term:
        if self.at("\\"):
            self.eat("\\")
            binders = self.telescope(scope)
            self.eat(".")
            return self.close(Lam, binders, scope)
        if self.at("Sg"):
            self.eat("Sg")
            binders = self.telescope(scope, single=True)
            self.eat(".")
            return self.close(Sigma, binders, scope)
        if self.is_binder_start():
            binders = self.telescope(scope)
            self.eat("->")
            return self.close(Pi, binders, scope)
        lhs = self.app(scope)
        if self.at("->"):
            self.eat("->")
            rhs = self.term(scope + ["_"])
            return Pi(lhs, rhs, "_")
        return lhs

    def telescope(self, scope: list[str], single: bool = False) -> list[tuple[str, Term]]:
        binders = []
        inner = list(scope)
        while True:
            name, ty = self.binder(inner)
            binders.append((name, ty))
            inner.append(name)
            if single or not self.is_binder_start():
                return binders

    def close(self, former, binders, scope: list[str]) -> Term:
        inner = scope + [n for n, _ in binders]
        body = self.term(inner)
        for name, ty in reversed(binders):
            base, marker = split_name(name)
            body = former(ty, body, base, marker)
        return body

    def app(self, scope: list[str]) -> Term:
        t = self.postfix(scope)
        while self.at("(", "name", "*"):
            t = App(t, self.postfix(scope))
        return t

    def postfix(self, scope: list[str]) -> Term:
        t = self.atom(scope)
        while self.at("proj"):
            t = Proj(int(self.eat("proj").text[1]), t)
        return t

    def atom(self, scope: list[str]) -> Term:
        if self.at("*"):
            self.eat("*")
            return Sort()
        if self.at("name"):
            return self.resolve(self.eat("name"), scope)
        if self.at("("):
            self.eat("(")
            t = self.term(scope)
            if self.at(","):
                self.eat(",")
                u = self.term(scope)
                self.eat(")")
                return Pair(t, u)
            self.eat(")")
            return t
        shown = self.tok.text or "end of input"
        raise self.error(f"expected a term, found {shown!r}")

    # files
    def file(self) -> SourceFile:
        out = SourceFile()
        names: set[str] = set()
        while not self.at("eof"):
            line = self.tok.line
            if self.at("mode"):
                self.eat("mode")
                tok = self.eat("name")
                if tok.text not in MODES:
                    raise self.error(f"unknown mode {tok.text!r}", tok)
                out.decls.append(ModePragma(tok.text, line))
            elif self.at("def") or self.at("assume"):
                kw = self.tok.kind
                self.pos += 1
                tok = self.tok
                name = self.binder_name()
                if name in names:
                    raise self.error(f"duplicate name {name!r}", tok)
                names.add(name)
                self.eat(":")
                ty = self.term(self.assumed)
                if kw == "def":
                    self.eat("=")
                    body = self.term(self.assumed)
                    d = Definition(name, ty, body, len(self.assumed), line)
                    self.defs[name] = d
                    out.decls.append(d)
                else:
                    out.decls.append(Assume(name, ty, line))
                    self.assumed.append(name)
            elif self.at("check"):
                self.eat("check")
                t = self.term(self.assumed)
                self.eat(":")
                ty = self.term(self.assumed)
                out.decls.append(Check(t, ty, line))
            else:
                shown = self.tok.text or "end of input"
                raise self.error(f"expected a declaration, found {shown!r}")
        return out


def parse(text: str) -> SourceFile:
    return _Parser(text).file()


def parse_term(text: str, scope: list[str] | tuple[str, ...] = ()) -> Term:
    """Parse a single term with ``scope`` (outermost first) as bound names."""
    p = _Parser(text)
    t = p.term(list(scope))
    p.eat("eof")
    return t
