"""Rendering terms back to surface syntax.

Binder names are made unique against everything in scope, so the output
re-parses to the same de Bruijn term.
"""

from __future__ import annotations

from .parser import CONSTANTS, KEYWORDS
from .terms import App, Const, Lam, Pair, Pi, Proj, Sigma, Sort, Term, Var, occurs

UNICODE_CONSTANTS = {
    "qstar": "⊛",
    "reflstar": "refl⊛",
    "qFunE": "qFun*",
    "qSumE": "qSum*",
    "qEqE": "qEq*",
    "qRelE": "qRel*",
}

_TAKEN = set(CONSTANTS) | KEYWORDS

# precedence levels
_TOP, _APP, _ARG = 0, 1, 2


def display_name(name: str, marker) -> str:
    return f"{name}{marker.value}"


def _fresh(name: str, marker, scope: list[str]) -> str:
    base = name if name and name != "_" else "x"
    cand = display_name(base, marker)
    n = 0
    while cand in scope or cand in _TAKEN:
        n += 1
        cand = display_name(f"{base}{n}", marker)
    return cand


class _Printer:
    def __init__(self, unicode: bool):
        self.unicode = unicode

    def binder(self, t, scope: list[str], used: bool) -> str:
        if not used and t.name == "_":
            return "_"
        return _fresh(t.name, t.marker, scope)

    def show(self, t: Term, scope: list[str], prec: int) -> str:
        u = self.unicode
        match t:
            case Sort():
                return "*"
            case Var(i):
                if i < len(scope):
                    return scope[len(scope) - 1 - i]
                return f"#{i}"
            case Const(name):
                return UNICODE_CONSTANTS.get(name, name) if u else name
            case Pi(dom, cod):
                used = occurs(cod, 0)
                if not used:
                    s = f"{self.show(dom, scope, _APP)} {'→' if u else '->'} {self.show(cod, scope + ['_'], _TOP)}"
                else:
                    x = self.binder(t, scope, used)
                    s = f"({x} : {self.show(dom, scope, _TOP)}) {'→' if u else '->'} {self.show(cod, scope + [x], _TOP)}"
                return self.paren(s, prec > _TOP)
            case Sigma(dom, cod):
                x = self.binder(t, scope, occurs(cod, 0))
                kw = "Σ " if u else "Sg "
                s = f"{kw}({x} : {self.show(dom, scope, _TOP)}). {self.show(cod, scope + [x], _TOP)}"
                return self.paren(s, prec > _TOP)
            case Lam(dom, body):
                x = self.binder(t, scope, occurs(body, 0))
                lam = "λ" if u else "\\"
                s = f"{lam}({x} : {self.show(dom, scope, _TOP)}). {self.show(body, scope + [x], _TOP)}"
                return self.paren(s, prec > _TOP)
            case App(f, a):
                s = f"{self.show(f, scope, _APP)} {self.show(a, scope, _ARG)}"
                return self.paren(s, prec > _APP)
            case Pair(a, b):
                return f"({self.show(a, scope, _TOP)}, {self.show(b, scope, _TOP)})"
            case Proj(i, p):
                return f"{self.show(p, scope, _ARG + 1)}.{i}"
        raise TypeError(f"not a term: {t!r}")

    @staticmethod
    def paren(s: str, wrap: bool) -> str:
        return f"({s})" if wrap else s


def print_term(t: Term, names: list[str] | tuple[str, ...] = (), unicode: bool = False) -> str:
    """Render ``t`` whose free variables are named by ``names`` (outermost first)."""
    return _Printer(unicode).show(t, list(names), _TOP)


def context_names(entries) -> list[str]:
    """Pick unique display names for a sequence of ``(name, marker)`` pairs."""
    out: list[str] = []
    for name, marker in entries:
        out.append(_fresh(name, marker, out))
    return out
