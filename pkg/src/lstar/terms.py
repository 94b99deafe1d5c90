"""Abstract syntax shared by every system mode, plus index arithmetic.

Variables are de Bruijn indices.  Binders and variables also carry a display
name and a marker (plain, primed, starred); neither takes part in equality,
so alpha-equivalent terms compare equal.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence, Union

from .errors import LstarError


class NegativeIndex(LstarError):
    pass


class Marker(enum.Enum):
    PLAIN = ""
    PRIMED = "'"
    STARRED = "*"


PLAIN = Marker.PLAIN
PRIMED = Marker.PRIMED
STARRED = Marker.STARRED


def _hint(default: str = "x"):
    return field(default=default, compare=False, repr=False)


def _marker():
    return field(default=PLAIN, compare=False, repr=False)


def _bound():
    return field(init=False, compare=False, repr=False, hash=False)


def loose(t: "Term") -> int:
    """One more than the largest free index of ``t`` (0 when ``t`` is closed)."""
    return getattr(t, "_loose", 0)


@dataclass(frozen=True, slots=True)
class Sort:
    def __repr__(self):
        return "Sort()"


@dataclass(frozen=True, slots=True)
class Var:
    index: int
    name: str = _hint()
    marker: Marker = _marker()

    @property
    def _loose(self) -> int:
        return self.index + 1


@dataclass(frozen=True, slots=True)
class Pi:
    dom: "Term"
    cod: "Term"
    name: str = _hint()
    marker: Marker = _marker()
    _loose: int = _bound()

    def __post_init__(self):
        object.__setattr__(self, "_loose", max(loose(self.dom), loose(self.cod) - 1))


@dataclass(frozen=True, slots=True)
class Sigma:
    dom: "Term"
    cod: "Term"
    name: str = _hint()
    marker: Marker = _marker()
    _loose: int = _bound()

    def __post_init__(self):
        object.__setattr__(self, "_loose", max(loose(self.dom), loose(self.cod) - 1))


@dataclass(frozen=True, slots=True)
class Lam:
    dom: "Term"
    body: "Term"
    name: str = _hint()
    marker: Marker = _marker()
    _loose: int = _bound()

    def __post_init__(self):
        object.__setattr__(self, "_loose", max(loose(self.dom), loose(self.body) - 1))


@dataclass(frozen=True, slots=True)
class App:
    fn: "Term"
    arg: "Term"
    _loose: int = _bound()

    def __post_init__(self):
        object.__setattr__(self, "_loose", max(loose(self.fn), loose(self.arg)))


@dataclass(frozen=True, slots=True)
class Pair:
    fst: "Term"
    snd: "Term"
    _loose: int = _bound()

    def __post_init__(self):
        object.__setattr__(self, "_loose", max(loose(self.fst), loose(self.snd)))


@dataclass(frozen=True, slots=True)
class Proj:
    index: int
    pair: "Term"
    _loose: int = _bound()

    def __post_init__(self):
        if self.index not in (1, 2):
            raise ValueError(f"projection index must be 1 or 2, got {self.index}")
        object.__setattr__(self, "_loose", loose(self.pair))


@dataclass(frozen=True, slots=True)
class Const:
    name: str


Term = Union[Sort, Var, Pi, Sigma, Lam, App, Pair, Proj, Const]
Binder = (Pi, Sigma, Lam)

STAR = Sort()


# -- small constructors -------------------------------------------------------


def apps(head: Term, *args: Term) -> Term:
    for a in args:
        head = App(head, a)
    return head


def spine(t: Term) -> tuple[Term, list[Term]]:
    """Split ``f a1 ... an`` into ``(f, [a1, ..., an])``."""
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


def arrow(dom: Term, cod: Term) -> Pi:
    """Non-dependent function type; ``cod`` is given in the outer scope."""
    return Pi(dom, shift(cod, 1), "_")


def const_head(t: Term) -> str | None:
    head, _ = spine(t)
    return head.name if isinstance(head, Const) else None


# -- traversal ----------------------------------------------------------------


def map_vars(t: Term, fn, depth: int = 0, floor: int | None = None) -> Term:
    """Rebuild ``t`` replacing each variable by ``fn(var, depth)``.

    With ``floor`` set, ``fn`` promises to fix every variable whose index is
    below ``floor + depth``, so subterms with no such free variable are reused.
    """
    if floor is not None and loose(t) <= floor + depth:
        return t
    match t:
        case Var():
            return fn(t, depth)
        case Sort() | Const():
            return t
        case Pi(dom, cod, name, marker):
            return Pi(map_vars(dom, fn, depth, floor), map_vars(cod, fn, depth + 1, floor), name, marker)
        case Sigma(dom, cod, name, marker):
            return Sigma(map_vars(dom, fn, depth, floor), map_vars(cod, fn, depth + 1, floor), name, marker)
        case Lam(dom, body, name, marker):
            return Lam(map_vars(dom, fn, depth, floor), map_vars(body, fn, depth + 1, floor), name, marker)
        case App(f, a):
            return App(map_vars(f, fn, depth, floor), map_vars(a, fn, depth, floor))
        case Pair(a, b):
            return Pair(map_vars(a, fn, depth, floor), map_vars(b, fn, depth, floor))
        case Proj(i, p):
            return Proj(i, map_vars(p, fn, depth, floor))
    raise TypeError(f"not a term: {t!r}")


def shift(t: Term, amount: int, cutoff: int = 0) -> Term:
    """Add ``amount`` to every free index ``>= cutoff``."""
    if amount == 0:
        return t

    def go(v: Var, depth: int) -> Term:
        if v.index < cutoff + depth:
            return v
        new = v.index + amount
        if new < 0:
            raise NegativeIndex(f"shifting Var {v.index} by {amount} goes negative")
        return Var(new, v.name, v.marker)

    return map_vars(t, go, 0, cutoff)


def subst_block(t: Term, start: int, values: Sequence[Term]) -> Term:
    """Simultaneously replace indices ``start .. start+k-1`` by ``values``.

    ``values[j]`` replaces index ``start + j``.  The values live in the context
    with the whole block removed; indices above the block move down by ``k``.
    """
    k = len(values)

    def go(v: Var, depth: int) -> Term:
        i = v.index - depth
        if i < start:
            return v
        if i < start + k:
            return shift(values[i - start], depth)
        return Var(v.index - k, v.name, v.marker)

    return map_vars(t, go, 0, start)


def subst(t: Term, target: int, replacement: Term) -> Term:
    """Capture-avoiding ``t[replacement / target]``.

    ``replacement`` is scope-valid in the context with entry ``target`` removed;
    with ``target = 0`` this is the substitution performed by beta reduction.
    """
    return subst_block(t, target, [replacement])


def instantiate(body: Term, arg: Term) -> Term:
    """Substitute ``arg`` for the variable bound by a binder whose body is ``body``."""
    return subst_block(body, 0, [arg])


def free_indices(t: Term) -> set[int]:
    out: set[int] = set()

    def go(v: Var, depth: int) -> Term:
        if v.index >= depth:
            out.add(v.index - depth)
        return v

    map_vars(t, go, 0, 0)
    return out


def occurs(t: Term, index: int) -> bool:
    if loose(t) <= index:
        return False
    return index in free_indices(t)


def is_scoped(t: Term, length: int) -> bool:
    """Every free index of ``t`` is below ``length``."""
    return loose(t) <= length


def constants(t: Term) -> set[str]:
    match t:
        case Const(name):
            return {name}
        case Sort() | Var():
            return set()
        case Pi(a, b) | Sigma(a, b) | Lam(a, b) | App(a, b) | Pair(a, b):
            return constants(a) | constants(b)
        case Proj(_, p):
            return constants(p)
    raise TypeError(f"not a term: {t!r}")


def size(t: Term) -> int:
    match t:
        case Sort() | Var() | Const():
            return 1
        case Pi(a, b) | Sigma(a, b) | Lam(a, b) | App(a, b) | Pair(a, b):
            return 1 + size(a) + size(b)
        case Proj(_, p):
            return 1 + size(p)
    raise TypeError(f"not a term: {t!r}")


def subterms(t: Term):
    """Pre-order iterator over ``t`` and all its subterms."""
    stack = [t]
    while stack:
        s = stack.pop()
        yield s
        match s:
            case Pi(a, b) | Sigma(a, b) | Lam(a, b) | App(a, b) | Pair(a, b):
                stack.append(b)
                stack.append(a)
            case Proj(_, p):
                stack.append(p)


def remark(t: Term, marker: Marker) -> Term:
    """Relabel every variable and binder of ``t`` with ``marker``."""
    match t:
        case Var(i, name, _):
            return Var(i, name, marker)
        case Sort() | Const():
            return t
        case Pi(dom, cod, name, _):
            return Pi(remark(dom, marker), remark(cod, marker), name, marker)
        case Sigma(dom, cod, name, _):
            return Sigma(remark(dom, marker), remark(cod, marker), name, marker)
        case Lam(dom, body, name, _):
            return Lam(remark(dom, marker), remark(body, marker), name, marker)
        case App(f, a):
            return App(remark(f, marker), remark(a, marker))
        case Pair(a, b):
            return Pair(remark(a, marker), remark(b, marker))
        case Proj(i, p):
            return Proj(i, remark(p, marker))
    raise TypeError(f"not a term: {t!r}")
