"""Weak-head reduction, normalization and untyped conversion.

Reduction is beta, projection of pairs, and the delta rules of the active
signature.  Every step draws on an explicit :class:`Fuel` budget so that
non-normalizing terms (type-in-type admits them) fail loudly.
"""

from __future__ import annotations

from contextlib import contextmanager

from .errors import LstarError
from .terms import (
    App,
    Const,
    Lam,
    Pair,
    Pi,
    Proj,
    Sigma,
    Sort,
    Term,
    Var,
    apps,
    instantiate,
    spine,
)

DEFAULT_FUEL = 100_000


class FuelExhausted(LstarError):
    def __init__(self, budget: int):
        super().__init__(f"reduction budget of {budget} steps exhausted")
        self.budget = budget


class DepthExhausted(FuelExhausted):
    """The interpreter stack ran out before the step budget did."""

    def __init__(self):
        LstarError.__init__(self, "term nesting exceeded the recursion limit")
        self.budget = None


@contextmanager
def depth_guard():
    """Report stack exhaustion inside the block as a resource limit."""
    try:
        yield
    except RecursionError:
        raise DepthExhausted() from None


class Fuel:
    """Step budget shared by every reduction in one query."""

    def __init__(self, steps: int = DEFAULT_FUEL):
        if steps < 0:
            raise ValueError("fuel must be non-negative")
        self.budget = steps
        self.remaining = steps

    @property
    def used(self) -> int:
        return self.budget - self.remaining

    def tick(self) -> None:
        if self.remaining <= 0:
            raise FuelExhausted(self.budget)
        self.remaining -= 1

    def __repr__(self):
        return f"Fuel({self.remaining}/{self.budget})"


def as_fuel(fuel: Fuel | int | None) -> Fuel:
    if fuel is None:
        return Fuel()
    if isinstance(fuel, int):
        return Fuel(fuel)
    return fuel


def _rules(sig, head: str):
    if sig is None:
        return None
    return sig.rules.get(head)


def _try_delta(sig, head: Const, args: list[Term], fuel: Fuel) -> Term | None:
    group = _rules(sig, head.name)
    if not group:
        return None
    some = next(iter(group.values()))
    if len(args) < some.arity:
        return None
    scrut = whnf(sig, args[some.scrutinee], fuel)
    shead, sargs = spine(scrut)
    if not isinstance(shead, Const):
        return None
    rule = group.get(shead.name)
    if rule is None or len(sargs) != rule.ctor_arity:
        return None
    fuel.tick()
    head_args = args[: rule.arity]
    others = [a for k, a in enumerate(head_args) if k != rule.scrutinee]
    return apps(rule.instantiate(sargs, others), *args[rule.arity :])


def whnf(sig, t: Term, fuel: Fuel | int | None = None) -> Term:
    """Reduce ``t`` until its head is neither a redex nor a firing delta rule."""
    fuel = as_fuel(fuel)
    while True:
        head, args = spine(t)
        if isinstance(head, Lam) and args:
            fuel.tick()
            t = apps(instantiate(head.body, args[0]), *args[1:])
            continue
        if isinstance(head, Proj):
            inner = whnf(sig, head.pair, fuel)
            if isinstance(inner, Pair):
                fuel.tick()
                t = apps(inner.fst if head.index == 1 else inner.snd, *args)
                continue
            return apps(Proj(head.index, inner), *args)
        if isinstance(head, Const):
            reduct = _try_delta(sig, head, args, fuel)
            if reduct is not None:
                t = reduct
                continue
        return t


def normalize(sig, t: Term, fuel: Fuel | int | None = None) -> Term:
    """Full normal form; recursion under every former shares one budget."""
    fuel = as_fuel(fuel)
    t = whnf(sig, t, fuel)
    match t:
        case Sort() | Var() | Const():
            return t
        case Pi(dom, cod, name, marker):
            return Pi(normalize(sig, dom, fuel), normalize(sig, cod, fuel), name, marker)
        case Sigma(dom, cod, name, marker):
            return Sigma(normalize(sig, dom, fuel), normalize(sig, cod, fuel), name, marker)
        case Lam(dom, body, name, marker):
            return Lam(normalize(sig, dom, fuel), normalize(sig, body, fuel), name, marker)
        case Pair(a, b):
            return Pair(normalize(sig, a, fuel), normalize(sig, b, fuel))
        case Proj(i, p):
            return Proj(i, normalize(sig, p, fuel))
        case App():
            head, args = spine(t)
            if isinstance(head, Proj):
                head = Proj(head.index, normalize(sig, head.pair, fuel))
            return apps(head, *(normalize(sig, a, fuel) for a in args))
    raise TypeError(f"not a term: {t!r}")


def conv(sig, t: Term, u: Term, fuel: Fuel | int | None = None) -> bool:
    """Beta/projection/delta convertibility; raises :class:`FuelExhausted`."""
    fuel = as_fuel(fuel)
    return _conv(sig, t, u, fuel)


def _conv(sig, t: Term, u: Term, fuel: Fuel) -> bool:
    if t == u:
        return True
    t = whnf(sig, t, fuel)
    u = whnf(sig, u, fuel)
    match t, u:
        case Sort(), Sort():
            return True
        case Var(i), Var(j):
            return i == j
        case Const(a), Const(b):
            return a == b
        case (Pi(a1, b1), Pi(a2, b2)) | (Sigma(a1, b1), Sigma(a2, b2)) | (Lam(a1, b1), Lam(a2, b2)):
            return type(t) is type(u) and _conv(sig, a1, a2, fuel) and _conv(sig, b1, b2, fuel)
        case Pair(a1, b1), Pair(a2, b2):
            return _conv(sig, a1, a2, fuel) and _conv(sig, b1, b2, fuel)
        case Proj(i, p), Proj(j, q):
            return i == j and _conv(sig, p, q, fuel)
        case App(), App():
            h1, args1 = spine(t)
            h2, args2 = spine(u)
            if len(args1) != len(args2) or not _conv(sig, h1, h2, fuel):
                return False
            return all(_conv(sig, a, b, fuel) for a, b in zip(args1, args2))
    return False


__all__ = [
    "DEFAULT_FUEL",
    "Fuel",
    "FuelExhausted",
    "conv",
    "normalize",
    "whnf",
]
