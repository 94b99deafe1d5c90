"""The inductive-recursive universe ``U``/``T`` and reflection of lambda-star into it."""

from __future__ import annotations

from functools import lru_cache

from .errors import MalformedInput
from .kernel import EMPTY, Context, Entry, Mode, Signature, build_signature, check, check_context
from .reduce import DEFAULT_FUEL, Fuel
from .report import WitnessReport, verify
from .terms import App, Const, Lam, Pair, Pi, Proj, Sigma, Sort, Term, Var, apps

UNIVERSE_CONSTANTS = [
    ("U", "*"),
    ("T", "U -> *"),
    ("qstar", "U"),
    ("qFun", "(A : U) -> (T A -> U) -> U"),
    ("qSum", "(A : U) -> (T A -> U) -> U"),
]

UNIVERSE_RULES = [
    "T (qstar) = U",
    "T (qFun A B) = (a : T A) -> T (B a)",
    "T (qSum A B) = Sg (a : T A). T (B a)",
]

U = Const("U")
T = Const("T")
QSTAR = Const("qstar")
QFUN = Const("qFun")
QSUM = Const("qSum")


def el(code: Term) -> Term:
    """``T code``"""
    return App(T, code)


@lru_cache(maxsize=None)
def universe_signature() -> Signature:
    return build_signature(Mode.LSTAR_U, UNIVERSE_CONSTANTS, UNIVERSE_RULES)


def reflect(t: Term) -> Term:
    """Quote a raw lambda-star term into lambda-star-U.

    Binder domains become ``T`` of the quoted domain; a bare quoted type is a
    code in ``U`` and cannot itself annotate a binder.
    """
    match t:
        case Sort():
            return QSTAR
        case Var():
            return t
        case Pi(dom, cod, name, marker):
            d = reflect(dom)
            return apps(QFUN, d, Lam(el(d), reflect(cod), name, marker))
        case Sigma(dom, cod, name, marker):
            d = reflect(dom)
            return apps(QSUM, d, Lam(el(d), reflect(cod), name, marker))
        case Lam(dom, body, name, marker):
            return Lam(el(reflect(dom)), reflect(body), name, marker)
        case App(f, a):
            return App(reflect(f), reflect(a))
        case Pair(a, b):
            return Pair(reflect(a), reflect(b))
        case Proj(i, p):
            return Proj(i, reflect(p))
        case Const(name):
            raise MalformedInput(f"constant {name!r} is not lambda-star syntax", t)
    raise TypeError(f"not a term: {t!r}")


def reflect_context(ctx: Context) -> Context:
    return Context(tuple(Entry(e.name, el(reflect(e.type)), e.marker) for e in ctx))


def check_reflection(ctx: Context, m: Term, a: Term, fuel: int = DEFAULT_FUEL) -> WitnessReport:
    """Re-check ``ctx |- m : a`` after quoting, as ``ol ctx |- ol m : T (ol a)``.

    The source judgment is verified first in plain lambda-star; a type error
    there propagates.  A failure of the quoted judgment is reported, not raised.
    """
    budget = Fuel(fuel)
    check_context(None, ctx, budget)
    check(None, ctx, m, a, budget)
    report = WitnessReport(
        mode=Mode.LSTAR_U.value,
        source_context=ctx,
        source_term=m,
        source_type=a,
        context=reflect_context(ctx),
        witness=reflect(m),
        goal=el(reflect(a)),
    )
    return verify(report, universe_signature(), fuel)


__all__ = [
    "EMPTY",
    "QFUN",
    "QSTAR",
    "QSUM",
    "T",
    "U",
    "check_reflection",
    "el",
    "reflect",
    "reflect_context",
    "universe_signature",
]
