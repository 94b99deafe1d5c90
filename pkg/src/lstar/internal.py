"""Equivalences and relations as codes inside ``U``.

Here ``qEq`` and ``qRel`` are codes, so the star translation can be applied
to its own output.  Canonical equivalences (``reflstar``, ``qFunE``, ...)
are ordinary terms and get star clauses by unfolding them to the relation
they compute.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import MalformedInput, NotAUContext
from .extensionality import StarTranslation, _run, embed_plain, embed_prime, is_U_context
from .kernel import Context, Entry, Mode, Signature, build_signature, check, check_context
from .parser import parse_term, split_name
from .reduce import DEFAULT_FUEL, Fuel, normalize
from .report import WitnessReport
from .terms import App, Const, Lam, Pair, Pi, Proj, Sigma, Term, apps, shift, spine, subst_block
from .universe import U, UNIVERSE_CONSTANTS, UNIVERSE_RULES, el

_RELATION_TYPE = "(A : U) -> (B : U) -> T (qEq A B) -> T A -> T B -> U"
_FORMER_TELESCOPE = (
    "(A : U) -> (A' : U) -> (B : T A -> U) -> (B' : T A' -> U) -> (A* : T (qEq A A'))"
    " -> (B* : (a : T A) -> (a' : T A') -> (a* : T (rel A A' A* a a')) -> T (qEq (B a) (B' a')))"
)

INTERNAL_CONSTANTS = UNIVERSE_CONSTANTS + [
    ("qEq", "U -> U -> U"),
    ("qRel", _RELATION_TYPE),
    ("rel", _RELATION_TYPE),
    ("reflstar", "T (qEq qstar qstar)"),
    ("qFunE", _FORMER_TELESCOPE + " -> T (qEq (qFun A B) (qFun A' B'))"),
    ("qSumE", _FORMER_TELESCOPE + " -> T (qEq (qSum A B) (qSum A' B'))"),
    (
        "qEqE",
        "(A : U) -> (A' : U) -> (A* : T (qEq A A')) -> (B : U) -> (B' : U) -> (B* : T (qEq B B'))"
        " -> T (qEq (qEq A B) (qEq A' B'))",
    ),
    (
        "qRelE",
        "(A : U) -> (A' : U) -> (A* : T (qEq A A'))"
        " -> (B : U) -> (B' : U) -> (B* : T (qEq B B'))"
        " -> (e : T (qEq A B)) -> (e' : T (qEq A' B'))"
        " -> (e* : T (rel (qEq A B) (qEq A' B') (qEqE A A' A* B B' B*) e e'))"
        " -> (a : T A) -> (a' : T A') -> (a* : T (rel A A' A* a a'))"
        " -> (b : T B) -> (b' : T B') -> (b* : T (rel B B' B* b b'))"
        " -> T (qEq (qRel A B e a b) (qRel A' B' e' a' b'))",
    ),
]

# Relation computed by each canonical equivalence, written with ``REL`` for the
# relation former.  Patterns give the constructor metavariables; the two
# trailing names are the related elements.
_EQTYPE_RELATIONS: dict[str, tuple[str, str, str, str, str, str]] = {
    "reflstar": ("", "qstar", "qstar", "a", "b", "qEq a b"),
    "qFunE": (
        "A A' B B' A* B*",
        "qFun A B",
        "qFun A' B'",
        "f",
        "f'",
        "qFun A (\\(x : T A). qFun A' (\\(x' : T A'). qFun (REL A A' A* x x')"
        " (\\(x* : T (REL A A' A* x x')). REL (B x) (B' x') (B* x x' x*) (f x) (f' x'))))",
    ),
    "qSumE": (
        "A A' B B' A* B*",
        "qSum A B",
        "qSum A' B'",
        "p",
        "p'",
        "qSum (REL A A' A* p.1 p'.1) (\\(x* : T (REL A A' A* p.1 p'.1)). REL (B p.1) (B' p'.1) (B* p.1 p'.1 x*) p.2 p'.2)",
    ),
    "qEqE": (
        "A A' A* B B' B*",
        "qEq A B",
        "qEq A' B'",
        "e",
        "e'",
        "qFun A (\\(a : T A). qFun A' (\\(a' : T A'). qFun (REL A A' A* a a') (\\(a* : T (REL A A' A* a a')).\n"
        " qFun B (\\(b : T B). qFun B' (\\(b' : T B'). qFun (REL B B' B* b b') (\\(b* : T (REL B B' B* b b')).\n"
        " qEq (qRel A B e a b) (qRel A' B' e' a' b')))))))",
    ),
    "qRelE": (
        "A A' A* B B' B* e e' e* a a' a* b b' b*",
        "qRel A B e a b",
        "qRel A' B' e' a' b'",
        "g",
        "g'",
        "qRel (qRel A B e a b) (qRel A' B' e' a' b') (e* a a' a* b b' b*) g g'",
    ),
}


def _rules_for(head: str) -> list[str]:
    out = []
    for ctor, (pat, _x, _y, a, b, rhs) in _EQTYPE_RELATIONS.items():
        lhs = f"{head} _ _ ({ctor} {pat}".rstrip() + f") {a} {b}"
        out.append(f"{lhs} = {rhs.replace('REL', head)}")
    return out


INTERNAL_RULES = UNIVERSE_RULES + ["T (qRel A B e a b) = T (rel A B e a b)"] + _rules_for("rel") + _rules_for("qRel")


@lru_cache(maxsize=None)
def internal_signature() -> Signature:
    return build_signature(Mode.INTERNAL, INTERNAL_CONSTANTS, INTERNAL_RULES)


@lru_cache(maxsize=None)
def _unfolding(ctor: str) -> tuple[int, Term]:
    """``λ(a : T X) (b : T Y). qRel-relation`` scoped over the constructor's arguments."""
    pat, x, y, a, b, rhs = _EQTYPE_RELATIONS[ctor]
    params = pat.split()
    rhs = rhs.replace("REL", "qRel")
    dom_x = el(parse_term(x, params))
    dom_y = el(parse_term(y, params))
    body = parse_term(rhs, params + [a, b])
    an, am = split_name(a)
    bn, bm = split_name(b)
    return len(params), Lam(dom_x, Lam(shift(dom_y, 1), body, bn, bm), an, am)


class InternalStar(StarTranslation):
    """Star translation into the internal system.

    The clauses are those of the external translation, plus ``qEq`` and
    ``qRel`` which are now codes, and the canonical equivalences.
    """

    def relation(self, a, a2, e, x, x2):
        return el(apps(Const("qRel"), a, a2, e, x, x2))

    def code_clauses(self):
        clauses = super().code_clauses()
        clauses["qEq"] = (2, self._code_eq)
        clauses["qRel"] = (5, self._code_rel)
        for ctor in ("qFunE", "qSumE", "qEqE", "qRelE"):
            clauses[ctor] = (_unfolding(ctor)[0], self._unfold(ctor))
        clauses["rel"] = (5, self._reject)
        return clauses

    def _triples(self, args):
        out = []
        for t in args:
            out += [embed_plain(t), embed_prime(t), self(t)]
        return out

    def _code_eq(self, args):
        return apps(Const("qEqE"), *self._triples(args))

    def _code_rel(self, args):
        return apps(Const("qRelE"), *self._triples(args))

    def _unfold(self, ctor):
        def clause(args):
            _, lam = _unfolding(ctor)
            return self(subst_block(lam, 0, list(args)[::-1]))

        return clause

    @staticmethod
    def _reject(args):
        raise MalformedInput("rel is not a code constructor; use qRel", apps(Const("rel"), *args))

    def __call__(self, t: Term) -> Term:
        match t:
            case Const("reflstar"):
                return self(_unfolding("reflstar")[1])
            case Const("rel"):
                raise MalformedInput("rel is not a code constructor; use qRel", t)
        return super().__call__(t)


_ISTAR = InternalStar()


def star_internal(t: Term) -> Term:
    return _ISTAR(t)


def star_context_internal(ctx: Context) -> Context:
    return _ISTAR.context(ctx)


def _prepare_internal(ctx: Context, m: Term, a: Term, fuel: int) -> None:
    sig = internal_signature()
    budget = Fuel(fuel)
    check_context(sig, ctx, budget)
    if not is_U_context(sig, ctx, budget):
        raise NotAUContext("context is not a U-context: every entry must be declared as T A with A : U")
    check(sig, ctx, a, U, budget)
    check(sig, ctx, m, el(a), budget)


def check_extensionality_internal(ctx: Context, m: Term, a: Term, fuel: int = DEFAULT_FUEL) -> WitnessReport:
    """Internal counterpart of :func:`lstar.extensionality.check_extensionality`.

    The source may itself use ``qEq``, ``qRel`` and the canonical
    equivalences, so the output of one run is a valid input to the next.
    """
    _prepare_internal(ctx, m, a, fuel)
    return _run(_ISTAR, Mode.INTERNAL, internal_signature(), ctx, m, a, fuel)


def check_tower(ctx: Context, m: Term, a: Term, fuel: int = DEFAULT_FUEL) -> tuple[WitnessReport, WitnessReport]:
    """Run the internal theorem on ``m : T a`` and then on its own output."""
    first = check_extensionality_internal(ctx, m, a, fuel)
    if not first.proved:
        return first, first
    goal = first.goal
    head, args = spine(goal)
    if head != Const("T") or len(args) != 1:
        raise MalformedInput("first-level goal is not an element type", goal)
    second = check_extensionality_internal(first.context, first.witness, args[0], fuel)
    return first, second


def transport(t: Term) -> Term:
    """Read an external equivalence/relation term as its internal code.

    ``Eq X Y`` becomes ``T (qEq X Y)`` and ``Rel A B e x y`` becomes
    ``T (rel A B e x y)``; everything else is kept.
    """
    head, args = spine(t)
    if head == Const("Eq") and len(args) == 2:
        return el(apps(Const("qEq"), *map(transport, args)))
    if head == Const("Rel") and len(args) == 5:
        return el(apps(Const("rel"), *map(transport, args)))
    match t:
        case Pi(d, c, n, mk) | Sigma(d, c, n, mk) | Lam(d, c, n, mk):
            return type(t)(transport(d), transport(c), n, mk)
        case App(f, x):
            return App(transport(f), transport(x))
        case Pair(x, y):
            return Pair(transport(x), transport(y))
        case Proj(i, p):
            return Proj(i, transport(p))
    return t


def transport_context(ctx: Context) -> Context:
    return Context(tuple(Entry(e.name, transport(e.type), e.marker) for e in ctx))


def conservative(sig_ext: Signature, goal_ext: Term, goal_int: Term, fuel: int = DEFAULT_FUEL) -> bool:
    """The internal goal normalizes to the transported external one."""
    sig_int = internal_signature()
    lhs = normalize(sig_int, goal_int, Fuel(fuel))
    rhs = normalize(sig_int, transport(normalize(sig_ext, goal_ext, Fuel(fuel))), Fuel(fuel))
    return lhs == rhs


__all__ = [
    "INTERNAL_CONSTANTS",
    "INTERNAL_RULES",
    "InternalStar",
    "check_extensionality_internal",
    "check_tower",
    "conservative",
    "internal_signature",
    "star_context_internal",
    "star_internal",
    "transport",
    "transport_context",
]
