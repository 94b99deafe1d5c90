"""Equivalences between codes, the relations they induce, and the star translation.

In the tripled context every source variable ``x`` (de Bruijn ``i``) becomes
three neighbours ``x, x', x*`` at indices ``3i+2, 3i+1, 3i``.  Binders crossed
by the translation get the same layout, so one index map serves every depth.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import MalformedInput, NotAUContext, TypeCheckError
from .kernel import Context, Entry, Mode, Signature, build_signature, check, check_context
from .reduce import DEFAULT_FUEL, Fuel
from .report import WitnessReport, readable, verify
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
    Term,
    Var,
    apps,
    map_vars,
    shift,
    spine,
    subst_block,
)
from .universe import QSTAR, U, UNIVERSE_CONSTANTS, UNIVERSE_RULES, el, universe_signature

EQREL_CONSTANTS = UNIVERSE_CONSTANTS + [
    ("Eq", "U -> U -> *"),
    ("Rel", "(A : U) -> (B : U) -> Eq A B -> T A -> T B -> *"),
    ("reflstar", "Eq qstar qstar"),
    (
        "qFunE",
        "(A : U) -> (A' : U) -> (B : T A -> U) -> (B' : T A' -> U) -> (A* : Eq A A')"
        " -> (B* : (a : T A) -> (a' : T A') -> (a* : Rel A A' A* a a') -> Eq (B a) (B' a'))"
        " -> Eq (qFun A B) (qFun A' B')",
    ),
    (
        "qSumE",
        "(A : U) -> (A' : U) -> (B : T A -> U) -> (B' : T A' -> U) -> (A* : Eq A A')"
        " -> (B* : (a : T A) -> (a' : T A') -> (a* : Rel A A' A* a a') -> Eq (B a) (B' a'))"
        " -> Eq (qSum A B) (qSum A' B')",
    ),
]

EQREL_RULES = UNIVERSE_RULES + [
    "Rel _ _ (reflstar) A B = Eq A B",
    "Rel _ _ (qFunE A A' B B' A* B*) f f' ="
    " (x : T A) -> (x' : T A') -> (x* : Rel A A' A* x x') -> Rel (B x) (B' x') (B* x x' x*) (f x) (f' x')",
    "Rel _ _ (qSumE A A' B B' A* B*) p p' ="
    " Sg (x* : Rel A A' A* p.1 p'.1). Rel (B p.1) (B' p'.1) (B* p.1 p'.1 x*) p.2 p'.2",
]


@lru_cache(maxsize=None)
def eqrel_signature() -> Signature:
    return build_signature(Mode.LSTAR_U_EQ, EQREL_CONSTANTS, EQREL_RULES)


# -- markers and embeddings ---------------------------------------------------


def _hint(name: str, marker: Marker, new: Marker) -> tuple[str, Marker]:
    if marker is PLAIN:
        return name, new
    return name + marker.value, new


def _primed(t: Term) -> Term:
    def go(v: Var, depth: int) -> Term:
        return Var(v.index, *_hint(v.name, v.marker, PRIMED))

    t = map_vars(t, go)
    return _prime_binders(t)


def _prime_binders(t: Term) -> Term:
    match t:
        case Pi(d, c, n, m) | Sigma(d, c, n, m) | Lam(d, c, n, m):
            return type(t)(_prime_binders(d), _prime_binders(c), *_hint(n, m, PRIMED))
        case App(f, a):
            return App(_prime_binders(f), _prime_binders(a))
        case Pair(a, b):
            return Pair(_prime_binders(a), _prime_binders(b))
        case Proj(i, p):
            return Proj(i, _prime_binders(p))
    return t


def prime(t: Term) -> Term:
    """Apostrophize every variable and binder.

    Under de Bruijn indices this only relabels display markers: the primed
    copy of a judgment has exactly the index structure of the original.
    """
    return _primed(t)


def prime_context(ctx: Context) -> Context:
    out = []
    for e in ctx:
        name, marker = _hint(e.name, e.marker, PRIMED)
        out.append(Entry(name, prime(e.type), marker))
    return Context(tuple(out))


def embed_plain(t: Term, depth: int = 0) -> Term:
    """Place the plain copy of ``t`` into the tripled context (free ``i`` -> ``3i+2``)."""
    return _embed_at(t, 2, depth)


def embed_prime(t: Term, depth: int = 0) -> Term:
    """Place the primed copy of ``t`` into the tripled context (free ``i`` -> ``3i+1``)."""
    return _embed_at(prime(t), 1, depth)


def _embed_at(t: Term, offset: int, depth: int) -> Term:
    def go(v: Var, d: int) -> Term:
        local = d + depth
        if v.index < local:
            return v
        j = v.index - local
        return Var(local + 3 * j + offset, v.name, v.marker)

    return map_vars(t, go)


def code_of(ty: Term) -> Term:
    """The code ``A`` of an element type ``T A``; ``U`` is read as ``T qstar``."""
    if ty == U:
        return QSTAR
    head, args = spine(ty)
    if head == Const("T") and len(args) == 1:
        return args[0]
    raise MalformedInput("expected a type of the form T A", ty)


# -- the star translation -----------------------------------------------------


class StarTranslation:
    """Star translation over one signature dialect.

    Subclasses choose how the relation over an equivalence is written and add
    clauses for further code constructors.
    """

    reflexivity = Const("reflstar")

    def relation(self, a: Term, a2: Term, e: Term, x: Term, x2: Term) -> Term:
        return apps(Const("Rel"), a, a2, e, x, x2)

    # code constructor -> (arity, clause)
    def code_clauses(self):
        return {
            "qFun": (2, self._former("qFunE")),
            "qSum": (2, self._former("qSumE")),
        }

    def _former(self, starred: str):
        def clause(args):
            a, b = args
            return apps(Const(starred), embed_plain(a), embed_prime(a), embed_plain(b), embed_prime(b), self(a), self(b))

        return clause

    def domain_code(self, dom: Term) -> Term:
        return code_of(dom)

    def __call__(self, t: Term) -> Term:
        match t:
            case Var(i, name, marker):
                return Var(3 * i, *_hint(name, marker, STARRED))
            case Const("qstar"):
                return self.reflexivity
            case Lam(dom, body, name, marker):
                return self.binder_triple(self.domain_code(dom), name, marker, self(body))
            case App():
                head, args = spine(t)
                if isinstance(head, Const):
                    clause = self.code_clauses().get(head.name)
                    if clause is not None:
                        arity, fn = clause
                        if len(args) != arity:
                            raise MalformedInput(f"{head.name} must be applied to {arity} arguments", t)
                        return fn(args)
                return apps(self(t.fn), embed_plain(t.arg), embed_prime(t.arg), self(t.arg))
            case Pair(a, b):
                return Pair(self(a), self(b))
            case Proj(i, p):
                return Proj(i, self(p))
        raise MalformedInput(f"no star clause for {type(t).__name__} node", t)

    def binder_triple(self, code: Term, name: str, marker: Marker, inner: Term) -> Term:
        """``λ(x : T A) (x' : T A') (x* : R A A' A* x x'). inner`` with ``inner`` in the tripled scope."""
        p, q, s = embed_plain(code), embed_prime(code), self(code)
        rel = self.relation(shift(p, 2), shift(q, 2), shift(s, 2), Var(1, name, marker), Var(0, *_hint(name, marker, PRIMED)))
        return Lam(
            el(p),
            Lam(el(shift(q, 1)), Lam(rel, inner, *_hint(name, marker, STARRED)), *_hint(name, marker, PRIMED)),
            name,
            marker,
        )

    def goal(self, m: Term, a: Term) -> Term:
        return self.relation(embed_plain(a), embed_prime(a), self(a), embed_plain(m), embed_prime(m))

    def context(self, ctx: Context) -> Context:
        entries: list[Entry] = []
        for e in ctx:
            code = self.domain_code(e.type)
            p, q, s = embed_plain(code), embed_prime(code), self(code)
            pname, pmark = _hint(e.name, e.marker, PRIMED)
            sname, smark = _hint(e.name, e.marker, STARRED)
            entries.append(Entry(e.name, el(p), e.marker))
            entries.append(Entry(pname, el(shift(q, 1)), pmark))
            rel = self.relation(shift(p, 2), shift(q, 2), shift(s, 2), Var(1, e.name, e.marker), Var(0, pname, pmark))
            entries.append(Entry(sname, rel, smark))
        return Context(tuple(entries))


_STAR = StarTranslation()


def star(t: Term) -> Term:
    """Relational witness of ``t``, scoped over the tripled context."""
    return _STAR(t)


def star_context(ctx: Context, sig: Signature | None = None, fuel: int = DEFAULT_FUEL) -> Context:
    sig = sig or universe_signature()
    if not is_U_context(sig, ctx, fuel):
        raise NotAUContext("context is not a U-context")
    return _STAR.context(ctx)


def star_substitute(t: Term, index: int, plain: Term, primed: Term, starred: Term) -> Term:
    """Replace the triple of source variable ``index`` in a tripled-scope term."""
    return subst_block(t, 3 * index, [starred, primed, plain])


# -- U-contexts and the theorems ----------------------------------------------


def is_U_context(sig, ctx: Context, fuel: int | Fuel = DEFAULT_FUEL) -> bool:
    """Every entry is declared as ``T A`` with ``A : U`` over its prefix."""
    budget = fuel if isinstance(fuel, Fuel) else Fuel(fuel)
    for n, e in enumerate(ctx):
        if e.type == U:
            continue
        head, args = spine(e.type)
        if head != Const("T") or len(args) != 1:
            return False
        try:
            check(sig, ctx.prefix(n), args[0], U, budget)
        except TypeCheckError:
            return False
    return True


def check_prime_typing(ctx: Context, m: Term, a: Term, fuel: int = DEFAULT_FUEL) -> WitnessReport:
    report = WitnessReport(
        mode=Mode.LSTAR_U.value,
        source_context=ctx,
        source_term=m,
        source_type=a,
        context=prime_context(ctx),
        witness=prime(m),
        goal=prime(a),
    )
    return verify(report, universe_signature(), fuel)


def _prepare(ctx: Context, m: Term, a: Term, fuel: int) -> None:
    sig = universe_signature()
    budget = Fuel(fuel)
    check_context(sig, ctx, budget)
    if not is_U_context(sig, ctx, budget):
        raise NotAUContext("context is not a U-context: every entry must be declared as T A with A : U")
    check(sig, ctx, a, U, budget)
    check(sig, ctx, m, el(a), budget)


def check_extensionality(ctx: Context, m: Term, a: Term, fuel: int = DEFAULT_FUEL) -> WitnessReport:
    """From ``ctx |- m : T a`` build ``ctx* |- m* : Rel a a' a* m m'`` and re-check it.

    The source judgment is verified first (its failure is raised); failure of
    the translated judgment is reported as a counterexample alarm.
    """
    _prepare(ctx, m, a, fuel)
    return _run(_STAR, Mode.LSTAR_U_EQ, eqrel_signature(), ctx, m, a, fuel)


def _run(tr: StarTranslation, mode: Mode, sig: Signature, ctx, m, a, fuel) -> WitnessReport:
    report = WitnessReport(
        mode=mode.value,
        source_context=ctx,
        source_term=m,
        source_type=el(a),
        context=tr.context(ctx),
        witness=tr(m),
        goal=tr.goal(m, a),
    )
    verify(report, sig, fuel)
    report.display_goal = readable(sig, report.goal)
    return report


__all__ = [
    "EQREL_CONSTANTS",
    "EQREL_RULES",
    "StarTranslation",
    "check_extensionality",
    "check_prime_typing",
    "code_of",
    "embed_plain",
    "embed_prime",
    "eqrel_signature",
    "is_U_context",
    "prime",
    "prime_context",
    "star",
    "star_context",
    "star_substitute",
]
