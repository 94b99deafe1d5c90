"""Random well-typed lambda-star judgments.

Generation is type directed: a target type is picked first and a term is
grown to fit it, either by the introduction form of its head or by
eliminating a context variable.  Every emitted judgment is re-checked by the
kernel, so a generator bug shows up as a retry rather than a bad sample.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import LstarError, TypeCheckError
from .kernel import EMPTY, Context, check, check_context, infer
from .reduce import Fuel, FuelExhausted, conv, whnf
from .terms import (
    STAR,
    App,
    Lam,
    Pair,
    Pi,
    Proj,
    Sigma,
    Sort,
    Term,
    Var,
    instantiate,
    occurs,
    shift,
)

RULE_CASES = (
    "axiom",
    "variable",
    "weakening",
    "pi-formation",
    "sigma-formation",
    "pi-introduction",
    "pi-elimination",
    "sigma-introduction",
    "sigma-elimination",
    "conversion",
)

_NAMES = "abcdfghkmnpqrsuvwyz"
_TYPE_NAMES = "ABCDEFGHKLMNPQRS"


@dataclass(frozen=True)
class Sample:
    context: Context
    term: Term
    type: Term
    case: str


class _Retry(Exception):
    pass


def root_case(ctx: Context, m: Term, a: Term) -> str:
    """The last rule of the syntax-directed lambda-star derivation of ``ctx |- m : a``.

    Weakening is applied as late as possible, so it is the root exactly when
    the newest context entry occurs in neither ``m`` nor ``a``.  Conversion is
    the root when ``a`` is not literally the type the rules would produce.
    """
    if len(ctx) and not occurs(m, 0) and not occurs(a, 0):
        return "weakening"
    match m:
        case Pair():
            return "sigma-introduction" if isinstance(a, Sigma) else "conversion"
        case Lam(dom):
            return "pi-introduction" if isinstance(a, Pi) and a.dom == dom else "conversion"
    if infer(None, ctx, m) != a:
        return "conversion"
    match m:
        case Sort():
            return "axiom"
        case Var():
            return "variable"
        case Pi():
            return "pi-formation"
        case Sigma():
            return "sigma-formation"
        case Proj():
            return "sigma-elimination"
        case App():
            return "pi-elimination"
    raise ValueError(f"not a lambda-star term: {m!r}")


class Generator:
    """Seeded source of judgments; ``size`` bounds term depth."""

    def __init__(self, seed: int = 0, size: int = 4, fuel: int = 20_000):
        if size < 1:
            raise ValueError("size must be at least 1")
        self.rng = random.Random(seed)
        self.size = size
        self.fuel = fuel

    # -- helpers --------------------------------------------------------------

    def _name(self, pool: str) -> str:
        return self.rng.choice(pool)

    def _whnf(self, t: Term) -> Term:
        return whnf(None, t, Fuel(self.fuel))

    def _conv(self, a: Term, b: Term) -> bool:
        return conv(None, a, b, Fuel(self.fuel))

    # -- types and terms ------------------------------------------------------

    def type(self, ctx: Context, size: int) -> Term:
        return self.term(ctx, STAR, size)

    def context(self, length: int) -> Context:
        ctx = EMPTY
        for k in range(length):
            if k == 0 or self.rng.random() < 0.35:
                ctx = ctx.extend(self._name(_TYPE_NAMES), STAR)
            else:
                ty = self.type(ctx, self.rng.randint(0, 2))
                pool = _TYPE_NAMES if isinstance(self._whnf(ty), Sort) else _NAMES
                ctx = ctx.extend(self._name(pool), ty)
        return ctx

    def term(self, ctx: Context, ty: Term, size: int) -> Term:
        target = self._whnf(ty)
        options = []
        neutral = self._eliminations(ctx, target, size)
        if neutral:
            options.append(lambda: self.rng.choice(neutral))
        match target:
            case Sort():
                options.append(lambda: STAR)
                if size > 0:
                    options += [lambda: self._binder_type(ctx, Pi, size), lambda: self._binder_type(ctx, Sigma, size)]
            case Pi(dom, cod, name, marker):
                options.append(lambda: Lam(dom, self.term(ctx.extend(name, dom, marker), cod, max(size - 1, 0)), name, marker))
            case Sigma(dom, cod):
                options.append(lambda: self._pair(ctx, dom, cod, size))
        if not options:
            raise _Retry()
        t = self.rng.choice(options)()
        if size > 1 and not isinstance(t, Pair) and self.rng.random() < 0.1:
            t = self._redex(ctx, t)
        return t

    def _binder_type(self, ctx: Context, former, size: int) -> Term:
        dom = self.type(ctx, size // 2)
        pool = _TYPE_NAMES if isinstance(self._whnf(dom), Sort) else _NAMES
        name = self._name(pool)
        cod = self.type(ctx.extend(name, dom), size // 2)
        if former is Pi and not occurs(cod, 0):
            name = "_"
        return former(dom, cod, name)

    def _pair(self, ctx: Context, dom: Term, cod: Term, size: int) -> Term:
        a = self.term(ctx, dom, size // 2)
        return Pair(a, self.term(ctx, instantiate(cod, a), size // 2))

    def _redex(self, ctx: Context, t: Term) -> Term:
        """``(\\(y : *). t) S`` for a random type ``S``; contracts back to ``t``."""
        arg = self.type(ctx, 1)
        return App(Lam(STAR, shift(t, 1), "Y"), arg)

    def _eliminations(self, ctx: Context, target: Term, size: int) -> list[Term]:
        found = []
        for i in range(len(ctx)):
            entry = ctx.entries[-1 - i]
            self._walk(ctx, Var(i, entry.name, entry.marker), ctx.lookup(i), target, size, min(size, 3), found)
        return found

    def _walk(self, ctx, head, ty, target, size, depth, found) -> None:
        if self._conv(ty, target):
            found.append(head)
        if depth == 0:
            return
        t = self._whnf(ty)
        match t:
            case Pi(dom, cod):
                try:
                    arg = self.term(ctx, dom, max(size // 2 - 1, 0))
                except _Retry:
                    return
                self._walk(ctx, App(head, arg), instantiate(cod, arg), target, size, depth - 1, found)
            case Sigma(dom, cod):
                self._walk(ctx, Proj(1, head), dom, target, size, depth - 1, found)
                self._walk(ctx, Proj(2, head), instantiate(cod, Proj(1, head)), target, size, depth - 1, found)

    # -- rule-case directed judgments -----------------------------------------

    def _sample(self, case: str) -> Sample:
        rng, size = self.rng, self.size
        match case:
            case "axiom":
                return Sample(EMPTY, STAR, STAR, case)
            case "variable":
                ctx = self.context(rng.randint(1, 3))
                return Sample(ctx, Var(0, ctx.entries[-1].name, ctx.entries[-1].marker), ctx.lookup(0), case)
            case "weakening":
                base = self._sample(rng.choice([c for c in RULE_CASES if c != "weakening"]))
                extra = self.type(base.context, rng.randint(0, 2))
                ctx = base.context.extend(self._name(_NAMES), extra)
                return Sample(ctx, shift(base.term, 1), shift(base.type, 1), case)
            case "pi-formation" | "sigma-formation":
                ctx = self.context(rng.randint(0, 3))
                former = Pi if case == "pi-formation" else Sigma
                return Sample(ctx, self._binder_type(ctx, former, size), STAR, case)
            case "pi-introduction":
                ctx = self.context(rng.randint(0, 3))
                ty = self._binder_type(ctx, Pi, size)
                return Sample(ctx, self.term(ctx, ty, size), ty, case)
            case "sigma-introduction":
                ctx = self.context(rng.randint(0, 3))
                ty = self._binder_type(ctx, Sigma, size)
                return Sample(ctx, self._pair(ctx, ty.dom, ty.cod, size), ty, case)
            case "pi-elimination":
                ctx = self.context(rng.randint(0, 2))
                ctx = ctx.extend(self._name("fgh"), self._binder_type(ctx, Pi, size))
                fty = ctx.lookup(0)
                arg = self.term(ctx, fty.dom, size // 2)
                return Sample(ctx, App(Var(0, ctx.entries[-1].name), arg), instantiate(fty.cod, arg), case)
            case "sigma-elimination":
                ctx = self.context(rng.randint(0, 2))
                ctx = ctx.extend(self._name("pqs"), self._binder_type(ctx, Sigma, size))
                pty = ctx.lookup(0)
                p = Var(0, ctx.entries[-1].name)
                if rng.random() < 0.5:
                    return Sample(ctx, Proj(1, p), pty.dom, case)
                return Sample(ctx, Proj(2, p), instantiate(pty.cod, Proj(1, p)), case)
            case "conversion":
                base = self._sample(rng.choice([c for c in RULE_CASES if c not in ("conversion", "weakening")]))
                stated = App(Lam(STAR, shift(base.type, 1), "X"), STAR)
                return Sample(base.context, base.term, stated, case)
        raise ValueError(f"unknown rule case {case!r}")

    def _valid(self, s: Sample) -> bool:
        try:
            budget = Fuel(self.fuel)
            check_context(None, s.context, budget)
            check(None, s.context, s.term, s.type, budget)
        except (TypeCheckError, FuelExhausted):
            return False
        return True

    @staticmethod
    def _root(s: Sample) -> str | None:
        try:
            return root_case(s.context, s.term, s.type)
        except TypeCheckError:
            return None

    def sample(self, case: str | None = None, attempts: int = 50) -> Sample:
        for _ in range(attempts):
            chosen = case or self.rng.choice(RULE_CASES)
            try:
                s = self._sample(chosen)
            except (_Retry, RecursionError, LstarError):
                continue
            if self._valid(s) and (case is None or self._root(s) == case):
                return s
        raise RuntimeError(f"no well-typed sample for case {case!r} after {attempts} attempts")

    def samples(self, count: int) -> list[Sample]:
        """``count`` judgments cycling through the rule cases in shuffled rounds."""
        out: list[Sample] = []
        while len(out) < count:
            order = list(RULE_CASES)
            self.rng.shuffle(order)
            for case in order[: count - len(out)]:
                out.append(self.sample(case))
        return out


def generate(seed: int, size: int, count: int) -> list[tuple[Context, Term, Term]]:
    """``count`` well-typed lambda-star judgments, deterministic in ``seed``."""
    return [(s.context, s.term, s.type) for s in Generator(seed, size).samples(count)]


# -- redexes ------------------------------------------------------------------


def positions(t: Term, depth: int = 0):
    """Yield ``(path, subterm, depth)`` for every subterm; ``depth`` counts binders crossed."""
    yield (), t, depth
    match t:
        case Pi(a, b) | Sigma(a, b) | Lam(a, b):
            for p, s, d in positions(a, depth):
                yield (0, *p), s, d
            for p, s, d in positions(b, depth + 1):
                yield (1, *p), s, d
        case App(a, b) | Pair(a, b):
            for p, s, d in positions(a, depth):
                yield (0, *p), s, d
            for p, s, d in positions(b, depth):
                yield (1, *p), s, d
        case Proj(_, p):
            for q, s, d in positions(p, depth):
                yield (0, *q), s, d


def replace_at(t: Term, path: tuple[int, ...], new: Term) -> Term:
    if not path:
        return new
    k, rest = path[0], path[1:]
    match t:
        case Pi(a, b, n, m) | Sigma(a, b, n, m) | Lam(a, b, n, m):
            return type(t)(replace_at(a, rest, new), b, n, m) if k == 0 else type(t)(a, replace_at(b, rest, new), n, m)
        case App(a, b):
            return App(replace_at(a, rest, new), b) if k == 0 else App(a, replace_at(b, rest, new))
        case Pair(a, b):
            return Pair(replace_at(a, rest, new), b) if k == 0 else Pair(a, replace_at(b, rest, new))
        case Proj(i, p):
            return Proj(i, replace_at(p, rest, new))
    raise ValueError(f"no subterm at {path}")


def expand(t: Term, rng: random.Random, domain: Term = STAR, filler: Term = STAR) -> Term:
    """Wrap one random subterm in a beta or projection redex that contracts back to it.

    ``domain`` annotates the dummy binder and ``filler`` is the discarded
    argument or pair component, so the result stays inside whatever fragment
    ``t`` lives in.
    """
    spots = list(positions(t))
    path, sub, _ = rng.choice(spots)
    kind = rng.randrange(3)
    if kind == 0:
        redex = App(Lam(domain, shift(sub, 1), "y"), filler)
    elif kind == 1:
        redex = Proj(1, Pair(sub, filler))
    else:
        redex = Proj(2, Pair(filler, sub))
    return replace_at(t, path, redex)


__all__ = [
    "RULE_CASES",
    "Generator",
    "Sample",
    "expand",
    "generate",
    "positions",
    "replace_at",
    "root_case",
]
