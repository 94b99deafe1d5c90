"""Bidirectional checker for the PTS rules of lambda-star.

The extended systems add constants and delta rules through a
:class:`Signature`; the typing rules themselves never change.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import (
    CannotInfer,
    IllFormedContext,
    Mismatch,
    NotAFunction,
    NotAPair,
    NotASort,
    TypeCheckError,
    UnboundVariable,
)
from .printer import context_names, print_term
from .reduce import Fuel, FuelExhausted, as_fuel, conv, normalize, whnf
from .terms import (
    PLAIN,
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
    free_indices,
    instantiate,
    shift,
    subst_block,
)


class Mode(str, enum.Enum):
    LSTAR = "lstar"
    LSTAR_U = "lstarU"
    LSTAR_U_EQ = "lstarUeq"
    INTERNAL = "internal"


# -- contexts -----------------------------------------------------------------


@dataclass(frozen=True)
class Entry:
    name: str
    type: Term
    marker: Marker = PLAIN


@dataclass(frozen=True)
class Context:
    """Telescope of declarations, outermost first; de Bruijn 0 is the last."""

    entries: tuple[Entry, ...] = ()

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def extend(self, name: str, ty: Term, marker: Marker = PLAIN) -> "Context":
        return Context(self.entries + (Entry(name, ty, marker),))

    def lookup(self, index: int) -> Term:
        """Type of variable ``index``, valid in the full context."""
        if not 0 <= index < len(self.entries):
            raise UnboundVariable(f"variable #{index} is not in scope", Var(index))
        return shift(self.entries[-1 - index].type, index + 1)

    def prefix(self, n: int) -> "Context":
        return Context(self.entries[:n])

    @property
    def names(self) -> list[tuple[str, Marker]]:
        return [(e.name, e.marker) for e in self.entries]

    @classmethod
    def of(cls, *pairs: tuple[str, Term]) -> "Context":
        return cls(tuple(Entry(n, t) for n, t in pairs))


EMPTY = Context()


# -- signatures ---------------------------------------------------------------


@dataclass(frozen=True)
class DeltaRule:
    """``head a1 .. an`` with ``a_scrutinee = ctor c1 .. ck`` reduces to ``rhs``.

    ``rhs`` is scoped over metavariables ``c1 .. ck`` followed by the head
    arguments other than the scrutinee, outermost first.
    """

    head: str
    arity: int
    scrutinee: int
    constructor: str
    ctor_arity: int
    rhs: Term
    params: tuple[str, ...] = ()

    @property
    def n_metas(self) -> int:
        return self.ctor_arity + self.arity - 1

    def instantiate(self, ctor_args, other_args) -> Term:
        metas = list(ctor_args) + list(other_args)
        return subst_block(self.rhs, 0, metas[::-1])


@dataclass
class Signature:
    mode: Mode
    constants: dict[str, Term] = field(default_factory=dict)
    rules: dict[str, dict[str, DeltaRule]] = field(default_factory=dict)

    def declare(self, name: str, ty: Term) -> None:
        if name in self.constants:
            raise ValueError(f"constant {name!r} declared twice")
        self.constants[name] = ty

    def add_rule(self, rule: DeltaRule) -> None:
        group = self.rules.setdefault(rule.head, {})
        for other in group.values():
            if (other.arity, other.scrutinee) != (rule.arity, rule.scrutinee):
                raise ValueError(f"rules for {rule.head!r} disagree on arity or scrutinee")
        if rule.constructor in group:
            raise ValueError(f"overlapping rules for {rule.head} ({rule.constructor} ...)")
        if rule.head not in self.constants or rule.constructor not in self.constants:
            raise ValueError(f"rule {rule.head}/{rule.constructor} mentions undeclared constants")
        if any(i >= rule.n_metas for i in free_indices(rule.rhs)):
            raise ValueError(f"rule {rule.head}/{rule.constructor} has an unbound metavariable")
        group[rule.constructor] = rule

    def rule_count(self, head: str) -> int:
        return len(self.rules.get(head, {}))

    def copy(self, mode: Mode) -> "Signature":
        return Signature(
            mode,
            dict(self.constants),
            {h: dict(g) for h, g in self.rules.items()},
        )


# -- checking -----------------------------------------------------------------


def _report_form(sig, t: Term, fuel: Fuel) -> Term:
    budget = min(fuel.remaining, 10_000)
    try:
        return normalize(sig, t, Fuel(budget))
    except (FuelExhausted, RecursionError):
        return t


def _mismatch(sig, ctx, term, expected, got, fuel, what: str = "") -> Mismatch:
    names = context_names(ctx.names)
    exp = _report_form(sig, expected, fuel)
    gt = _report_form(sig, got, fuel)
    if what:
        msg = f"{what} {print_term(term, names)}: expected {print_term(exp, names)}"
    else:
        msg = (
            f"{print_term(term, names)} has type {print_term(gt, names)}"
            f" but is expected to have type {print_term(exp, names)}"
        )
    return Mismatch(msg, term, expected=exp, got=gt)


def _check_sort(sig, ctx: Context, ty: Term, fuel: Fuel) -> None:
    k = whnf(sig, infer(sig, ctx, ty, fuel), fuel)
    if not isinstance(k, Sort):
        raise NotASort(f"{print_term(ty, context_names(ctx.names))} is not a type", ty)


def infer(sig, ctx: Context, t: Term, fuel: Fuel | int | None = None) -> Term:
    """Synthesize a type for ``t``."""
    fuel = as_fuel(fuel)
    match t:
        case Sort():
            return t
        case Var(i):
            return ctx.lookup(i)
        case Const(name):
            if sig is None or name not in sig.constants:
                mode = sig.mode.value if sig is not None else "lstar"
                raise UnboundVariable(f"constant {name!r} is not part of mode {mode}", t)
            return sig.constants[name]
        case Pi(dom, cod, name, marker) | Sigma(dom, cod, name, marker):
            _check_sort(sig, ctx, dom, fuel)
            _check_sort(sig, ctx.extend(name, dom, marker), cod, fuel)
            return Sort()
        case Lam(dom, body, name, marker):
            _check_sort(sig, ctx, dom, fuel)
            cod = infer(sig, ctx.extend(name, dom, marker), body, fuel)
            return Pi(dom, cod, name, marker)
        case App(f, a):
            fty = whnf(sig, infer(sig, ctx, f, fuel), fuel)
            if not isinstance(fty, Pi):
                raise NotAFunction(
                    f"{print_term(f, context_names(ctx.names))} is applied but is not a function",
                    f,
                )
            _check(sig, ctx, a, fty.dom, fuel)
            return instantiate(fty.cod, a)
        case Proj(i, p):
            pty = whnf(sig, infer(sig, ctx, p, fuel), fuel)
            if not isinstance(pty, Sigma):
                raise NotAPair(
                    f"{print_term(p, context_names(ctx.names))} is projected but is not a pair",
                    p,
                )
            return pty.dom if i == 1 else instantiate(pty.cod, Proj(1, p))
        case Pair():
            raise CannotInfer("cannot infer the type of a bare pair; annotate it", t)
    raise TypeError(f"not a term: {t!r}")


def _check(sig, ctx: Context, t: Term, ty: Term, fuel: Fuel) -> None:
    if isinstance(t, Pair):
        target = whnf(sig, ty, fuel)
        if not isinstance(target, Sigma):
            names = context_names(ctx.names)
            raise NotAPair(
                f"pair {print_term(t, names)} is checked against non-Σ type {print_term(ty, names)}",
                t,
            )
        _check(sig, ctx, t.fst, target.dom, fuel)
        _check(sig, ctx, t.snd, instantiate(target.cod, t.fst), fuel)
        return
    if isinstance(t, Lam):
        target = whnf(sig, ty, fuel)
        if isinstance(target, Pi):
            _check_sort(sig, ctx, t.dom, fuel)
            if not conv(sig, t.dom, target.dom, fuel):
                raise _mismatch(sig, ctx, t.dom, target.dom, t.dom, fuel, what="binder domain of")
            _check(sig, ctx.extend(t.name, t.dom, t.marker), t.body, target.cod, fuel)
            return
    got = infer(sig, ctx, t, fuel)
    if not conv(sig, got, ty, fuel):
        raise _mismatch(sig, ctx, t, ty, got, fuel)


def check(sig, ctx: Context, t: Term, ty: Term, fuel: Fuel | int | None = None) -> None:
    """Raise a :class:`TypeCheckError` unless ``ctx |- t : ty``."""
    fuel = as_fuel(fuel)
    _check_sort(sig, ctx, ty, fuel)
    _check(sig, ctx, t, ty, fuel)


def check_context(sig, ctx: Context, fuel: Fuel | int | None = None) -> None:
    fuel = as_fuel(fuel)
    for n, entry in enumerate(ctx.entries):
        prefix = ctx.prefix(n)
        try:
            _check_sort(sig, prefix, entry.type, fuel)
        except UnboundVariable:
            raise
        except NotASort as exc:
            raise IllFormedContext(f"declaration of {entry.name!r}: {exc.message}", entry.type) from exc


def declare_signature(mode: Mode | str) -> Signature:
    """The frozen, self-checked signature of a system mode."""
    mode = Mode(mode)
    if mode is Mode.LSTAR:
        return Signature(mode)
    if mode is Mode.LSTAR_U:
        from .universe import universe_signature

        return universe_signature()
    if mode is Mode.LSTAR_U_EQ:
        from .extensionality import eqrel_signature

        return eqrel_signature()
    from .internal import internal_signature

    return internal_signature()


def self_check(sig: Signature, fuel: int = 100_000) -> None:
    """Every constant's type must be a type under the constants before it."""
    partial = Signature(sig.mode)
    for name, ty in sig.constants.items():
        try:
            _check_sort(partial, EMPTY, ty, Fuel(fuel))
        except TypeCheckError as exc:
            raise AssertionError(f"signature {sig.mode.value}: type of {name} is ill-formed: {exc}") from exc
        partial.constants[name] = ty
        for head, group in sig.rules.items():
            for ctor, rule in group.items():
                if head in partial.constants and ctor in partial.constants:
                    partial.rules.setdefault(head, {})[ctor] = rule


def parse_rule(text: str) -> DeltaRule:
    """Read a rule such as ``Rel _ _ (qFunE A A' B B' As Bs) f f' = ...``.

    Exactly one argument on the left is a parenthesized constructor pattern;
    the others are metavariables or ``_``.
    """
    from .parser import parse_term, tokenize

    lhs, rhs = text.split("=", 1)
    toks = [t for t in tokenize(lhs) if t.kind != "eof"]
    head = toks[0].text
    args: list[list[str] | str] = []
    k = 1
    while k < len(toks):
        if toks[k].kind == "(":
            close = next(j for j in range(k, len(toks)) if toks[j].kind == ")")
            args.append([t.text for t in toks[k + 1 : close]])
            k = close + 1
        else:
            args.append(toks[k].text)
            k += 1
    pats = [n for n, a in enumerate(args) if isinstance(a, list)]
    if len(pats) != 1:
        raise ValueError(f"rule needs exactly one constructor pattern: {text!r}")
    pos = pats[0]
    ctor, *ctor_vars = args[pos]
    others = [a for n, a in enumerate(args) if n != pos]
    metas = list(ctor_vars) + others
    named = [m for m in metas if m != "_"]
    if len(set(named)) != len(named):
        raise ValueError(f"rule is not left-linear: {text!r}")
    body = parse_term(rhs.strip(), metas)
    return DeltaRule(head, len(args), pos, ctor, len(ctor_vars), body, tuple(metas))


def build_signature(mode: Mode, constants: list[tuple[str, str]], rules: list[str]) -> Signature:
    from .parser import parse_term

    sig = Signature(mode)
    for name, ty in constants:
        sig.declare(name, parse_term(ty))
    for text in rules:
        sig.add_rule(parse_rule(text))
    self_check(sig)
    return sig
