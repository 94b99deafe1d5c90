"""Type-in-type lambda calculus with Σ types, a universe of codes, and the
reflection and star translations between its systems."""

from .errors import (
    CannotInfer,
    IllFormedContext,
    LstarError,
    MalformedInput,
    Mismatch,
    NotAFunction,
    NotAPair,
    NotASort,
    NotAUContext,
    ParseError,
    TypeCheckError,
    UnboundVariable,
)
from .extensionality import (
    check_extensionality,
    check_prime_typing,
    embed_plain,
    embed_prime,
    eqrel_signature,
    is_U_context,
    prime,
    star,
    star_context,
)
from .internal import check_extensionality_internal, internal_signature, star_internal
from .kernel import EMPTY, Context, Entry, Mode, Signature, check, check_context, declare_signature, infer
from .parser import parse, parse_term
from .printer import print_term
from .reduce import DEFAULT_FUEL, Fuel, FuelExhausted, conv, normalize, whnf
from .report import WitnessReport
from .terms import STAR, App, Const, Lam, Pair, Pi, Proj, Sigma, Sort, Term, Var
from .universe import check_reflection, reflect, reflect_context, universe_signature

__all__ = [
    "DEFAULT_FUEL",
    "EMPTY",
    "STAR",
    "App",
    "CannotInfer",
    "Const",
    "Context",
    "Entry",
    "Fuel",
    "FuelExhausted",
    "IllFormedContext",
    "Lam",
    "LstarError",
    "MalformedInput",
    "Mismatch",
    "Mode",
    "NotAFunction",
    "NotAPair",
    "NotASort",
    "NotAUContext",
    "Pair",
    "ParseError",
    "Pi",
    "Proj",
    "Sigma",
    "Signature",
    "Sort",
    "Term",
    "TypeCheckError",
    "UnboundVariable",
    "Var",
    "WitnessReport",
    "check",
    "check_context",
    "check_extensionality",
    "check_extensionality_internal",
    "check_prime_typing",
    "check_reflection",
    "conv",
    "declare_signature",
    "embed_plain",
    "embed_prime",
    "eqrel_signature",
    "infer",
    "internal_signature",
    "is_U_context",
    "normalize",
    "parse",
    "parse_term",
    "prime",
    "print_term",
    "reflect",
    "reflect_context",
    "star",
    "star_context",
    "star_internal",
    "universe_signature",
    "whnf",
]
