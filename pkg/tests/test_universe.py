import random

import pytest
from hypothesis import given, settings, strategies as st

from lstar.errors import MalformedInput, Mismatch
from lstar.generate import Generator, expand
from lstar.kernel import EMPTY, Context
from lstar.parser import parse_term
from lstar.reduce import Fuel, FuelExhausted, conv, normalize, whnf
from lstar.terms import STAR, Const, Var, shift, subst
from lstar.universe import QSTAR, U, check_reflection, el, reflect, reflect_context, universe_signature

from strategies import terms


def test_reflect_examples():
    assert reflect(STAR) == QSTAR
    assert reflect(parse_term("(A : *) -> A")) == parse_term(r"qFun qstar (\(A : T qstar). A)")
    assert reflect(parse_term("Sg (A : *). A")) == parse_term(r"qSum qstar (\(A : T qstar). A)")
    assert reflect(parse_term(r"\(A : *). \(x : A). x")) == parse_term(r"\(A : T qstar). \(x : T A). x")
    assert reflect(Var(3)) == Var(3)


def test_reflect_rejects_constants():
    with pytest.raises(MalformedInput):
        reflect(Const("U"))


def test_reflect_context():
    ctx = Context.of(("A", STAR), ("x", Var(0)))
    out = reflect_context(ctx)
    assert [e.type for e in out] == [el(QSTAR), el(Var(0))]
    assert out.names == ctx.names


def test_decoded_reflection():
    sig = universe_signature()
    assert whnf(sig, el(reflect(STAR))) == U
    assert normalize(sig, el(reflect(parse_term("(A : *) -> A -> A")))) == parse_term("(A : U) -> T A -> T A")


def test_check_reflection_examples():
    r = check_reflection(EMPTY, STAR, STAR)
    assert r.proved and r.witness == QSTAR and r.goal == el(QSTAR)
    ident = parse_term(r"\(A : *). \(x : A). x")
    assert check_reflection(EMPTY, ident, parse_term("(A : *) -> A -> A")).proved
    pair = parse_term(r"(*, \(x : *). x)")
    assert check_reflection(EMPTY, pair, parse_term("Sg (A : *). A -> A")).proved


def test_check_reflection_rejects_bad_source():
    with pytest.raises(Mismatch):
        check_reflection(EMPTY, STAR, parse_term("(A : *) -> A"))


def test_reflection_is_fuel_bounded():
    ident = parse_term(r"\(A : *). \(x : A). x")
    assert check_reflection(EMPTY, ident, parse_term("(A : *) -> A -> A"), fuel=1).status == "fuel-exhausted"


@settings(max_examples=200)
@given(terms(scope=2), terms(scope=1))
def test_reflection_commutes_with_substitution(t, n):
    assert reflect(subst(t, 0, n)) == subst(reflect(t), 0, reflect(n))
    assert reflect(shift(t, 2, 1)) == shift(reflect(t), 2, 1)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_reflection_preserves_typing(seed):
    for s in Generator(seed, 3).samples(10):
        assert check_reflection(s.context, s.term, s.type).proved


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_reflection_preserves_conversion(seed):
    rng = random.Random(seed)
    sig = universe_signature()
    for s in Generator(seed, 3).samples(10):
        e = expand(s.term, rng)
        assert conv(None, s.term, e)
        assert conv(sig, reflect(s.term), reflect(e))


def test_raw_reflection_fuel():
    omega = parse_term(r"(\(x : *). x x) (\(x : *). x x)")
    with pytest.raises(FuelExhausted):
        whnf(universe_signature(), reflect(omega), Fuel(100))
