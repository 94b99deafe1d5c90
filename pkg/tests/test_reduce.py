import time

import pytest
from hypothesis import assume, given, settings

from lstar.parser import parse_term
from lstar.reduce import DepthExhausted, Fuel, FuelExhausted, conv, normalize, whnf
from lstar.terms import STAR, App, Const, Lam, Pair, Proj, Var
from lstar.universe import universe_signature

from strategies import terms

OMEGA_HALF = Lam(STAR, App(Var(0), Var(0)))
OMEGA = App(OMEGA_HALF, OMEGA_HALF)


def test_beta_step():
    assert whnf(None, App(Lam(STAR, Var(0)), STAR)) == STAR


def test_decoding_qstar():
    assert whnf(universe_signature(), parse_term("T qstar")) == Const("U")


def test_omega_exhausts_fuel():
    with pytest.raises(FuelExhausted):
        whnf(None, OMEGA, Fuel(50))


def test_fuel_counts_each_step_once():
    fuel = Fuel(10)
    normalize(None, parse_term(r"(\(x : *). x) ((\(y : *). y) *)"), fuel)
    assert fuel.used == 2
    fuel = Fuel(10)
    whnf(universe_signature(), parse_term("T qstar"), fuel)
    assert fuel.used == 1


def test_normalize_examples():
    sig = universe_signature()
    assert normalize(sig, parse_term(r"T (qFun qstar (\(A : U). A))")) == parse_term("(a : U) -> T a")
    assert normalize(None, parse_term(r"(\(x : *). x) ((\(y : *). y) *)")) == STAR
    assert normalize(None, Proj(1, Pair(STAR, Var(0)))) == STAR


def test_conv_examples():
    sig = universe_signature()
    assert conv(None, parse_term("(x : *) -> x"), parse_term("(y : *) -> y"))
    assert conv(sig, parse_term(r"T (qFun qstar (\(A : U). A))"), parse_term("(a : U) -> T a"))
    assert not conv(None, STAR, parse_term("(A : *) -> A"))


def test_conv_exhaustion_is_not_false():
    with pytest.raises(FuelExhausted):
        conv(None, OMEGA, App(OMEGA, STAR), Fuel(1000))


def test_alpha_equal_loops_convert_without_reducing():
    renamed = App(OMEGA_HALF, Lam(STAR, App(Var(0), Var(0)), "y"))
    assert conv(None, OMEGA, renamed, Fuel(10))


def test_raw_loop_fails_fast():
    start = time.perf_counter()
    with pytest.raises(FuelExhausted):
        conv(None, OMEGA, App(OMEGA, STAR), Fuel(1000))
    assert time.perf_counter() - start < 1.0


def test_deep_nesting_reports_depth():
    assert issubclass(DepthExhausted, FuelExhausted)
    assert "recursion" in str(DepthExhausted())


def test_inert_constant_application():
    sig = universe_signature()
    stuck = parse_term("T (qFun qstar)")
    assert whnf(sig, stuck) == stuck
    assert normalize(sig, App(Const("T"), Var(0))) == App(Const("T"), Var(0))


def test_stuck_projection_keeps_reduced_scrutinee():
    t = Proj(1, App(Lam(STAR, Var(0)), Var(3)))
    assert whnf(None, t) == Proj(1, Var(3))


def _bounded(f, *args):
    try:
        return f(*args, Fuel(2_000))
    except FuelExhausted:
        assume(False)


@settings(max_examples=150)
@given(terms())
def test_conv_reflexive(t):
    assert conv(None, t, t, Fuel(2_000))


@settings(max_examples=150)
@given(terms(), terms())
def test_conv_symmetric(t, u):
    assert _bounded(lambda a, b, f: conv(None, a, b, f), t, u) == _bounded(lambda a, b, f: conv(None, b, a, f), t, u)


@settings(max_examples=150)
@given(terms())
def test_normalize_idempotent(t):
    n = _bounded(lambda a, f: normalize(None, a, f), t)
    assert normalize(None, n, Fuel(2_000)) == n


@settings(max_examples=100)
@given(terms(), terms(), terms())
def test_conv_transitive(t, u, v):
    call = lambda a, b: _bounded(lambda x, y, f: conv(None, x, y, f), a, b)  # noqa: E731
    if call(t, u) and call(u, v):
        assert call(t, v)


@settings(max_examples=100)
@given(terms())
def test_term_converts_with_its_normal_form(t):
    n = _bounded(lambda a, f: normalize(None, a, f), t)
    assert conv(None, t, n, Fuel(20_000))
