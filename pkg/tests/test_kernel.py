import pytest
from hypothesis import given, settings, strategies as st

from lstar.errors import (
    CannotInfer,
    IllFormedContext,
    Mismatch,
    NotAFunction,
    NotAPair,
    TypeCheckError,
    UnboundVariable,
)
from lstar.generate import RULE_CASES, Generator, _Retry, positions
from lstar.kernel import (
    EMPTY,
    Context,
    DeltaRule,
    Mode,
    Signature,
    check,
    check_context,
    declare_signature,
    infer,
    parse_rule,
)
from lstar.parser import parse_term
from lstar.reduce import Fuel, FuelExhausted, conv
from lstar.terms import STAR, Const, Lam, Pair, Pi, Proj, Sigma, Var, instantiate, shift


def test_context_examples():
    check_context(None, Context.of(("A", STAR), ("x", Var(0))))
    with pytest.raises(IllFormedContext):
        check_context(None, Context.of(("A", STAR), ("x", Var(0)), ("y", Var(0))))


def test_infer_examples():
    assert infer(None, EMPTY, STAR) == STAR
    ident = parse_term(r"\(A : *). \(x : A). x")
    assert infer(None, EMPTY, ident) == parse_term("(A : *) -> A -> A")
    ctx = Context.of(("p", parse_term("Sg (A : *). A")))
    assert infer(None, ctx, Proj(2, Var(0))) == Proj(1, Var(0))


def test_check_examples():
    check(None, EMPTY, Pair(STAR, STAR), Sigma(STAR, STAR))
    check(None, EMPTY, Lam(STAR, Var(0), "A"), Pi(STAR, STAR, "A"))
    with pytest.raises(Mismatch):
        check(None, EMPTY, STAR, parse_term("(A : *) -> A"))


def test_mismatch_names_term_and_both_types():
    with pytest.raises(Mismatch) as info:
        check(None, Context.of(("A", STAR)), Var(0, "A"), parse_term("(B : *) -> B"))
    msg = str(info.value)
    assert msg == "Mismatch: A has type * but is expected to have type (B : *) -> B"


def test_error_kinds():
    with pytest.raises(NotAFunction):
        infer(None, EMPTY, parse_term("* *"))
    with pytest.raises(NotAPair):
        infer(None, EMPTY, Proj(1, STAR))
    with pytest.raises(CannotInfer):
        infer(None, EMPTY, Pair(STAR, STAR))
    with pytest.raises(NotAPair):
        check(None, EMPTY, Pair(STAR, STAR), STAR)
    with pytest.raises(UnboundVariable):
        infer(None, EMPTY, Const("U"))


def test_annotated_lambda_domain_must_agree():
    with pytest.raises(Mismatch):
        check(None, EMPTY, parse_term(r"\(x : *). x"), parse_term("(x : * -> *) -> * -> *"))


def test_checking_runs_on_fuel():
    check(None, EMPTY, parse_term(r"\(A : *). \(x : (\(y : *). y) A). x"), parse_term("(A : *) -> A -> A"))
    with pytest.raises(FuelExhausted):
        check(None, EMPTY, parse_term(r"\(A : *). \(x : (\(y : *). y) A). x"), parse_term("(A : *) -> A -> A"), Fuel(0))


def test_declared_signatures():
    assert declare_signature("lstar").constants == {}
    u = declare_signature(Mode.LSTAR_U)
    assert set(u.constants) == {"U", "T", "qstar", "qFun", "qSum"}
    assert u.rule_count("T") == 3
    eq = declare_signature("lstarUeq")
    assert eq.rule_count("Rel") == 3
    assert {"Eq", "Rel", "reflstar", "qFunE", "qSumE"} <= set(eq.constants)
    internal = declare_signature("internal")
    assert {"qEq", "qRel", "qEqE", "qRelE"} <= set(internal.constants)


def test_parse_rule_layout():
    r = parse_rule(r"T (qFun A B) = (a : T A) -> T (B a)")
    assert (r.head, r.arity, r.scrutinee, r.constructor, r.ctor_arity) == ("T", 1, 0, "qFun", 2)
    assert r.params == ("A", "B")
    r = parse_rule("Rel _ _ (reflstar) A B = Eq A B")
    assert (r.arity, r.scrutinee, r.ctor_arity, r.n_metas) == (5, 2, 0, 4)


def test_parse_rule_rejects_bad_shapes():
    with pytest.raises(ValueError):
        parse_rule("T A = A")
    with pytest.raises(ValueError):
        parse_rule("T (qFun A A) = A")


def test_signature_validation():
    sig = Signature(Mode.LSTAR_U)
    sig.declare("T", STAR)
    with pytest.raises(ValueError):
        sig.declare("T", STAR)
    with pytest.raises(ValueError):
        sig.add_rule(DeltaRule("T", 1, 0, "qstar", 0, STAR))
    sig.declare("qstar", STAR)
    sig.add_rule(DeltaRule("T", 1, 0, "qstar", 0, STAR))
    with pytest.raises(ValueError):
        sig.add_rule(DeltaRule("T", 1, 0, "qstar", 0, STAR))
    with pytest.raises(ValueError):
        sig.declare("qFun", STAR)
        sig.add_rule(DeltaRule("T", 1, 0, "qFun", 0, Var(0)))


# -- admissible rules on generated judgments -------------------------------


def _has_pair(t):
    return any(isinstance(sub, Pair) for _, sub, _ in positions(t))


def _samples(seed, count=20):
    return Generator(seed, size=3).samples(count)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_generated_judgments_check(seed):
    for s in _samples(seed):
        check_context(None, s.context)
        check(None, s.context, s.term, s.type)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_agreement(seed):
    for s in _samples(seed):
        if _has_pair(s.term):
            continue
        ty = infer(None, s.context, s.term)
        check(None, s.context, ty, STAR)
        assert conv(None, ty, s.type)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_weakening(seed):
    gen = Generator(seed, size=3)
    for s in gen.samples(10):
        extra = gen.type(s.context, 1)
        ctx = s.context.extend("w", extra)
        check(None, ctx, shift(s.term, 1), shift(s.type, 1))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_substitution(seed):
    gen = Generator(seed, size=3)
    for s in gen.samples(20):
        if not len(s.context):
            continue
        prefix = s.context.prefix(len(s.context) - 1)
        try:
            arg = gen.term(prefix, s.context.entries[-1].type, 2)
        except _Retry:
            continue  # no closed-off inhabitant of that type in the prefix
        if _has_pair(arg):
            continue  # bare pairs are check-only, so they cannot land in head position
        check(None, prefix, arg, s.context.entries[-1].type)
        check(None, prefix, instantiate(s.term, arg), instantiate(s.type, arg))


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000))
def test_type_mutants_fail(seed):
    for s in _samples(seed, 10):
        wrong = Pi(s.type, shift(s.type, 1), "_")
        with pytest.raises(TypeCheckError):
            check(None, s.context, s.term, wrong)


def test_every_rule_case_is_generated():
    assert len(RULE_CASES) == 10
    for case in RULE_CASES:
        s = Generator(7, 3).sample(case)
        check(None, s.context, s.term, s.type)
