"""Acceptance criteria, one test each.

Every criterion records a verdict line; the lines are printed by the terminal
summary hook in ``conftest.py`` so they show up in a plain ``pytest`` run.
"""

import contextlib
import io
import random
import time

from lstar import cli
from lstar.errors import TypeCheckError
from lstar.extensionality import (
    check_extensionality,
    code_of,
    embed_plain,
    embed_prime,
    eqrel_signature,
    prime,
    star,
    star_substitute,
)
from lstar.generate import RULE_CASES, Generator, _Retry, expand, root_case
from lstar.internal import (
    check_extensionality_internal,
    check_tower,
    internal_signature,
    transport,
    transport_context,
)
from lstar.kernel import EMPTY, check, check_context
from lstar.parser import parse_term
from lstar.reduce import Fuel, FuelExhausted, conv
from lstar.source import judgments, load
from lstar.terms import STAR, App, Lam, Var, shift, subst
from lstar.universe import check_reflection, reflect, reflect_context, universe_signature

import goldens
from conftest import CORPUS, FIXTURES, record, verdicts

SEED = 2026
LSTAR_FILES = ["basics.lst", "conversion.lst", "functions.lst", "pairs.lst"]


def lstar_corpus():
    return [j for name in LSTAR_FILES for j in judgments(load(CORPUS / name))]


def u_corpus():
    """Reflected lambda-star judgments followed by the native universe file."""
    out = [(reflect_context(j.context), reflect(j.term), reflect(j.type)) for j in lstar_corpus()]
    out += [(j.context, j.term, code_of(j.type)) for j in judgments(load(CORPUS / "universe.lst"))]
    return out


def substitution_instances(count):
    """``(M, N, x)`` with ``x`` any context position and ``N`` typed over the entries older than ``x``."""
    rng = random.Random(SEED)
    gen = Generator(SEED, size=3)
    out = []
    while len(out) < count:
        s = gen.sample()
        if not len(s.context):
            continue
        x = rng.randrange(len(s.context))
        older = s.context.prefix(len(s.context) - 1 - x)
        try:
            n = gen.term(older, s.context.entries[-1 - x].type, 2)
        except _Retry:
            continue
        out.append((s.term, shift(n, x), x))
    return out


def redex_pairs(count):
    rng = random.Random(SEED)
    gen = Generator(SEED + 1, size=3)
    out = []
    while len(out) < count:
        t = gen.sample().term
        out.append((expand(t, rng), t))
    return out


# -- 1 ----------------------------------------------------------------------------


def test_criterion_1_reflection_suite():
    items = lstar_corpus()
    start = time.perf_counter()
    proved = sum(check_reflection(j.context, j.term, j.type).proved for j in items)
    elapsed = time.perf_counter() - start
    cases = {root_case(j.context, j.term, j.type) for j in items}
    ok = len(items) >= 30 and proved == len(items) and cases == set(RULE_CASES) and elapsed < 10
    record(1, ok, f"reflection: {proved}/{len(items)} proved, {len(cases)}/10 rule cases, {elapsed:.2f}s (< 10s)")
    assert ok


# -- 2 ----------------------------------------------------------------------------


IDENTITY_GOAL = (
    "(A : U) -> (A' : U) -> (A* : Eq A A') -> (x : T A) -> (x' : T A') -> Rel A A' A* x x' -> Rel A A' A* x x'"
)


def test_criterion_2_extensionality_suite():
    items = u_corpus()
    start = time.perf_counter()
    proved = sum(check_extensionality(c, m, a).proved for c, m, a in items)
    elapsed = time.perf_counter() - start
    m, a = (parse_term(s) for s in goldens.IDENTITY)
    identity = check_extensionality(EMPTY, m, a)
    identity_ok = identity.proved and identity.display_goal == parse_term(IDENTITY_GOAL)
    cases = {root_case(j.context, j.term, j.type) for j in lstar_corpus()}
    ok = len(items) >= 30 and proved == len(items) and cases == set(RULE_CASES) and identity_ok and elapsed < 30
    record(
        2,
        ok,
        f"extensionality: {proved}/{len(items)} proved, identity goal {'matches' if identity_ok else 'differs'},"
        f" {elapsed:.2f}s (< 30s)",
    )
    assert ok


# -- 3 ----------------------------------------------------------------------------


def test_criterion_3_substitution_lemmas():
    start = time.perf_counter()
    instances = substitution_instances(500)
    fail = {"ol": 0, "prime": 0, "star": 0}
    for m, n, x in instances:
        if reflect(subst(m, x, n)) != subst(reflect(m), x, reflect(n)):
            fail["ol"] += 1
        if prime(subst(m, x, n)) != subst(prime(m), x, prime(n)):
            fail["prime"] += 1
        om, on = reflect(m), reflect(n)
        if star(subst(om, x, on)) != star_substitute(star(om), x, embed_plain(on), embed_prime(on), star(on)):
            fail["star"] += 1
    elapsed = time.perf_counter() - start
    ok = len(instances) == 500 and not any(fail.values()) and elapsed < 60
    record(3, ok, f"substitution: 500 instances x 3 lemmas, failures {fail}, {elapsed:.2f}s (< 60s)")
    assert ok


# -- 4 ----------------------------------------------------------------------------


def test_criterion_4_conversion_preservation():
    pairs = redex_pairs(500)
    u, eq = universe_signature(), eqrel_signature()
    fail = {"ol": 0, "star": 0}
    for redex, reduct in pairs:
        assert redex != reduct
        if not conv(u, reflect(redex), reflect(reduct)):
            fail["ol"] += 1
        if not conv(eq, star(reflect(redex)), star(reflect(reduct))):
            fail["star"] += 1
    ok = len(pairs) == 500 and not any(fail.values())
    record(4, ok, f"conversion: 500 redex/reduct pairs, failures {fail}")
    assert ok


# -- 5 ----------------------------------------------------------------------------


def test_criterion_5_goldens():
    mismatched = [n for n in goldens.NAMES if goldens.render(n) != goldens.expected(n)]
    ok = len(goldens.NAMES) == 6 and not mismatched
    record(5, ok, f"goldens: {6 - len(mismatched)}/6 byte-for-byte" + (f", differ: {mismatched}" if mismatched else ""))
    assert ok


# -- 6 ----------------------------------------------------------------------------


def _run_cli(*argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main(list(argv))
    return code, buf.getvalue()


def test_criterion_6_robustness():
    half = Lam(STAR, App(Var(0), Var(0)))
    omega = App(half, half)
    start = time.perf_counter()
    try:
        conv(None, omega, App(omega, STAR), Fuel(1000))
        raw_exhausted = False
    except FuelExhausted:
        raw_exhausted = True
    raw_time = time.perf_counter() - start

    start = time.perf_counter()
    loop_code, _ = _run_cli("check", str(FIXTURES / "loop.lst"), "--fuel", "1000")
    loop_time = time.perf_counter() - start

    bad_code, out = _run_cli("star", str(FIXTURES / "illtyped_star.lst"))
    names_subterm = "Mismatch: A has type U but is expected to have type T A" in out

    ok = raw_exhausted and raw_time < 1 and loop_code == 2 and loop_time < 1 and bad_code == 1 and names_subterm
    record(
        6,
        ok,
        f"robustness: raw loop exhausted in {raw_time:.2f}s, loop.lst exit {loop_code} in {loop_time:.2f}s (< 1s),"
        f" ill-typed star exit {bad_code} {'with' if names_subterm else 'without'} Mismatch on A",
    )
    assert ok


PRIMARY_SUITES = [
    test_criterion_1_reflection_suite,
    test_criterion_2_extensionality_suite,
    test_criterion_3_substitution_lemmas,
    test_criterion_4_conversion_preservation,
    test_criterion_5_goldens,
    test_criterion_6_robustness,
]


# -- 7 ----------------------------------------------------------------------------


def test_criterion_7_internal_mode():
    sig = internal_signature()
    transported = internal = 0
    items = u_corpus()
    for c, m, a in items:
        ext = check_extensionality(c, m, a)
        ctx = transport_context(ext.context)
        try:
            check_context(sig, ctx)
            check(sig, ctx, transport(ext.witness), transport(ext.goal))
            transported += 1
        except (TypeCheckError, FuelExhausted):
            pass
        internal += check_extensionality_internal(c, m, a).proved
    m, a = (parse_term(s) for s in goldens.IDENTITY)
    first, second = check_tower(EMPTY, m, a)
    tower = first.proved and second.proved

    # suites 1-6 use the external signatures, which carry no internal codes
    flag_off = all("qEq" not in s.constants for s in (universe_signature(), eqrel_signature()))
    for k, suite in enumerate(PRIMARY_SUITES, 1):
        if k not in verdicts():
            try:
                suite()
            except AssertionError:
                pass
    primary = flag_off and all(verdicts().get(k, (False,))[0] for k in range(1, 7))

    n = len(items)
    ok = transported == n and internal == n and tower and primary
    record(
        7,
        ok,
        f"internal: transported {transported}/{n}, internal star {internal}/{n},"
        f" tower {'proved' if tower else 'failed'}, suites 1-6 {'pass' if primary else 'fail'} with the flag off",
    )
    assert ok
