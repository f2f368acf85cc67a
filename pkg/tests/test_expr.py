import random

import pytest
from hypothesis import given

from freevoa import (
    DiagonalAction,
    FreeAlgebra,
    ParseError,
    Scalar,
    State,
    WeylElement,
    build_LS_WS,
    build_theta,
    format_state,
    generator_set,
    parse_poly,
    parse_state,
    parse_weyl,
    to_text,
)
from freevoa.acceptance import _random_poly

from conftest import MIXED, random_states, seeds

ONE = DiagonalAction([[1]])
PAIR = DiagonalAction([[1, -1]])


def p1(text):
    return parse_state(text, ONE.algebra, ONE)


def test_wick_product_literal():
    u = p1(": beta1 gamma1 :")
    assert format_state(u) == ":beta1 gamma1:"


def test_theta_literal_and_print():
    th = build_theta(ONE, 1)
    assert p1("-1 * : gamma1 beta1 :") == th
    assert p1("theta[1]") == th
    assert format_state(th) == "-1*:beta1 gamma1:"


def test_circ_builtin():
    L, _ = build_LS_WS(ONE.algebra, 1)
    assert p1("L_S[1] circ 1 L_S[1]") == 2 * L
    assert p1("theta[1] circ 1 theta[1]") == State.vacuum(ONE.algebra, -1)
    # circ binds loosest
    assert p1("beta1 + gamma1 circ 0 gamma1") == p1("(beta1 + gamma1) circ 0 gamma1")


def test_zero_prints_as_zero():
    assert format_state(State(ONE.algebra)) == "0"
    assert p1("beta1 - beta1") == State(ONE.algebra)


def test_nested_normal_orders():
    alg = FreeAlgebra(2)
    right = parse_state(":beta1 gamma1 beta2:", alg)
    assert right == parse_state(":beta1 (:gamma1 beta2:):", alg)
    assert parse_state(":(:beta1 gamma1:) gamma2:", alg) == parse_state(":beta1 gamma1 gamma2:", alg)
    # the nestings differ by (D beta)(gamma o_0 beta) = -D beta
    a = parse_state(":(:beta1 gamma1:) beta1:", alg)
    b = parse_state(":beta1 (:gamma1 beta1:):", alg)
    assert a - b == parse_state("-1*D^1 beta1", alg)


@pytest.mark.parametrize("text, col", [
    ("beta1 +", 8),
    ("foo1", 1),
    ("beta1 * gamma1", 9),
    (":beta1:", 7),
    ("beta1 circ x gamma1", 12),
])
def test_parse_errors_report_position(text, col):
    with pytest.raises(ParseError) as err:
        p1(text)
    assert err.value.col == col
    assert err.value.line == 1


def test_parse_error_expected_tokens():
    with pytest.raises(ParseError) as err:
        p1("beta1 +")
    assert "generator" in err.value.expected


@pytest.mark.parametrize("text", [
    "beta1",
    "-1/2*:beta1 gamma1: + sqrt6",
    "D^3 gamma1",
    ":beta1 beta1 D^1 gamma1: - 3*gamma1",
    "(1-2*sqrt6)*:D^2 beta1 gamma1:",
])
def test_print_parse_corpus(text):
    u = p1(text)
    assert p1(format_state(u)) == u
    assert format_state(p1(format_state(u))) == format_state(u)


def test_weyl_and_poly_parsing():
    assert parse_weyl("e1^2 + d1 x1", 1) == parse_weyl("x1^2 d1^2 + 2*x1 d1 + 1", 1)
    assert to_text(parse_weyl("x1 d1", 1)) == "x1 d1"
    assert to_text(parse_poly("xp1 x1", 1)) == str(parse_poly("x1 xp1", 1))


def test_generator_sets_round_trip():
    for act in (ONE, PAIR, DiagonalAction([[1, Scalar(0, 1)]])):
        for u in generator_set(act).values():
            assert parse_state(format_state(u), act.algebra) == u


@given(seeds)
def test_random_states_round_trip(seed):
    for u in random_states(seed, MIXED, 3, 6):
        assert parse_state(format_state(u), MIXED) == u


@given(seeds)
def test_random_weyl_and_poly_round_trip(seed):
    rnd = random.Random(seed)
    n = rnd.randint(1, 2)
    p = _random_poly(rnd, n, 3)
    assert parse_poly(str(p), n) == p
    w = WeylElement(n, {(e[n:], e[:n]): c for e, c in p.items()})
    assert parse_weyl(str(w), n) == w
