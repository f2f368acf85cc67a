from fractions import Fraction

import pytest
from hypothesis import given

from freevoa import FreeAlgebra, ModeCalculus, Scalar, State, derive, grading, normalize
from freevoa.algebra import AlgebraMismatch
from freevoa.state import INHOMOGENEOUS

from conftest import MIXED, random_states, seeds

ALG = FreeAlgebra(1, 1, (Scalar(1),))
BETA, GAMMA, B, C, J = range(5)


def mono_state(alg, factors, coeff=1):
    return normalize(alg, [(factors, coeff)])


def test_generator_order_and_contractions():
    alg = FreeAlgebra(2, 1, (Scalar(1), Scalar(-1)))
    names = [g.name for g in alg.generators]
    assert names == ["beta1", "beta2", "gamma1", "gamma2", "b1", "c1", "j1", "j2"]
    assert alg.contraction(0, 2, 0) == 1
    assert alg.contraction(2, 0, 0) == -1
    assert alg.contraction(0, 3, 0) == 0
    assert alg.contraction(4, 5, 0) == 1 and alg.contraction(5, 4, 0) == 1
    assert alg.contraction(6, 6, 1) == 1 and alg.contraction(7, 7, 1) == -1
    assert alg.parity(4) == 1 and alg.parity(0) == 0


def test_algebra_json_round_trip():
    alg = FreeAlgebra(2, 1, (Scalar(1), Scalar(0, 1)))
    assert FreeAlgebra.from_json(alg.to_json()) == alg


def test_normalize_sorts_even_factors():
    u = mono_state(ALG, [(GAMMA, 0), (BETA, 0)])
    assert u == mono_state(ALG, [(BETA, 0), (GAMMA, 0)])
    assert list(u.items()) == [(((BETA, 0), (GAMMA, 0)), 1)]


def test_normalize_odd_square_and_koszul_sign():
    assert not mono_state(ALG, [(B, 0), (B, 0)])
    assert mono_state(ALG, [(C, 0), (B, 0)]) == -mono_state(ALG, [(B, 0), (C, 0)])
    # distinct derivative orders do not vanish
    assert mono_state(ALG, [(B, 1), (B, 0)]) == -mono_state(ALG, [(B, 0), (B, 1)])


def test_normalize_drops_cancelled_terms():
    u = normalize(ALG, [([(BETA, 0)], 1), ([(BETA, 0)], -1)])
    assert not u and str(u) == "0"


def test_mismatched_algebras():
    with pytest.raises(AlgebraMismatch):
        State.vacuum(ALG) + State.vacuum(FreeAlgebra(1))


def test_derive():
    one = State.vacuum(ALG)
    assert not derive(one)
    assert derive(ALG.gen("beta1")) == ALG.gen("beta1", 1)
    bg = mono_state(ALG, [(BETA, 0), (GAMMA, 0)])
    expected = mono_state(ALG, [(BETA, 1), (GAMMA, 0)]) + mono_state(ALG, [(BETA, 0), (GAMMA, 1)])
    assert derive(bg) == expected


def test_mode_basis_factorials():
    # D^2 beta is 2! beta(-3)|0>
    u = ALG.gen("beta1", 2)
    assert u.mode_terms() == {((BETA, 2),): 2}
    assert State.from_mode_terms(ALG, u.mode_terms()) == u


def test_gradings():
    u = mono_state(ALG, [(BETA, 1), (GAMMA, 0)])
    assert grading(u, "weight", alpha=[Fraction(1, 2)]) == 2
    assert grading(u, "weight", alpha=[0]) == 2
    assert grading(ALG.gen("beta1"), "bgCharge") == -1
    assert grading(ALG.gen("gamma1"), "bgCharge") == 1
    assert grading(ALG.gen("c1"), "bcCharge") == 1
    assert (grading(u, "degree"), grading(u, "level")) == (2, 1)
    assert grading(ALG.gen("j1"), "weight") == 1
    assert grading(ALG.gen("beta1") + ALG.gen("beta1", 1), "level") is INHOMOGENEOUS
    assert grading(State(ALG), "degree") is None


def test_state_json_round_trip():
    u = mono_state(ALG, [(BETA, 1), (GAMMA, 0)], Scalar(1, 2)) + State.vacuum(ALG, Fraction(-1, 3))
    assert State.from_json(u.to_json()) == u


@given(seeds)
def test_normalize_is_idempotent(seed):
    for u in random_states(seed, MIXED, 3):
        raw = [(list(m), c) for m, c in u.items()]
        assert normalize(MIXED, raw) == u


@given(seeds)
def test_even_factor_order_is_irrelevant(seed):
    alg = FreeAlgebra(2)
    for u in random_states(seed, alg, 3):
        raw = [(list(reversed(m)), c) for m, c in u.items()]
        assert normalize(alg, raw) == u


@given(seeds)
def test_derive_shifts_gradings(seed):
    alg = FreeAlgebra(1, 0, (Scalar(1),))
    for u in random_states(seed, alg, 3):
        for m in u:
            mono = State(alg, {m: 1})
            dm = derive(mono)
            for alpha in ([0], [Fraction(1, 2)], [1]):
                assert grading(dm, "weight", alpha) == grading(mono, "weight", alpha) + 1
            assert grading(dm, "level") == grading(mono, "level") + 1
            assert grading(dm, "degree") == grading(mono, "degree")


@given(seeds)
def test_grading_additive_on_wick_products(seed):
    calc = ModeCalculus(MIXED)
    u, v = random_states(seed, MIXED, 2)
    uv = calc.product(u, v, -1)
    for which in ("weight", "bgCharge", "bcCharge", "degree", "level"):
        gu, gv, guv = grading(u, which), grading(v, which), grading(uv, which)
        if INHOMOGENEOUS in (gu, gv) or guv is None:
            continue
        if which in ("degree", "level"):
            # composite Wick products pick up contraction terms
            continue
        assert guv == gu + gv
