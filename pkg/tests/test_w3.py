from fractions import Fraction

import pytest

from freevoa import (
    FreeAlgebra,
    ModeCalculus,
    Poly,
    Scalar,
    build_bc_LW,
    build_heis_LW,
    build_LS_WS,
    highest_weight_data,
    verify_w3_ope,
    verify_virasoro,
    zhu_ideal_check,
)
from freevoa.poly import euler_names
from freevoa.w3 import w3_defects

S6 = Scalar(0, 1)


def test_betagamma_realization():
    alg = FreeAlgebra(1)
    L, W = build_LS_WS(alg, 1)
    assert verify_w3_ope(L, W)
    assert not verify_w3_ope(L, 2 * W)


def test_betagamma_realization_in_second_pair():
    alg = FreeAlgebra(2)
    L, W = build_LS_WS(alg, 2)
    assert verify_w3_ope(L, W)
    with pytest.raises(IndexError):
        build_LS_WS(alg, 3)


def test_heisenberg_realization():
    alg = FreeAlgebra(0, 0, (Scalar(1),))
    L, W = build_heis_LW(alg)
    assert verify_w3_ope(L, W)
    j = alg.gen("j1")
    calc = ModeCalculus(alg)
    # j is not primary for L_H: the dj term produces a third-order pole
    assert calc.product(L, j, 2) == -alg.vacuum()
    assert calc.product(L, L, 3) == -alg.vacuum()


def test_heisenberg_literal_coefficient_fails():
    alg = FreeAlgebra(0, 0, (Scalar(1),))
    L, W = build_heis_LW(alg, dj_coeff=1)
    assert verify_virasoro(L, -11)
    assert w3_defects(L, W)


def test_heisenberg_needs_level_one():
    with pytest.raises(ValueError):
        build_heis_LW(FreeAlgebra(0, 0, (Scalar(2),)))


def test_bc_realization():
    alg = FreeAlgebra(0, 1)
    L, W = build_bc_LW(alg)
    assert verify_w3_ope(L, W)


def test_w_w_leading_coefficients():
    alg = FreeAlgebra(1)
    L, W = build_LS_WS(alg, 1)
    calc = ModeCalculus(alg)
    assert calc.product(W, W, 5) == alg.vacuum() * Fraction(-2, 3)
    assert calc.product(W, W, 3) == 2 * L


# (t, w) frozen from the closed form alpha(alpha-1)/2, sqrt6 alpha(alpha-1)(2alpha-1)/18
HIGHEST = {
    -4: (10, -10 * S6),
    -3: (6, Fraction(-14, 3) * S6),
    -2: (3, Fraction(-5, 3) * S6),
    -1: (1, -S6 / 3),
    0: (0, 0),
    1: (1, S6 / 3),
    2: (3, Fraction(5, 3) * S6),
    3: (6, Fraction(14, 3) * S6),
    4: (10, 10 * S6),
}


@pytest.mark.parametrize("d", sorted(HIGHEST))
def test_highest_weight_data(d):
    t, w, ok = highest_weight_data(d)
    assert ok
    assert (t, w) == HIGHEST[d]


def test_zhu_ideal():
    e = Poly.var(euler_names(1), 0)
    l = (e * e + e) / 2
    w = S6 * (Fraction(2, 18) * e ** 3 + Fraction(1, 6) * e * e + Fraction(1, 18) * e)
    assert zhu_ideal_check(l, w)
    zero = Poly(euler_names(1))
    assert zhu_ideal_check(zero, zero)
    assert not zhu_ideal_check(l, e ** 3)
