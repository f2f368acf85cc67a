import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from freevoa import (
    ActionMatrix,
    DiagonalAction,
    FreeAlgebra,
    Scalar,
    State,
    WeylElement,
    build_LS_WS,
    build_psi_classical,
    build_tau,
    build_theta,
    classical_invariant,
    cokernel_probe,
    derive,
    euler,
    grading,
    integer_kernel_basis,
    parse_state,
    parse_weyl,
    weyl_omega,
    zhu_image,
)
from freevoa.state import INHOMOGENEOUS
from freevoa.weyl import commutator, weyl_product

from conftest import random_states, seeds

S6 = Scalar(0, 1)
HALF = Fraction(1, 2)


def W(text, n=1):
    return parse_weyl(text, n)


def test_weyl_product_examples():
    assert weyl_product(W("d1"), W("x1")) == W("x1 d1 + 1")
    assert weyl_product(W("x1"), W("d1")) == W("x1 d1")
    assert weyl_product(W("d1^2"), W("x1^2")) == W("x1^2 d1^2 + 4*x1 d1 + 2")


def test_tau():
    assert build_tau(ActionMatrix([[1]]), 1) == -euler(1, 0)
    A = ActionMatrix([[1, -1]])
    tau = build_tau(A, 1)
    for l in [(1, 1), (2, -1), (-3, 0)]:
        om = weyl_omega(l)
        assert commutator(tau, om) == -(l[0] - l[1]) * om
    for j in range(2):
        assert not commutator(tau, euler(2, j))


def test_classical_invariants():
    A = ActionMatrix([[1, -1]])
    assert classical_invariant(euler(2, 0), A)
    for l in integer_kernel_basis(A):
        assert classical_invariant(weyl_omega(l), A)
    assert not classical_invariant(W("x1"), ActionMatrix([[1]]))


def test_psi_classical():
    assert build_psi_classical(ActionMatrix([[1, -1]])) == []
    A = ActionMatrix([[1, S6, 0]])
    (psi,) = build_psi_classical(A)
    # proportional to sqrt6 e1 - e2
    ratio = psi.coeff((1, 0, 0), (1, 0, 0)) / psi.coeff((0, 1, 0), (0, 1, 0))
    assert ratio == -S6
    assert len(build_psi_classical(ActionMatrix([[1, S6]]))) == 1
    B = ActionMatrix([[1, 1, 1]])
    for psi in build_psi_classical(B):
        for l in integer_kernel_basis(B):
            assert not commutator(psi, weyl_omega(l))


@pytest.mark.parametrize("alpha", [0, HALF, 1])
def test_zhu_images(alpha):
    alg = FreeAlgebra(1)
    gb = parse_state(":gamma1 beta1:", alg)
    assert zhu_image(gb, [alpha]) == W("x1 d1") + (1 - alpha)
    L, Wf = build_LS_WS(alg, 1)
    assert zhu_image(L, [alpha]) == W("1/2*e1^2 + 1/2*e1")
    expected = S6 * (W("e1^3") / 9 + W("e1^2") / 6 + W("e1") / 18)
    assert zhu_image(Wf, [alpha]) == expected


def test_zhu_depends_on_alpha():
    gb = parse_state(":gamma1 beta1:", FreeAlgebra(1))
    assert zhu_image(gb, [0]) != zhu_image(gb, [1])


def test_zhu_rejects_other_generators():
    with pytest.raises(ValueError):
        zhu_image(FreeAlgebra(1, 1).gen("b1"), [HALF])


@pytest.mark.parametrize("rows", [[[1]], [[1, -1]], [[1, 2], [0, 1]]])
def test_zhu_of_theta(rows):
    act = DiagonalAction(rows)
    n = act.n
    rnd = random.Random(len(rows) * 7 + n)
    alpha = [Fraction(rnd.randint(-2, 4), 2) for _ in range(n)]
    for i in range(1, act.m + 1):
        a = act.row(i)
        expected = WeylElement.const(n, sum(x * y for x, y in zip(a, alpha)))
        for j in range(n):
            expected = expected - a[j] * (euler(n, j) + 1)
        assert zhu_image(build_theta(act, i), alpha) == expected


@given(seeds, st.sampled_from([0, HALF, 1, Fraction(3, 2)]))
def test_zhu_of_derivative(seed, alpha):
    alg = FreeAlgebra(1)
    for u in random_states(seed, alg, 2):
        for m in u:
            mono = State(alg, {m: 1})
            wt = grading(mono, "weight", [alpha])
            assert wt is not INHOMOGENEOUS
            assert zhu_image(derive(mono), [alpha]) == -wt * zhu_image(mono, [alpha])


@pytest.mark.parametrize("D", [3, 6])
def test_cokernel(D):
    for alpha in ([0], [HALF], [1]):
        r = cokernel_probe(DiagonalAction([[1]]), alpha, D)
        assert r["codim"] == 1
        assert r["representatives"] == [euler(1, 0)]
        assert r["theta_covers"]


def random_weyl(rnd, n, deg):
    terms = {}
    for _ in range(rnd.randint(1, 3)):
        K = tuple(rnd.randint(0, deg) for _ in range(n))
        L = tuple(rnd.randint(0, deg) for _ in range(n))
        if sum(K) + sum(L) <= deg:
            terms[K, L] = rnd.choice([-2, -1, 1, 3, HALF, S6])
    return WeylElement(n, terms)


@given(seeds)
def test_weyl_associativity(seed):
    rnd = random.Random(seed)
    n = rnd.randint(1, 2)
    a, b, c = (random_weyl(rnd, n, 3) for _ in range(3))
    assert weyl_product(weyl_product(a, b), c) == weyl_product(a, weyl_product(b, c))


@given(seeds)
def test_commutator_lowers_bernstein_degree(seed):
    rnd = random.Random(seed)
    n = rnd.randint(1, 2)
    a, b = random_weyl(rnd, n, 3), random_weyl(rnd, n, 3)
    c = commutator(a, b)
    if c and a and b:
        assert c.degree() <= a.degree() + b.degree() - 2


@given(seeds)
def test_weyl_json_round_trip(seed):
    rnd = random.Random(seed)
    a = random_weyl(rnd, 2, 3)
    assert WeylElement.from_json(a.to_json()) == a
