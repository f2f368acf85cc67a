from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from freevoa import (
    DiagonalAction,
    ModeCalculus,
    Scalar,
    State,
    bprime_central_charge,
    bprime_generator_checks,
    build_LS_WS,
    build_omega,
    build_phi,
    build_theta,
    circle,
    conformal_b_prime,
    derive,
    enumerate_monomials,
    extract_unit,
    generator_set,
    graded_commutant_basis,
    invariance_defects,
    is_invariant,
    lattice_contraction,
    parse_state,
    quantum_correct,
    verify_virasoro,
    wick,
)
from freevoa.acceptance import _fock_theta_kernel_dim
from freevoa.commutant import _constraint_rows
from freevoa.linalg import rref

S6 = Scalar(0, 1)
ONE = DiagonalAction([[1]])
PAIR = DiagonalAction([[1, -1]])


def st_(text, act):
    return parse_state(text, act.algebra, act)


def test_theta_examples():
    assert build_theta(ONE, 1) == st_("-1*:gamma1 beta1:", ONE)
    assert build_theta(PAIR, 1) == st_("-1*:gamma1 beta1: + :gamma2 beta2:", PAIR)
    th = build_theta(PAIR, 1)
    assert circle(th, th, 1) == State.vacuum(PAIR.algebra, -2)
    with pytest.raises(IndexError):
        build_theta(PAIR, 2)


def test_phi_examples():
    phi = build_phi(PAIR, [1, 1])
    assert phi == st_("-1*:gamma1 beta1: - :gamma2 beta2:", PAIR)
    assert circle(phi, phi, 1) == State.vacuum(PAIR.algebra, -2)
    assert not invariance_defects(phi, PAIR)
    with pytest.raises(ValueError):
        build_phi(PAIR, [1, 0])


def test_omega():
    alg = PAIR.algebra
    assert build_omega(alg, (2, -3)) == st_(":gamma1 gamma1 beta2 beta2 beta2:", PAIR)
    assert build_omega(alg, (0, 0)) == State.vacuum(alg)


def test_invariance_examples():
    L, _ = build_LS_WS(PAIR.algebra, 2)
    assert is_invariant(L, PAIR)
    assert not is_invariant(build_omega(PAIR.algebra, (1, 0)), PAIR)
    assert not is_invariant(ONE.algebra.gen("gamma1"), ONE)
    # theta is not invariant: its double pole with itself survives
    assert invariance_defects(build_theta(ONE, 1), ONE) == [(1, 1)]


def test_generator_sets():
    assert sorted(generator_set(ONE)) == ["L1", "W1"]
    gens = generator_set(PAIR)
    assert sorted(gens) == ["L1", "L2", "W1", "W2", "omega(-1,-1)", "omega(1,1)", "phi1"]
    assert gens["omega(1,1)"] == st_(":gamma1 gamma2:", PAIR)
    assert gens["omega(-1,-1)"] == st_(":beta1 beta2:", PAIR)
    assert sorted(generator_set(DiagonalAction([[1, S6]]))) == ["L1", "L2", "W1", "W2", "phi1"]
    with pytest.raises(ValueError):
        generator_set(DiagonalAction([[1, 1], [2, 2]]))


def test_lattice_contraction_examples():
    assert lattice_contraction((-2,), (3,)) == (1, 6)
    # (-1)^{k_j} with k_1 = d_1 = 2 keeps the sign positive
    assert lattice_contraction((2,), (-3,)) == (1, 6)
    # gamma^2 o_0 beta = -2 gamma and beta o_0 gamma^2 = 2 gamma
    assert lattice_contraction((2,), (-1,)) == (0, -2)
    assert lattice_contraction((-1,), (2,)) == (0, 2)
    assert lattice_contraction((1, 2), (0, 3)) == (-1, 1)


@pytest.mark.parametrize("w2, dim", [(0, 1), (1, 0), (2, 0), (3, 0), (4, 1), (5, 0), (6, 2)])
def test_graded_dimensions(w2, dim):
    assert len(graded_commutant_basis(ONE, Fraction(w2, 2), 0)) == dim


def same_span(us, vs):
    monos = sorted({m for u in us + vs for m in u})
    rows = lambda xs: [[x.coeff(m) for m in monos] for x in xs]  # noqa: E731
    r = len(rref(rows(us))[1])
    return r == len(rref(rows(vs))[1]) == len(rref(rows(us + vs))[1])


def test_graded_bases_span_known_fields():
    L, W = build_LS_WS(ONE.algebra, 1)
    assert same_span(graded_commutant_basis(ONE, 2, 0), [L])
    assert same_span(graded_commutant_basis(ONE, 3, 0), [derive(L), W])


@pytest.mark.parametrize("w2", range(7))
def test_solver_matches_sympy_rank(w2):
    w = Fraction(w2, 2)
    monos = enumerate_monomials(ONE.algebra, w, 0)
    rows = _constraint_rows(ONE, monos, w, ModeCalculus(ONE.algebra)) if monos else []
    M = sympy.Matrix([[sympy.Rational(c.rat.numerator, c.rat.denominator) for c in r] for r in rows]) \
        if rows else sympy.zeros(0, len(monos))
    kernel = len(monos) - M.rank() if monos else 0
    assert kernel == len(graded_commutant_basis(ONE, w, 0)) == _fock_theta_kernel_dim(w2)


def test_quantum_correct():
    L, _ = build_LS_WS(ONE.algebra, 1)
    assert quantum_correct(ONE, 2) == 2 * L
    u3 = quantum_correct(ONE, 3)
    assert is_invariant(u3, ONE)


def test_extract_unit_examples():
    alg = ONE.algebra
    assert extract_unit(st_(":beta1 beta1:", ONE)) == ((-2,), 2, Fraction(1, 2))
    assert extract_unit(State.vacuum(alg), ONE) == ((0,), 0, 1)
    u = st_(":gamma1 gamma2: + 5", PAIR)
    l, d, c = extract_unit(u, PAIR)
    assert (l, d, c) == ((1, 1), 2, 1)
    assert c * circle(build_omega(PAIR.algebra, (-1, -1)), u, d - 1) == State.vacuum(PAIR.algebra)
    with pytest.raises(ValueError):
        extract_unit(State(alg))
    with pytest.raises(ValueError):
        extract_unit(st_(":beta1 beta1:", ONE), ONE)


def test_conformal_b_prime():
    L, _ = build_LS_WS(ONE.algebra, 1)
    assert conformal_b_prime(ONE) == L
    assert bprime_central_charge(ONE) == -2
    assert bprime_central_charge(PAIR) == -3
    assert bprime_central_charge(PAIR, [1]) == 21
    for lam in ([0], [1]):
        assert verify_virasoro(conformal_b_prime(PAIR, lam), bprime_central_charge(PAIR, lam))
    checks = {name: bad for name, _, bad in bprime_generator_checks(PAIR, [0])}
    assert all(not bad for bad in checks.values())
    checks = {name: bad for name, _, bad in bprime_generator_checks(PAIR, [1])}
    assert checks["phi1"]  # the lambda * d(phi) term spoils primarity


_CLOSURE = ["phi1", "L1", "L2", "omega(1,1)", "omega(-1,-1)"]


@given(st.sampled_from(_CLOSURE), st.sampled_from(_CLOSURE), st.integers(-1, 2))
def test_invariants_closed_under_products(a, b, n):
    gens = generator_set(PAIR)
    calc = ModeCalculus(PAIR.algebra)
    assert is_invariant(calc.product(gens[a], gens[b], n), PAIR, calc)


@given(st.sampled_from(_CLOSURE))
def test_wick_with_theta_is_not_invariant(a):
    gens = generator_set(PAIR)
    th = build_theta(PAIR, 1)
    assert not is_invariant(wick(th, gens[a]), PAIR)
