"""The W3 algebra at central charge -2 and its three free-field realizations.

Constants are kept in Q(sqrt6): sqrt(2/27) = sqrt6/9, sqrt(3/2) = sqrt6/2,
sqrt(1/6) = sqrt6/6, sqrt(8/3) = 2*sqrt6/3.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import FreeAlgebra
from .ope import ModeCalculus, wick
from .poly import Poly
from .scalar import SQRT6, Scalar, as_scalar
from .state import State, derive, normalize

__all__ = [
    "build_LS_WS",
    "build_heis_LW",
    "build_bc_LW",
    "w3_defects",
    "verify_w3_ope",
    "highest_weight_vector",
    "highest_weight_formula",
    "highest_weight_data",
    "zhu_ideal_polynomial",
    "zhu_ideal_check",
]

_H = Fraction(1, 2)


def build_LS_WS(alg: FreeAlgebra, j: int = 1):
    """``(L_S, W_S)`` on the ``j``-th betagamma pair (1-based)."""
    if not 1 <= j <= alg.bg_pairs:
        raise IndexError(f"betagamma pair {j} does not exist")
    b, g = alg.gen_index("beta", j), alg.gen_index("gamma", j)
    B0, B1, B2 = (b, 0), (b, 1), (b, 2)
    G0, G1, G2 = (g, 0), (g, 1), (g, 2)
    L = normalize(alg, [
        ((B0, B0, G0, G0), _H),
        ((B1, G0), -1),
        ((B0, G1), 1),
    ])
    s = SQRT6
    W = normalize(alg, [
        ((B0, B0, B0, G0, G0, G0), s / 9),
        ((B0, B1, G0, G0), -s / 2),
        ((B0, B0, G0, G1), s / 2),
        ((B2, G0), s / 6),
        ((B1, G1), -2 * s / 3),
        ((B0, G2), s / 6),
    ])
    return L, W


def build_heis_LW(alg: FreeAlgebra, j: int = 1, dj_coeff=_H):
    """``L_H = 1/2 :jj: + 1/2 dj`` and
    ``W_H = sqrt6/9 :jjj: + sqrt6/6 :j dj: + sqrt6/36 d^2 j`` for a level-1 field.

    With ``j o_1 j = 1`` the field ``1/2 :jj: + a dj`` has central charge
    ``1 - 12 a^2`` and gives the vector of ``j``-charge ``alpha`` the weight
    ``alpha^2/2 - a alpha``; both c = -2 and ``alpha (alpha - 1)/2`` need
    ``a = 1/2``, the default of ``dj_coeff``.
    """
    h = len(alg.heis_levels)
    if not 1 <= j <= h:
        raise IndexError(f"Heisenberg field {j} does not exist")
    if alg.heis_levels[j - 1] != 1:
        raise ValueError("the W3 realization needs a Heisenberg field of level 1")
    x = alg.gen_index("j", j)
    J0, J1, J2 = (x, 0), (x, 1), (x, 2)
    L = normalize(alg, [((J0, J0), _H), ((J1,), dj_coeff)])
    W = normalize(alg, [((J0, J0, J0), SQRT6 / 9), ((J0, J1), SQRT6 / 6), ((J2,), SQRT6 / 36)])
    return L, W


def build_bc_LW(alg: FreeAlgebra, j: int = 1):
    """``L_E = :db c:`` and ``W_E = (1/sqrt6)(:d^2b c: - :db dc:)``."""
    if not 1 <= j <= alg.bc_pairs:
        raise IndexError(f"bc pair {j} does not exist")
    b, c = alg.gen_index("b", j), alg.gen_index("c", j)
    L = normalize(alg, [(((b, 1), (c, 0)), 1)])
    W = normalize(alg, [(((b, 2), (c, 0)), SQRT6 / 6), (((b, 1), (c, 1)), -SQRT6 / 6)])
    return L, W


def w3_defects(L: State, W: State, calc: ModeCalculus | None = None) -> list:
    """Failed OPE coefficients of the W3 algebra at c = -2 (empty if none)."""
    alg = L.algebra
    calc = calc or ModeCalculus(alg)
    zero = State(alg)
    one = State.vacuum(alg)
    dL = derive(L)
    LL = wick(L, L, calc)
    expected = [
        ("L", "L", {3: -one, 2: zero, 1: 2 * L, 0: dL}, 4),
        ("L", "W", {4: zero, 3: zero, 2: zero, 1: 3 * W, 0: derive(W)}, 5),
        ("W", "W", {
            5: Scalar(Fraction(-2, 3)) * one,
            4: zero,
            3: 2 * L,
            2: dL,
            1: Fraction(8, 3) * LL - _H * derive(dL),
            0: Fraction(4, 3) * derive(LL) - Fraction(1, 3) * derive(derive(dL)),
        }, 6),
    ]
    fields = {"L": L, "W": W}
    bad = []
    for a, b, table, top in expected:
        u, v = fields[a], fields[b]
        # also require vanishing above the top pole
        for n in range(top + 2, -1, -1):
            got = calc.product(u, v, n)
            want = table.get(n, zero)
            if got != want:
                bad.append(f"{a} o_{n} {b} = {got}, expected {want}")
    return bad


def verify_w3_ope(L: State, W: State, calc: ModeCalculus | None = None) -> bool:
    """Check every OPE coefficient of ``L L``, ``L W`` and ``W W`` at c = -2."""
    return not w3_defects(L, W, calc)


def highest_weight_vector(alg: FreeAlgebra, d: int) -> State:
    """``beta^{-d}`` for ``d < 0``, the vacuum for ``d = 0``, ``gamma^d`` for ``d > 0``."""
    from .commutant import build_omega

    return build_omega(alg, (d,))


def highest_weight_formula(d: int):
    """``(t, w)`` with ``alpha = d`` (``d <= 0``) or ``d + 1`` (``d > 0``)."""
    a = Fraction(d if d <= 0 else d + 1)
    t = a * (a - 1) / 2
    # 1/(3 sqrt6) = sqrt6/18
    w = SQRT6 * (a * (a - 1) * (2 * a - 1) / 18)
    return as_scalar(t), w


def highest_weight_data(d: int, calc: ModeCalculus | None = None):
    """``(t, w, verified)`` for the highest weight vector ``v^d`` of the
    rank-one betagamma system."""
    from .commutant import DiagonalAction, build_theta

    act = DiagonalAction([[1]])
    alg = act.algebra
    calc = calc or ModeCalculus(alg)
    L, W = build_LS_WS(alg, 1)
    th = build_theta(act, 1)
    v = highest_weight_vector(alg, d)
    t, w = highest_weight_formula(d)
    ok = calc.product(L, v, 1) == t * v and calc.product(W, v, 2) == w * v
    ok = ok and all(not calc.product(L, v, n) for n in range(2, 2 + abs(d) + 2))
    ok = ok and all(not calc.product(W, v, n) for n in range(3, 3 + abs(d) + 2))
    ok = ok and all(not calc.product(th, v, n) for n in range(1, 2 + abs(d)))
    ok = ok and calc.product(th, v, 0) == -d * v
    return t, w, ok


def zhu_ideal_polynomial(l: Poly, w: Poly) -> Poly:
    """``w^2 - (2/27) l^2 (8 l + 1)``."""
    return w * w - Fraction(2, 27) * l * l * (8 * l + 1)


def zhu_ideal_check(l: Poly, w: Poly) -> bool:
    """True iff ``(l, w)`` satisfies the W3 Zhu-algebra relation exactly."""
    return zhu_ideal_polynomial(l, w).is_zero()
