"""From vertex operators to differential operators.

The Zhu map sends the betagamma system to the Weyl algebra, with gamma to
x' and beta to d/dx'. The W3 fields land in the polynomials in the Euler
operator e = x' d.

Run: python demos/zhu_and_weyl.py
"""

from fractions import Fraction

from freevoa import (
    DiagonalAction,
    FreeAlgebra,
    build_LS_WS,
    cokernel_probe,
    parse_state,
    zhu_ideal_check,
    zhu_image,
)

alg = FreeAlgebra(1)
L, W = build_LS_WS(alg, 1)
gb = parse_state(":gamma1 beta1:", alg)

for alpha in (0, Fraction(1, 2), 1):
    print(f"alpha = {alpha}")
    print("  pi(:gamma beta:) =", zhu_image(gb, [alpha]))
    print("  pi(L_S) =", zhu_image(L, [alpha]).to_euler_poly())
    print("  pi(W_S) =", zhu_image(W, [alpha]).to_euler_poly())

# The images satisfy the defining relation of the Zhu algebra of W3 at c = -2.
l = zhu_image(L, [0]).to_euler_poly()
w = zhu_image(W, [0]).to_euler_poly()
print("w^2 = (2/27) l^2 (8l + 1):", zhu_ideal_check(l, w))

# The invariant Euler polynomials E_{<=D} are not all reached: e itself is missing.
for D in (3, 6):
    r = cokernel_probe(DiagonalAction([[1]]), [Fraction(1, 2)], D)
    reps = ", ".join(map(str, r["representative_polys"]))
    print(f"D={D}: codim {r['codim']} of {r['dim_E']}, missing {reps}, theta fills it: {r['theta_covers']}")
