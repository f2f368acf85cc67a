"""Level-zero products are transvectants.

A polynomial in x, x' becomes a state by x -> beta, x' -> gamma. Then the
k-th circle product, with derivative terms dropped, matches the (k+1)-st
transvectant.

Run: python demos/transvectants.py
"""

import random

from freevoa import (
    FreeAlgebra,
    fmap,
    parse_poly,
    parse_weyl,
    star_extract_unit,
    star_k,
    star_k_weyl,
    transvectant,
    weyl_omega,
)
from freevoa.transvect import euler_reduce

alg = FreeAlgebra(1)
p = parse_poly("xp1 x1^2 + 2*xp1", 1)
q = parse_poly("xp1^2 x1 - x1", 1)
for k in range(-1, 3):
    lhs = fmap(transvectant(p, q, k + 1), alg)
    rhs = star_k(fmap(p, alg), fmap(q, alg), k)
    print(f"k={k:2d}: [p,q]_{k + 1} = {transvectant(p, q, k + 1)}   matches *_{k}: {lhs == rhs}")

# Random spot checks with two variables.
rnd = random.Random(3)
names = parse_poly("x1", 2).names
agree = 0
for _ in range(20):
    f = parse_poly(" + ".join(f"{rnd.randint(-3, 3)}*{rnd.choice(names)}^{rnd.randint(1, 2)}" for _ in range(3)), 2)
    g = parse_poly(" + ".join(f"{rnd.randint(-3, 3)}*{rnd.choice(names)} {rnd.choice(names)}" for _ in range(2)), 2)
    k = rnd.randint(-1, 2)
    a2 = FreeAlgebra(2)
    agree += fmap(transvectant(f, g, k + 1), a2) == star_k(fmap(f, a2), fmap(g, a2), k)
print(f"random pairs in agreement: {agree}/20")

# Euler operators: e *_1 e = -1 and e *_1 omega_l = 0.
e = parse_weyl("e1", 1)
print("e *_1 e =", star_k_weyl(e, e, 1), "  e *_1 x'^2 =", star_k_weyl(e, weyl_omega((2,)), 1))

# e *_1 is second order, so e *_1 (e x'^2) = -3 x'^2.
w = parse_weyl("x1^3 d1", 1)  # x'^3 d = x'^2 e
print("euler_reduce(x'^3 d) =", euler_reduce(w))
print("unit of d^2:", star_extract_unit(None, weyl_omega((-2,))))
