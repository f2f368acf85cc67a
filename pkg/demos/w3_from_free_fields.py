"""W3 at c = -2 from three free-field systems.

Run: python demos/w3_from_free_fields.py
"""

from freevoa import (
    FreeAlgebra,
    ModeCalculus,
    Scalar,
    build_bc_LW,
    build_heis_LW,
    build_LS_WS,
    format_state,
    highest_weight_data,
    ope_singular,
    verify_w3_ope,
)

# One betagamma pair. L_S and W_S are built from beta1, gamma1 and derivatives.
bg = FreeAlgebra(1)
L, W = build_LS_WS(bg, 1)
print("L_S =", format_state(L))
print("W_S =", format_state(W))

# The singular part of L(z)L(w): a fourth-order pole -1, then 2L and dL.
for n, u in ope_singular(L, L):
    print(f"  L o_{n} L = {format_state(u)}")

# W(z)W(w) has poles up to order six. The top coefficient is the scalar -2/3.
calc = ModeCalculus(bg)
for n in (5, 3):
    print(f"  W o_{n} W = {format_state(calc.product(W, W, n))}")

# The same OPEs hold for a Heisenberg field of level 1 and for one bc pair.
realizations = {
    "betagamma": (L, W),
    "Heisenberg": build_heis_LW(FreeAlgebra(0, 0, (Scalar(1),))),
    "bc": build_bc_LW(FreeAlgebra(0, 1)),
}
for name, (Lx, Wx) in realizations.items():
    print(f"{name:>10}: W3 OPE verified = {verify_w3_ope(Lx, Wx)}")

# Highest-weight vectors gamma^d and beta^{-d}. Every (t, w) lies in Q(sqrt6).
print(" d   t   w")
for d in range(-3, 4):
    t, w, ok = highest_weight_data(d)
    print(f"{d:2d}  {t}  {w}   {'ok' if ok else 'MISMATCH'}")
