"""Invariants of a one-dimensional torus acting on two betagamma pairs.

The action has weights rho = (1, -1). Its invariants are generated by a
current phi, two copies of (L, W), and two lattice fields.

Run: python demos/invariants_of_a_torus.py
"""

from freevoa import (
    DiagonalAction,
    ModeCalculus,
    build_omega,
    build_theta,
    circle,
    extract_unit,
    format_state,
    generator_set,
    integer_kernel_basis,
    invariance_defects,
    is_invariant,
    lattice_contraction,
    parse_state,
)

act = DiagonalAction([[1, -1]])
alg = act.algebra
theta = build_theta(act, 1)
print("theta =", format_state(theta))
print("theta o_1 theta =", format_state(circle(theta, theta, 1)))  # -<a, a>

# The lattice A-perp ∩ Z^2 is spanned by (1, 1).
print("lattice basis:", integer_kernel_basis(act.matrix))

gens = generator_set(act)
for name, u in gens.items():
    print(f"{name:>13}: invariant={is_invariant(u, act)}  {format_state(u)}")

# A non-example: omega_(1,0) = gamma1 has charge 1 and fails at the first pole.
print("defects of gamma1:", invariance_defects(build_omega(alg, (1, 0)), act))

# Lattice fields multiply by a closed formula. Compare it with the engine.
calc = ModeCalculus(alg)
for l, lp in [((-2, 0), (3, 0)), ((1, 1), (-1, -1)), ((2, 2), (-1, -1))]:
    d, c = lattice_contraction(l, lp)
    engine = calc.product(build_omega(alg, l), build_omega(alg, lp), d)
    print(f"omega{l} o_{d} omega{lp}: formula {c} * omega{tuple(a + b for a, b in zip(l, lp))},"
          f" engine {format_state(engine)}")

# Simplicity: any nonzero sum of lattice fields contracts to the vacuum.
u = parse_state(":gamma1 gamma2: - 3*:beta1 beta2: + 5", alg, act)
l, d, c = extract_unit(u, act)
back = c * circle(build_omega(alg, tuple(-x for x in l)), u, d - 1)
print(f"extract_unit: l={l}, d={d}, c={c}; c * (omega_-l o_{d - 1} u) = {format_state(back)}")
