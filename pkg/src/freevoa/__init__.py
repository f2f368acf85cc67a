"""Exact calculator for free vertex superalgebras.

βγ, bc and Heisenberg systems over Q(sqrt6): circle products, invariants
of abelian current actions, the W3 algebra at c = -2, the Zhu map to the
Weyl algebra, and transvectants.
"""

from .algebra import AlgebraMismatch, FreeAlgebra, load_algebra
from .commutant import (
    DiagonalAction,
    bprime_central_charge,
    bprime_generator_checks,
    build_omega,
    build_phi,
    build_theta,
    conformal_b_prime,
    enumerate_monomials,
    extract_unit,
    generator_set,
    graded_commutant_basis,
    invariance_defects,
    is_invariant,
    lattice_contraction,
    phi_basis,
    quantum_correct,
)
from .expr import ParseError, format_state, parse, parse_poly, parse_state, parse_weyl, to_text
from .fields import central_charge_alpha, virasoro_alpha
from .linalg import ActionMatrix, field_kernel_basis, integer_kernel_basis, nullspace, rref
from .ope import (
    ModeCalculus,
    circle,
    commutes,
    ope_singular,
    primary_defects,
    verify_virasoro,
    virasoro_defects,
    wick,
    wick_power,
)
from .poly import Poly
from .scalar import SQRT6, Scalar, as_scalar, parse_scalar
from .state import State, derive, derive_n, grading, normalize
from .transvect import (
    fmap,
    level_zero_projection,
    sigma,
    sigma_inv,
    star_extract_unit,
    star_k,
    star_k_weyl,
    transvectant,
)
from .w3 import (
    build_bc_LW,
    build_heis_LW,
    build_LS_WS,
    highest_weight_data,
    verify_w3_ope,
    zhu_ideal_check,
)
from .weyl import WeylElement, build_psi_classical, build_tau, classical_invariant, euler, weyl_omega
from .zhu import ZhuMap, cokernel_probe, zhu_image

__version__ = "0.1.0"
