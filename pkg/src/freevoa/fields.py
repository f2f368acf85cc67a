"""Standard fields of the betagamma system: conformal vectors and charges."""

from __future__ import annotations

from fractions import Fraction

from .algebra import FreeAlgebra
from .scalar import as_scalar
from .state import State, normalize

__all__ = ["virasoro_alpha", "central_charge_alpha", "bg_charge_current", "bc_charge_current"]


def _alpha_vector(alg: FreeAlgebra, alpha):
    if alpha is None:
        return [Fraction(1, 2)] * alg.bg_pairs
    alpha = [as_scalar(a) for a in alpha]
    if len(alpha) != alg.bg_pairs:
        raise ValueError(f"alpha needs {alg.bg_pairs} entries, got {len(alpha)}")
    return alpha


def virasoro_alpha(alg: FreeAlgebra, alpha=None) -> State:
    """``L^alpha = sum_i (alpha_i - 1) :d(beta_i) gamma_i: + alpha_i :beta_i d(gamma_i):``."""
    raw = []
    for i, a in enumerate(_alpha_vector(alg, alpha)):
        b, g = i, alg.bg_pairs + i
        raw.append((((b, 1), (g, 0)), a - 1))
        raw.append((((b, 0), (g, 1)), a))
    return normalize(alg, raw)


def central_charge_alpha(alpha):
    """``sum_i (12 alpha_i^2 - 12 alpha_i + 2)``."""
    return sum((12 * a * a - 12 * a + 2 for a in map(as_scalar, alpha)), as_scalar(0))


def bg_charge_current(alg: FreeAlgebra) -> State:
    """``v = sum_i :beta_i gamma_i:``; its zero mode measures betagamma charge."""
    n = alg.bg_pairs
    return normalize(alg, [(((i, 0), (n + i, 0)), 1) for i in range(n)])


def bc_charge_current(alg: FreeAlgebra) -> State:
    """``q = -sum_i :b_i c_i:``; its zero mode measures bc charge."""
    off, p = 2 * alg.bg_pairs, alg.bc_pairs
    return normalize(alg, [(((off + i, 0), (off + p + i, 0)), -1) for i in range(p)])
