"""Level-zero products and transvectants on Sym(V + V*).

``sigma`` sends ``x'^K d^L`` to ``x'^K x^L``; ``fmap`` sends ``x'_i`` to
``gamma_i`` and ``x_i`` to ``beta_i``. The products
``u *_k v = p(u o_k v)`` (``p`` drops every monomial containing a
derivative) agree with the transvectants ``[ , ]_{k+1}`` where

    [p, q]_k = (1/k!) m(Gamma^k (p ⊗ q)),
    Gamma = sum_i d/dx_i ⊗ d/dx'_i - d/dx'_i ⊗ d/dx_i.
"""

from __future__ import annotations

import math

from .algebra import FreeAlgebra
from .ope import ModeCalculus
from .poly import Poly, sym_names
from .scalar import Scalar
from .state import State, normalize
from .weyl import WeylElement, classical_invariant, euler, weyl_omega

__all__ = [
    "sigma",
    "sigma_inv",
    "fmap",
    "fmap_inv",
    "level_zero_projection",
    "is_level_zero",
    "star_k",
    "transvectant",
    "star_k_weyl",
    "euler_reduce",
    "star_extract_unit",
]

_ZERO = Scalar(0)


def sigma(w: WeylElement) -> Poly:
    """``x'^K d^L -> x^L x'^K`` termwise."""
    return Poly(sym_names(w.n), {L + K: c for (K, L), c in w.items()})


def sigma_inv(p: Poly) -> WeylElement:
    n = p.nvars // 2
    if p.names != sym_names(n):
        raise ValueError("expected a polynomial in x1..xn, xp1..xpn")
    return WeylElement(n, {(e[n:], e[:n]): c for e, c in p.items()})


def fmap(p: Poly, alg: FreeAlgebra | None = None) -> State:
    """``x_i -> beta_i``, ``x'_i -> gamma_i``; the result has no derivatives."""
    n = p.nvars // 2
    alg = alg or FreeAlgebra(n)
    if alg.bg_pairs != n:
        raise ValueError(f"target algebra needs {n} betagamma pairs")
    raw = []
    for e, c in p.items():
        factors = []
        for i in range(n):
            factors += [(i, 0)] * e[i] + [(n + i, 0)] * e[n + i]
        raw.append((factors, c))
    return normalize(alg, raw)


def fmap_inv(u: State) -> Poly:
    """Inverse of :func:`fmap` on level-zero states of a pure betagamma algebra."""
    alg = u.algebra
    n = alg.bg_pairs
    if not alg.is_pure_bg():
        raise ValueError("expected a pure betagamma algebra")
    out = {}
    for mono, c in u.items():
        e = [0] * (2 * n)
        for g, k in mono:
            if k:
                raise ValueError("state is not of level zero")
            e[g] += 1  # beta_i -> x_i (slot i), gamma_i -> x'_i (slot n + i)
        out[tuple(e)] = c
    return Poly(sym_names(n), out)


def is_level_zero(u: State) -> bool:
    return all(k == 0 for mono in u for _, k in mono)


def level_zero_projection(u: State) -> State:
    """Drop every monomial that contains a derivative."""
    return State(u.algebra, {m: c for m, c in u.items() if all(k == 0 for _, k in m)})


def star_k(u: State, v: State, k: int, calc: ModeCalculus | None = None) -> State:
    """``p(u o_k v)`` for level-zero ``u, v`` and ``k >= -1``."""
    if k < -1:
        raise ValueError("k must be at least -1")
    if not is_level_zero(u) or not is_level_zero(v):
        raise ValueError("star products take level-zero states")
    calc = calc or ModeCalculus(u.algebra)
    return level_zero_projection(calc.product(u, v, k))


def _gamma(tensor: dict, n: int) -> dict:
    out: dict = {}

    def add(e1, e2, c):
        key = (e1, e2)
        v = out.get(key, _ZERO) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)

    for (e1, e2), c in tensor.items():
        for i in range(n):
            xi, xpi = i, n + i
            # d/dx_i ⊗ d/dx'_i
            if e1[xi] and e2[xpi]:
                f1 = e1[:xi] + (e1[xi] - 1,) + e1[xi + 1:]
                f2 = e2[:xpi] + (e2[xpi] - 1,) + e2[xpi + 1:]
                add(f1, f2, c * (e1[xi] * e2[xpi]))
            # - d/dx'_i ⊗ d/dx_i
            if e1[xpi] and e2[xi]:
                f1 = e1[:xpi] + (e1[xpi] - 1,) + e1[xpi + 1:]
                f2 = e2[:xi] + (e2[xi] - 1,) + e2[xi + 1:]
                add(f1, f2, -c * (e1[xpi] * e2[xi]))
    return out


def transvectant(p: Poly, q: Poly, k: int) -> Poly:
    """``[p, q]_k = (1/k!) m(Gamma^k (p ⊗ q))``; ``k = 0`` is the product."""
    if k < 0:
        raise ValueError("transvectant order must be non-negative")
    if p.names != q.names:
        raise ValueError("polynomials over different variables")
    n = p.nvars // 2
    tensor = {(e1, e2): c1 * c2 for e1, c1 in p.items() for e2, c2 in q.items()}
    for _ in range(k):
        tensor = _gamma(tensor, n)
    out: dict = {}
    for (e1, e2), c in tensor.items():
        e = tuple(a + b for a, b in zip(e1, e2))
        out[e] = out.get(e, _ZERO) + c
    return Poly(p.names, out) / math.factorial(k)


def star_k_weyl(a: WeylElement, b: WeylElement, k: int) -> WeylElement:
    """``sigma^{-1}([sigma a, sigma b]_{k+1})`` for ``k >= -1``."""
    if k < -1:
        raise ValueError("k must be at least -1")
    return sigma_inv(transvectant(sigma(a), sigma(b), k + 1))


def _lattice_part(e, n):
    return tuple(e[n + i] - e[i] for i in range(n))


def euler_reduce(w: WeylElement) -> WeylElement:
    """Apply ``e_i *_1`` in each coordinate as often as the largest Euler
    power there; the result is a nonzero combination of the ``omega_l``."""
    n = w.n
    r = w
    for i in range(n):
        p = sigma(r)
        if not p:
            break
        t = max(min(e[i], e[n + i]) for e, _ in p.items())
        ei = euler(n, i)
        for _ in range(t):
            r = star_k_weyl(ei, r, 1)
    return r


def star_extract_unit(act, w: WeylElement):
    """Scalar ``c`` with ``c * (omega_{-l} *_{d-1} r) = 1``.

    ``r = euler_reduce(w)``; on symbols ``e_i *_1`` acts as
    ``-d/dx_i d/dx'_i``, so only lattice monomials ``omega_l`` survive. ``l`` is then chosen as in
    :func:`freevoa.commutant.extract_unit`. Returns ``(l, d, c)``.
    With ``act=None`` no invariance is required, only the shape.
    """
    if not w:
        raise ValueError("cannot extract a unit from zero")
    if act is not None and not classical_invariant(w, getattr(act, "matrix", act)):
        raise ValueError("element is not invariant, so it is not in the span of E * omega_l")
    n = w.n
    r = euler_reduce(w)
    if not r:
        raise RuntimeError("Euler reductions annihilated the element")
    comps = {}
    for e, c in sigma(r).items():
        if any(min(e[i], e[n + i]) for i in range(n)):
            raise RuntimeError("reduction left a non-lattice monomial")
        comps[_lattice_part(e, n)] = c
    d = max(sum(map(abs, l)) for l in comps)
    l = max(lv for lv in comps if sum(map(abs, lv)) == d)
    res = star_k_weyl(weyl_omega(tuple(-x for x in l)), r, d - 1)
    s = res.to_euler_poly()
    if s is None or s.degree() != 0:
        raise RuntimeError("final contraction is not a nonzero scalar")
    c = 1 / s.coeff((0,) * n)
    return l, d, c
