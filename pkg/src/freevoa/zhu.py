"""The Zhu map from a betagamma system to the Weyl algebra.

The image of a monomial is computed by peeling its leading factor
``g = d^k a``:

    [:g v:] = [g] * [v] - sum_{j >= 1} C(m, j) [g o_{j-1} v],   m = wt(g),

with ``[gamma_i] = x'_i``, ``[beta_i] = d/dx'_i`` and
``[d^k a] = (-1)^k m_a (m_a + 1) ... (m_a + k - 1) [a]``. The sign in the
last rule is the one that reproduces ``[:gamma beta:] = x' d + 1 - alpha``
and ``[L_S] = (e^2 + e)/2``; it amounts to ``[d a] = -wt(a) [a]``.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import FreeAlgebra
from .commutant import DiagonalAction, build_theta, generator_set
from .linalg import rref
from .ope import ModeCalculus
from .poly import Poly, euler_names
from .scalar import Scalar, as_scalar, binom
from .state import State, mono_star_weight
from .weyl import WeylElement

__all__ = ["ZhuMap", "zhu_image", "cokernel_probe", "DERIVATIVE_SIGN"]

# [d a] = DERIVATIVE_SIGN * wt(a) * [a]
DERIVATIVE_SIGN = -1


class ZhuMap:
    """Zhu map for a pure betagamma algebra and a weight vector ``alpha``."""

    def __init__(self, algebra: FreeAlgebra, alpha=None, calc: ModeCalculus | None = None):
        if not algebra.is_pure_bg():
            raise ValueError("the Zhu map is implemented for pure betagamma algebras only")
        n = algebra.bg_pairs
        if alpha is None:
            alpha = [Fraction(1, 2)] * n
        alpha = [as_scalar(a) for a in alpha]
        if len(alpha) != n:
            raise ValueError(f"alpha needs {n} entries, got {len(alpha)}")
        self.alg = algebra
        self.alpha = alpha
        self.calc = calc or ModeCalculus(algebra)
        self._memo = {}

    def gen_weight(self, g: int) -> Scalar:
        n = self.alg.bg_pairs
        return self.alpha[g] if g < n else 1 - self.alpha[g - n]

    def gen_image(self, g: int) -> WeylElement:
        n = self.alg.bg_pairs
        return WeylElement.d(n, g) if g < n else WeylElement.x(n, g - n)

    def factor_image(self, g: int, k: int) -> WeylElement:
        m = self.gen_weight(g)
        c = Scalar(1)
        for i in range(k):
            c = c * (DERIVATIVE_SIGN * (m + i))
        return c * self.gen_image(g)

    def mono_image(self, mono) -> WeylElement:
        hit = self._memo.get(mono)
        if hit is not None:
            return hit
        n = self.alg.bg_pairs
        if not mono:
            out = WeylElement.const(n)
        else:
            (g, k), rest = mono[0], mono[1:]
            lead = State(self.alg, {((g, k),): 1})
            tail = State(self.alg, {rest: 1})
            out = self.factor_image(g, k) * self.mono_image(rest)
            m = self.gen_weight(g) + k
            bound = mono_star_weight(self.alg, mono[:1]) + mono_star_weight(self.alg, rest)
            j = 1
            while j - 1 < bound:
                c = binom(m, j)
                if c:
                    prod = self.calc.product(lead, tail, j - 1)
                    if prod:
                        out = out - c * self(prod)
                j += 1
        self._memo[mono] = out
        return out

    def __call__(self, u: State) -> WeylElement:
        if u.algebra != self.alg:
            raise ValueError("state belongs to a different algebra")
        out = WeylElement(self.alg.bg_pairs)
        for mono, c in u.items():
            out = out + c * self.mono_image(mono)
        return out


def zhu_image(u: State, alpha=None, calc: ModeCalculus | None = None) -> WeylElement:
    """Image of ``u`` in the Weyl algebra for the conformal weights ``alpha``."""
    return ZhuMap(u.algebra, alpha, calc)(u)


def _euler(u: State, zmap: ZhuMap) -> Poly:
    p = zmap(u).to_euler_poly()
    if p is None:
        raise ValueError("Zhu image is not a polynomial in the Euler operators")
    return p


def _span_products(gens, D: int, names):
    """All products of generator polynomials with degree sum ``<= D`` (incl. 1)."""
    out = [Poly.const(names)]
    frontier = [(Poly.const(names), 0, 0)]
    while frontier:
        nxt = []
        for p, deg, start in frontier:
            for i in range(start, len(gens)):
                g = gens[i]
                nd = deg + g.degree()
                if nd <= D and g.degree() > 0:
                    q = p * g
                    out.append(q)
                    nxt.append((q, nd, i))
        frontier = nxt
    return out


def _monomials_upto(nvars: int, D: int):
    """Exponent tuples of degree ``<= D``, highest degree first."""
    out = []

    def rec(i, left, acc):
        if i == nvars:
            out.append(tuple(acc))
            return
        for k in range(left, -1, -1):
            acc.append(k)
            rec(i + 1, left - k, acc)
            acc.pop()

    rec(0, D, [])
    return sorted(out, key=lambda e: (-sum(e), tuple(-x for x in e)))


def _span_within(polys, D: int, names, slack: int):
    """Echelon basis of ``span(polys) ∩ E_{<=D}``; columns run high degree first."""
    nv = len(names)
    cols = _monomials_upto(nv, D + slack)
    index = {e: i for i, e in enumerate(cols)}
    rows = []
    for p in polys:
        row = [Scalar(0)] * len(cols)
        for e, c in p.items():
            row[index[e]] = c
        rows.append(row)
    red, piv = rref(rows, len(cols)) if rows else ([], [])
    # rows whose pivot is of degree <= D lie entirely in E_{<=D}
    keep = [r for r, pc in zip(red, piv) if sum(cols[pc]) <= D]
    inner = _monomials_upto(nv, D)
    return keep, cols, inner


def cokernel_probe(act: DiagonalAction, alpha=None, D: int = 3, slack: int = 3,
                   calc: ModeCalculus | None = None) -> dict:
    """Compare ``E_{<=D}`` with the image of the invariants under the Zhu map.

    Generator images that lie in ``E`` (those of ``phi^i, L^j, W^j``) are
    multiplied in all ways up to degree ``D + slack``; the span is cut down
    to ``E_{<=D}``. Returns the codimension, echelon representatives of the
    quotient, and whether adjoining the images of the currents ``theta^i``
    as module generators fills ``E_{<=D}``.
    """
    if D < 1:
        raise ValueError("degree bound must be at least 1")
    alg = act.algebra
    calc = calc or ModeCalculus(alg)
    zmap = ZhuMap(alg, alpha, calc)
    names = euler_names(act.n)
    gens = []
    for name, u in generator_set(act).items():
        if name.startswith("omega"):
            continue
        gens.append(_euler(u, zmap))
    prods = _span_products(gens, D + slack, names)
    keep, cols, inner = _span_within(prods, D, names, slack)
    pivots = set()
    for r in keep:
        pc = next(i for i, x in enumerate(r) if x)
        pivots.add(cols[pc])
    reps = [e for e in inner if e not in pivots]
    codim = len(inner) - len(keep)
    thetas = [_euler(build_theta(act, i), zmap) for i in range(1, act.m + 1)]
    aug = list(prods)
    for t in thetas:
        aug += [t * p for p in prods if p.degree() + t.degree() <= D + slack]
    keep2, _, _ = _span_within(aug, D, names, slack)
    return {
        "codim": codim,
        "representatives": [WeylElement.from_euler_poly(Poly.monomial(names, e)) for e in reversed(reps)],
        "representative_polys": [Poly.monomial(names, e) for e in reversed(reps)],
        "theta_images": thetas,
        "theta_covers": len(keep2) == len(inner),
        "dim_E": len(inner),
    }
