"""The Weyl algebra D(V) on coordinates ``x'_1..x'_n`` in normal form.

Elements are sums of ``x'^K d^L`` with every ``x'`` to the left of every
``d = d/dx'``. Printing uses ``x1`` for ``x'_1`` and ``d1`` for ``d/dx'_1``.
"""

from __future__ import annotations

import math

from .linalg import ActionMatrix, field_kernel_basis, integer_kernel_basis
from .poly import Poly, euler_names, format_terms
from .scalar import Scalar, as_scalar

__all__ = [
    "WeylElement",
    "weyl_product",
    "commutator",
    "build_tau",
    "classical_invariant",
    "weyl_omega",
    "build_psi_classical",
    "euler",
]

_ZERO = Scalar(0)


class WeylElement:
    """Immutable map ``(K, L) -> Scalar`` for the normal-ordered ``x'^K d^L``."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms=None):
        self.n = int(n)
        clean = {}
        for (K, L), c in (terms or {}).items():
            K, L = tuple(map(int, K)), tuple(map(int, L))
            if len(K) != n or len(L) != n or min(K + L, default=0) < 0:
                raise ValueError(f"bad multi-index {(K, L)} for n = {n}")
            c = as_scalar(c)
            if c:
                v = clean.get((K, L), _ZERO) + c
                if v:
                    clean[K, L] = v
                else:
                    clean.pop((K, L), None)
        self._terms = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, n: int, c=1) -> "WeylElement":
        z = (0,) * n
        return cls(n, {(z, z): c})

    @classmethod
    def x(cls, n: int, i: int, power: int = 1) -> "WeylElement":
        K = [0] * n
        K[i] = power
        return cls(n, {(tuple(K), (0,) * n): 1})

    @classmethod
    def d(cls, n: int, i: int, power: int = 1) -> "WeylElement":
        L = [0] * n
        L[i] = power
        return cls(n, {((0,) * n, tuple(L)): 1})

    # -- access -----------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, K, L) -> Scalar:
        return self._terms.get((tuple(K), tuple(L)), _ZERO)

    def degree(self) -> int:
        """Bernstein degree ``max |K| + |L|``; ``-1`` for zero."""
        return max((sum(K) + sum(L) for K, L in self._terms), default=-1)

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    # -- arithmetic -------------------------------------------------------
    def _lift(self, other) -> "WeylElement":
        if isinstance(other, WeylElement):
            if other.n != self.n:
                raise ValueError("Weyl elements over different n")
            return other
        return WeylElement.const(self.n, as_scalar(other))

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self._terms)
        for k, c in o._terms.items():
            out[k] = out.get(k, _ZERO) + c
        return WeylElement(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return weyl_product(self, other)
        s = as_scalar(other)
        return WeylElement(self.n, {k: c * s for k, c in self._terms.items()})

    def __rmul__(self, other):
        s = as_scalar(other)
        return WeylElement(self.n, {k: s * c for k, c in self._terms.items()})

    def __truediv__(self, scalar):
        return self * (1 / as_scalar(scalar))

    def __pow__(self, k: int):
        out = WeylElement.const(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, WeylElement):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Scalar)) or hasattr(other, "denominator"):
            return self == WeylElement.const(self.n, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    # -- Euler operators --------------------------------------------------
    def to_euler_poly(self):
        """Rewrite as a polynomial in ``e_j = x'_j d_j``, or ``None`` if not in E.

        Uses ``x'^k d^k = e (e - 1) ... (e - k + 1)`` in each coordinate.
        """
        names = euler_names(self.n)
        out = Poly(names)
        for (K, L), c in self._terms.items():
            if K != L:
                return None
            term = Poly.const(names, c)
            for i, k in enumerate(K):
                e = Poly.var(names, i)
                for j in range(k):
                    term = term * (e - j)
            out = out + term
        return out

    @classmethod
    def from_euler_poly(cls, p: Poly) -> "WeylElement":
        n = p.nvars
        out = cls(n)
        for exp, c in p.items():
            term = cls.const(n, c)
            for i, k in enumerate(exp):
                term = term * euler(n, i) ** k
            out = out + term
        return out

    # -- text -------------------------------------------------------------
    def sorted_terms(self):
        return sorted(
            self._terms.items(),
            key=lambda t: (-(sum(t[0][0]) + sum(t[0][1])), tuple(-x for x in t[0][0] + t[0][1])),
        )

    def __str__(self):
        pairs = []
        for (K, L), c in self.sorted_terms():
            parts = []
            for i, k in enumerate(K):
                if k:
                    parts.append(f"x{i + 1}" + (f"^{k}" if k > 1 else ""))
            for i, k in enumerate(L):
                if k:
                    parts.append(f"d{i + 1}" + (f"^{k}" if k > 1 else ""))
            pairs.append((" ".join(parts), c))
        return format_terms(pairs)

    def __repr__(self):
        return f"WeylElement({self})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [
                {"x": list(K), "d": list(L), "coeff": c.to_json()} for (K, L), c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "WeylElement":
        terms = obj["terms"]
        n = obj.get("n", len(terms[0]["x"]) if terms else 0)
        return cls(n, {(tuple(t["x"]), tuple(t["d"])): Scalar.from_json(t["coeff"]) for t in terms})


def _reorder_1d(L: int, M: int):
    """``d^L x'^M = sum_j C(L, j) M!/(M-j)! x'^(M-j) d^(L-j)``; yields ``(j, coeff)``."""
    for j in range(min(L, M) + 1):
        yield j, math.comb(L, j) * math.perm(M, j)


def weyl_product(a: WeylElement, b: WeylElement) -> WeylElement:
    """Associative product in normal form; coordinates commute with each other."""
    if a.n != b.n:
        raise ValueError("Weyl elements over different n")
    n = a.n
    out: dict = {}
    for (K1, L1), c1 in a.items():
        for (K2, L2), c2 in b.items():
            # expand d^L1 x'^K2 coordinate by coordinate
            partial = [((), (), 1)]
            for i in range(n):
                nxt = []
                for Ks, Ls, c in partial:
                    for j, cj in _reorder_1d(L1[i], K2[i]):
                        nxt.append((Ks + (K1[i] + K2[i] - j,), Ls + (L1[i] - j + L2[i],), c * cj))
                partial = nxt
            for K, L, c in partial:
                key = (K, L)
                out[key] = out.get(key, _ZERO) + c1 * c2 * c
    return WeylElement(n, out)


def commutator(a: WeylElement, b: WeylElement) -> WeylElement:
    return weyl_product(a, b) - weyl_product(b, a)


def euler(n: int, i: int) -> WeylElement:
    """``e_i = x'_i d_i``."""
    K = [0] * n
    K[i] = 1
    return WeylElement(n, {(tuple(K), tuple(K)): 1})


def weyl_omega(l) -> WeylElement:
    """``prod_j x'_j^{l_j}`` for ``l_j > 0`` times ``d_j^{-l_j}`` for ``l_j < 0``."""
    n = len(l)
    K = tuple(max(v, 0) for v in l)
    L = tuple(max(-v, 0) for v in l)
    return WeylElement(n, {(K, L): 1})


def build_tau(A, i: int) -> WeylElement:
    """``tau(xi^i) = -sum_j a^i_j x'_j d_j`` (row ``i`` is 1-based, like ``build_theta``)."""
    A = A if isinstance(A, ActionMatrix) else ActionMatrix(A)
    if not 1 <= i <= A.m:
        raise IndexError(f"row {i} out of range for {A.m} rows")
    out = WeylElement(A.n)
    for j, a in enumerate(A.rows[i - 1]):
        out = out - a * euler(A.n, j)
    return out


def classical_invariant(w: WeylElement, A) -> bool:
    """True iff ``[tau(xi^i), w] = 0`` for every row of ``A``."""
    A = A if isinstance(A, ActionMatrix) else ActionMatrix(A)
    return all(not commutator(build_tau(A, i), w) for i in range(1, A.m + 1))


def build_psi_classical(A) -> list:
    """``psi^k = sum_j s^k_j e_j`` for an orthogonal basis ``s^k`` of the common
    kernel of the action rows and the lattice ``A-perp ∩ Z^n``."""
    A = A if isinstance(A, ActionMatrix) else ActionMatrix(A)
    rows = list(A.rows) + [tuple(Scalar(v) for v in l) for l in integer_kernel_basis(A)]
    out = []
    for s in field_kernel_basis(ActionMatrix(rows)):
        psi = WeylElement(A.n)
        for j, c in enumerate(s):
            psi = psi + c * euler(A.n, j)
        out.append(psi)
    return out
