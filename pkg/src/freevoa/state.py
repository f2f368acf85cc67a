"""Canonical states of a free vertex superalgebra.

A monomial is a sorted tuple of ``(generator, k)`` factors, repeated
according to multiplicity. It stands for the right-nested Wick product
``:d^k1 a1 (:d^k2 a2 ( ... ):):``; because every generator contraction is a
scalar, the creation modes ``a(-k-1)`` super-commute and the same tuple is
the mode word ``a1(-k1-1) ... ar(-kr-1)|0>`` up to the factor
``k1! ... kr!``. States store coefficients in the Wick normalization.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping

from .algebra import AlgebraMismatch, FreeAlgebra
from .scalar import Scalar, as_scalar

__all__ = [
    "State",
    "normalize",
    "derive",
    "grading",
    "INHOMOGENEOUS",
    "mono_star_weight",
    "mono_parity",
    "mono_factorial",
]

INHOMOGENEOUS = "inhomogeneous"
_ZERO = Scalar(0)
_ONE = Scalar(1)


def mono_parity(alg: FreeAlgebra, mono) -> int:
    return sum(alg.parity(g) for g, _ in mono) & 1


def mono_star_weight(alg: FreeAlgebra, mono) -> Fraction:
    return sum((alg.star_weight(g) + k for g, k in mono), Fraction(0))


def mono_factorial(mono) -> int:
    out = 1
    for _, k in mono:
        if k > 1:
            out *= math.factorial(k)
    return out


def sort_factors(alg: FreeAlgebra, factors) -> tuple:
    """Sort a factor word; return ``(sign, mono)`` or ``(0, None)`` if it vanishes."""
    seq = list(factors)
    sign = 1
    # insertion sort keeps track of transpositions of odd factors
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            if alg.parity(seq[j][0]) and alg.parity(seq[j - 1][0]):
                sign = -sign
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            j -= 1
    for a, b in zip(seq, seq[1:]):
        if a == b and alg.parity(a[0]):
            return 0, None
    return sign, tuple(seq)


class State:
    """An immutable Scalar-linear combination of canonical monomials."""

    __slots__ = ("algebra", "_terms", "_hash")

    def __init__(self, algebra: FreeAlgebra, terms: Mapping | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = as_scalar(c)
            if c:
                clean[tuple(mono)] = c
        self.algebra = algebra
        self._terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def vacuum(cls, algebra: FreeAlgebra, coeff=1) -> "State":
        return cls(algebra, {(): coeff})

    @classmethod
    def generator(cls, algebra: FreeAlgebra, name, deriv: int = 0) -> "State":
        idx = algebra.index(name) if isinstance(name, str) else int(name)
        if deriv < 0:
            raise ValueError("derivative order must be non-negative")
        return cls(algebra, {((idx, deriv),): 1})

    @classmethod
    def from_mode_terms(cls, algebra: FreeAlgebra, terms: Mapping) -> "State":
        out = {}
        for m, c in terms.items():
            f = mono_factorial(m)
            out[m] = as_scalar(c) / f if f != 1 else c
        return cls(algebra, out)

    # -- access -----------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def coeff(self, mono) -> Scalar:
        return self._terms.get(tuple(mono), _ZERO)

    def mode_terms(self) -> dict:
        """Coefficients with respect to the mode-word basis."""
        out = {}
        for m, c in self._terms.items():
            f = mono_factorial(m)
            out[m] = c * f if f != 1 else c
        return out

    def is_zero(self) -> bool:
        return not self._terms

    def scalar_part(self) -> Scalar:
        return self._terms.get((), _ZERO)

    def is_scalar(self) -> bool:
        return all(m == () for m in self._terms)

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        """``{"algebra", "terms": [{"factors": [[name, k], ...], "coeff"}]}``.

        Factors list the right-nested Wick monomial ``:d^k1 a1 (:d^k2 a2 ...:):``
        in canonical order; the zero state has no terms.
        """
        gens = self.algebra.generators
        terms = [
            {"factors": [[gens[g].name, k] for g, k in m], "coeff": c.to_json()}
            for m, c in sorted(self._terms.items())
        ]
        return {"algebra": self.algebra.to_json(), "terms": terms}

    @classmethod
    def from_json(cls, obj, algebra: FreeAlgebra | None = None) -> "State":
        alg = algebra or FreeAlgebra.from_json(obj["algebra"])
        raw = [([(alg.index(name), int(k)) for name, k in t["factors"]], Scalar.from_json(t["coeff"]))
               for t in obj["terms"]]
        return normalize(alg, raw)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "State"):
        if not isinstance(other, State):
            raise TypeError(f"expected State, got {type(other).__name__}")
        if other.algebra != self.algebra:
            raise AlgebraMismatch("states belong to different algebras")

    def __add__(self, other):
        if not isinstance(other, State):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, _ZERO) + c
        return State(self.algebra, out)

    def __sub__(self, other):
        if not isinstance(other, State):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return State(self.algebra, {m: -c for m, c in self._terms.items()})

    def __mul__(self, scalar):
        if isinstance(scalar, State):
            return NotImplemented
        s = as_scalar(scalar)
        return State(self.algebra, {m: c * s for m, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / as_scalar(scalar))

    def __eq__(self, other):
        if isinstance(other, State):
            return self.algebra == other.algebra and self._terms == other._terms
        if isinstance(other, (int, Fraction, Scalar)) and not other:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        from .expr import format_state

        return f"State({format_state(self)})"

    def __str__(self):
        from .expr import format_state

        return format_state(self)


def normalize(algebra: FreeAlgebra, raw_terms: Iterable) -> State:
    """Canonicalize ``[(factors, coeff), ...]`` with the Koszul sign.

    Factors are ``(generator, k)`` pairs where ``generator`` is an index or a
    name such as ``"beta1"``. A repeated odd factor annihilates its term.
    """
    acc: dict = {}
    for factors, coeff in raw_terms:
        if isinstance(factors, State):
            raise TypeError("normalize takes raw factor sequences, not States")
        resolved = []
        for g, k in factors:
            if isinstance(g, str):
                g = algebra.index(g)
            if not 0 <= g < algebra.ngens:
                raise IndexError(f"generator index {g} out of range")
            if k < 0:
                raise ValueError("derivative order must be non-negative")
            resolved.append((g, int(k)))
        sign, mono = sort_factors(algebra, resolved)
        if not sign:
            continue
        acc[mono] = acc.get(mono, _ZERO) + sign * as_scalar(coeff)
    return State(algebra, acc)


def renormalize(state: State) -> State:
    """Re-run normalization on an already built state (used for idempotence tests)."""
    return normalize(state.algebra, list(state.items()))


def derive(u: State) -> State:
    """Translation operator: Leibniz over Wick factors, ``d(d^k a) = d^(k+1) a``."""
    raw = []
    for mono, c in u.items():
        for i, (g, k) in enumerate(mono):
            raw.append((mono[:i] + ((g, k + 1),) + mono[i + 1:], c))
    return normalize(u.algebra, raw)


def derive_n(u: State, k: int) -> State:
    for _ in range(k):
        u = derive(u)
    return u


def _generator_grades(alg: FreeAlgebra, which: str, alpha=None, alpha_bc=None):
    n, p = alg.bg_pairs, alg.bc_pairs
    grades = []
    for g in alg.generators:
        if which == "weight":
            if g.kind in ("beta", "gamma"):
                a = as_scalar(alpha[g.pair]) if alpha is not None else Scalar(Fraction(1, 2))
                grades.append(a if g.kind == "beta" else 1 - a)
            elif g.kind in ("b", "c"):
                a = as_scalar(alpha_bc[g.pair]) if alpha_bc is not None else Scalar(Fraction(1, 2))
                grades.append(a if g.kind == "b" else 1 - a)
            else:
                grades.append(Scalar(1))
        elif which == "bgCharge":
            grades.append({"beta": -1, "gamma": 1}.get(g.kind, 0))
        elif which == "bcCharge":
            grades.append({"b": -1, "c": 1}.get(g.kind, 0))
        elif which == "degree":
            grades.append(1)
        elif which == "level":
            grades.append(0)
        else:
            raise ValueError(f"unknown grading {which!r}")
    if which == "weight" and alpha is not None and len(alpha) != n:
        raise ValueError(f"alpha needs {n} entries, got {len(alpha)}")
    if which == "weight" and alpha_bc is not None and len(alpha_bc) != p:
        raise ValueError(f"alpha_bc needs {p} entries, got {len(alpha_bc)}")
    return grades


def mono_grade(alg: FreeAlgebra, mono, which: str, alpha=None, alpha_bc=None):
    grades = _generator_grades(alg, which, alpha, alpha_bc)
    deriv_counts = which in ("weight", "level")
    total = 0
    for g, k in mono:
        total = total + grades[g] + (k if deriv_counts else 0)
    return total


def grading(u: State, which: str, alpha=None, alpha_bc=None):
    """Common grade of all monomials of ``u``.

    ``which`` is one of ``weight``, ``bgCharge``, ``bcCharge``, ``degree``,
    ``level``. Returns :data:`INHOMOGENEOUS` for mixed grades and ``None``
    for the zero state. ``alpha`` (per betagamma pair, default 1/2) and
    ``alpha_bc`` (per bc pair, default 1/2) only affect ``weight``.
    """
    alg = u.algebra
    grades = _generator_grades(alg, which, alpha, alpha_bc)
    deriv_counts = which in ("weight", "level")
    seen = None
    for mono in u:
        total = 0
        for g, k in mono:
            total = total + grades[g] + (k if deriv_counts else 0)
        if seen is None:
            seen = total
        elif seen != total:
            return INHOMOGENEOUS
    if seen is None:
        return None
    if isinstance(seen, Scalar) and seen.is_rational():
        seen = seen.rat
    return seen
