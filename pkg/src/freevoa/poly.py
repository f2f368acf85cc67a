"""Commutative polynomials with Q(sqrt6) coefficients.

Used for Sym(V + V*) (variables ``x1..xn, xp1..xpn``) and for the
polynomial ring of Euler operators (variables ``e1..en``).
"""

from __future__ import annotations

from .scalar import Scalar, as_scalar, format_scalar

__all__ = ["Poly", "sym_names", "euler_names"]

_ZERO = Scalar(0)


def sym_names(n: int) -> tuple:
    """Variable names for Sym(V + V*): ``x1..xn`` then ``xp1..xpn``."""
    return tuple(f"x{i + 1}" for i in range(n)) + tuple(f"xp{i + 1}" for i in range(n))


def euler_names(n: int) -> tuple:
    return tuple(f"e{i + 1}" for i in range(n))


class Poly:
    """Immutable map ``exponent tuple -> Scalar`` over named variables."""

    __slots__ = ("names", "_terms")

    def __init__(self, names, terms=None):
        self.names = tuple(names)
        n = len(self.names)
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n or min(exp, default=0) < 0:
                raise ValueError(f"bad exponent {exp} for {n} variables")
            c = as_scalar(c)
            if c:
                clean[exp] = clean.get(exp, _ZERO) + c
                if not clean[exp]:
                    del clean[exp]
        self._terms = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, names, c=1) -> "Poly":
        return cls(names, {(0,) * len(names): c})

    @classmethod
    def var(cls, names, i: int) -> "Poly":
        exp = [0] * len(names)
        exp[i] = 1
        return cls(names, {tuple(exp): 1})

    @classmethod
    def monomial(cls, names, exp, c=1) -> "Poly":
        return cls(names, {tuple(exp): c})

    # -- access -----------------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, exp) -> Scalar:
        return self._terms.get(tuple(exp), _ZERO)

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    # -- arithmetic -------------------------------------------------------
    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.names != self.names:
                raise ValueError("polynomials over different variables")
            return other
        return Poly.const(self.names, as_scalar(other))

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self._terms)
        for e, c in o._terms.items():
            out[e] = out.get(e, _ZERO) + c
        return Poly(self.names, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.names, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            s = as_scalar(other)
            return Poly(self.names, {e: c * s for e, c in self._terms.items()})
        o = self._lift(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, _ZERO) + c1 * c2
        return Poly(self.names, out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / as_scalar(scalar))

    def __pow__(self, k: int):
        out = Poly.const(self.names)
        for _ in range(k):
            out = out * self
        return out

    def diff(self, i: int) -> "Poly":
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Poly(self.names, out)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.names == other.names and self._terms == other._terms
        if isinstance(other, (int, Scalar)) or hasattr(other, "denominator"):
            return self == Poly.const(self.names, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.names, frozenset(self._terms.items())))

    # -- text -------------------------------------------------------------
    def sorted_terms(self):
        """Terms by descending total degree, then descending exponent tuple."""
        return sorted(self._terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def __str__(self):
        return format_terms(
            [(_mono_text(self.names, e), c) for e, c in self.sorted_terms()]
        )

    def __repr__(self):
        return f"Poly({self})"

    def to_json(self) -> dict:
        return {
            "vars": list(self.names),
            "terms": [{"exp": list(e), "coeff": c.to_json()} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj) -> "Poly":
        return cls(obj["vars"], {tuple(t["exp"]): Scalar.from_json(t["coeff"]) for t in obj["terms"]})


def _mono_text(names, exp) -> str:
    parts = []
    for name, k in zip(names, exp):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return " ".join(parts)


def format_terms(pairs, sep: str = "*", bare_minus: bool = True) -> str:
    """Join ``(monomial text, coeff)`` pairs; empty text is the constant term.

    With ``bare_minus`` a coefficient of -1 prints as a leading ``-``;
    otherwise it prints as ``-1*``.
    """
    if not pairs:
        return "0"
    out = []
    for mono, c in pairs:
        if not mono:
            body = format_scalar(c)
        elif c == 1:
            body = mono
        elif c == -1 and bare_minus:
            body = "-" + mono
        else:
            body = f"{format_scalar(c)}{sep}{mono}"
        if not out:
            out.append(body)
        elif body.startswith("-"):
            out.append(" - " + body[1:])
        else:
            out.append(" + " + body)
    return "".join(out)
