"""Exact arithmetic in the real quadratic field Q(sqrt 6).

Every structure constant that shows up in the free-field realizations of
W3 at c = -2 lives in this field, e.g. sqrt(2/27) = sqrt6/9 and
sqrt(8/3) = 2*sqrt6/3.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

__all__ = ["Scalar", "SQRT6", "as_scalar", "parse_scalar", "binom", "falling"]


def _frac(x) -> Fraction:
    if type(x) is Fraction:
        return x
    if type(x) is int:
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


class Scalar:
    """An element ``rat + irr*sqrt(6)`` with exact rational parts.

    Instances are immutable and hash like the equivalent ``Fraction`` when
    the irrational part vanishes, so ``Scalar(3) == 3`` and both can key
    the same dict slot.
    """

    __slots__ = ("rat", "irr")

    def __init__(self, rat=0, irr=0):
        object.__setattr__(self, "rat", _frac(rat))
        object.__setattr__(self, "irr", _frac(irr))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- coercion -------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return Scalar(other)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar(self.rat + o.rat, self.irr + o.irr)

    __radd__ = __add__

    def __sub__(self, other):
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar(self.rat - o.rat, self.irr - o.irr)

    def __rsub__(self, other):
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar(self.rat * other, self.irr * other)
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return o
        a, b, c, d = self.rat, self.irr, o.rat, o.irr
        if not b and not d:
            return Scalar(a * c)
        return Scalar(a * c + 6 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(-self.rat, -self.irr)

    def __pos__(self):
        return self

    def norm(self) -> Fraction:
        """Field norm ``rat^2 - 6 irr^2`` (zero only for zero)."""
        return self.rat * self.rat - 6 * self.irr * self.irr

    def conjugate(self) -> "Scalar":
        return Scalar(self.rat, -self.irr)

    def inverse(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("inverse of zero Scalar")
        n = self.norm()
        return Scalar(self.rat / n, -self.irr / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of a Scalar by zero")
            if other == 1:
                return self
            return Scalar(self.rat / other, self.irr / other)
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out, base = Scalar(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.rat == o.rat and self.irr == o.irr

    def __hash__(self):
        if not self.irr:
            return hash(self.rat)
        return hash((self.rat, self.irr))

    def __bool__(self):
        return bool(self.rat) or bool(self.irr)

    def sign(self) -> int:
        """Sign of the real number ``rat + irr*sqrt6`` (exact)."""
        a, b = self.rat, self.irr
        if not b:
            return (a > 0) - (a < 0)
        if not a:
            return (b > 0) - (b < 0)
        if (a > 0) == (b > 0):
            return 1 if a > 0 else -1
        # opposite signs: compare a^2 with 6 b^2
        n = a * a - 6 * b * b
        dominant = a if n > 0 else b
        return 1 if dominant > 0 else -1

    def __lt__(self, other):
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return o
        return (self - o).sign() < 0

    def __le__(self, other):
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return o
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return o
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return o
        return (self - o).sign() >= 0

    def __float__(self):
        return float(self.rat) + float(self.irr) * math.sqrt(6)

    def is_rational(self) -> bool:
        return not self.irr

    def is_integer(self) -> bool:
        return not self.irr and self.rat.denominator == 1

    # -- text -----------------------------------------------------------
    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        return format_scalar(self)

    def to_json(self) -> dict:
        out = {"rat": str(self.rat)}
        if self.irr:
            out["irr"] = str(self.irr)
        return out

    @classmethod
    def from_json(cls, obj) -> "Scalar":
        if isinstance(obj, dict):
            return cls(Fraction(obj.get("rat", "0")), Fraction(obj.get("irr", "0")))
        if isinstance(obj, str):
            return parse_scalar(obj)
        return as_scalar(obj)


SQRT6 = Scalar(0, 1)


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    return Scalar(x)


def format_scalar(s: Scalar) -> str:
    """Canonical text: ``3/2``, ``1/9*sqrt6``, ``(1/2+1/3*sqrt6)``."""
    if not s.irr:
        return str(s.rat)
    irr = "sqrt6" if s.irr == 1 else ("-sqrt6" if s.irr == -1 else f"{s.irr}*sqrt6")
    if not s.rat:
        return irr
    sign = "+" if s.irr > 0 else "-"
    mag = abs(s.irr)
    irr_abs = "sqrt6" if mag == 1 else f"{mag}*sqrt6"
    return f"({s.rat}{sign}{irr_abs})"


_RAT = r"(?:\d+(?:/\d+)?)"
_PART = re.compile(
    rf"\s*([+-]?)\s*(?:({_RAT})\s*\*?\s*(sqrt6)|(sqrt6)|({_RAT}))\s*"
)


def parse_scalar(text: str) -> Scalar:
    """Parse literals such as ``-3/4``, ``sqrt6``, ``1/9sqrt6``, ``1/2+3*sqrt6``."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    pos, total, seen = 0, Scalar(0), False
    while pos < len(s):
        m = _PART.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"invalid scalar literal {text!r}")
        if seen and not m.group(1):
            raise ValueError(f"invalid scalar literal {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        if m.group(3):
            part = Scalar(0, Fraction(m.group(2)))
        elif m.group(4):
            part = SQRT6
        else:
            part = Scalar(Fraction(m.group(5)))
        total = total + sign * part
        pos, seen = m.end(), True
    if not seen:
        raise ValueError(f"invalid scalar literal {text!r}")
    return total


def falling(m, j: int):
    """Falling factorial ``m (m-1) ... (m-j+1)`` for any exact ``m``."""
    out = 1
    for i in range(j):
        out = out * (m - i)
    return out


def binom(m, j: int):
    """Generalized binomial coefficient; exact for int, Fraction or Scalar ``m``."""
    if j < 0:
        return 0
    if isinstance(m, int):
        if m >= 0:
            return math.comb(m, j)
        return (-1) ** j * math.comb(j - m - 1, j)
    return falling(m, j) / math.factorial(j)
