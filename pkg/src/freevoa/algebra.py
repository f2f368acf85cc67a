"""Declarations of freely generated vertex superalgebras.

A :class:`FreeAlgebra` bundles ``n`` betagamma pairs, ``p`` bc pairs and a
list of Heisenberg fields. Generators are indexed in the fixed order
``beta1..betan, gamma1..gamman, b1..bp, c1..cp, j1..jh``. All singular OPEs
between generators are multiples of the vacuum, which is what makes the
mode calculus in :mod:`freevoa.ope` terminate.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .scalar import Scalar, as_scalar

__all__ = ["Generator", "FreeAlgebra", "AlgebraMismatch", "load_algebra"]

EVEN, ODD = 0, 1
KINDS = ("beta", "gamma", "b", "c", "j")

_NAME = re.compile(r"^(beta|gamma|b|c|j)(\d+)$")


class AlgebraMismatch(ValueError):
    """Raised when states from two different algebras are combined."""


@dataclass(frozen=True)
class Generator:
    name: str
    kind: str
    pair: int  # 0-based index within its family
    parity: int

    @property
    def is_odd(self) -> bool:
        return self.parity == ODD


@dataclass(frozen=True)
class FreeAlgebra:
    """``bg_pairs`` betagamma pairs, ``bc_pairs`` bc pairs, Heisenberg levels."""

    bg_pairs: int = 0
    bc_pairs: int = 0
    heis_levels: tuple = ()
    generators: tuple = field(init=False, repr=False, compare=False)
    _index: dict = field(init=False, repr=False, compare=False)
    _contr: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.bg_pairs < 0 or self.bc_pairs < 0:
            raise ValueError("pair counts must be non-negative")
        levels = tuple(as_scalar(x) for x in self.heis_levels)
        object.__setattr__(self, "heis_levels", levels)
        gens = []
        for kind, count, parity in (
            ("beta", self.bg_pairs, EVEN),
            ("gamma", self.bg_pairs, EVEN),
            ("b", self.bc_pairs, ODD),
            ("c", self.bc_pairs, ODD),
            ("j", len(levels), EVEN),
        ):
            gens.extend(Generator(f"{kind}{i + 1}", kind, i, parity) for i in range(count))
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(self, "_index", {g.name: i for i, g in enumerate(gens)})
        object.__setattr__(self, "_contr", self._build_contractions())

    def _build_contractions(self) -> dict:
        # (i, j, k) -> a_i o_k a_j as a multiple of the vacuum
        n, p = self.bg_pairs, self.bc_pairs
        table = {}
        for r in range(n):
            beta, gamma = r, n + r
            table[beta, gamma, 0] = Fraction(1)
            table[gamma, beta, 0] = Fraction(-1)
        off = 2 * n
        for r in range(p):
            b, c = off + r, off + p + r
            table[b, c, 0] = Fraction(1)
            table[c, b, 0] = Fraction(1)
        off = 2 * n + 2 * p
        for r, lev in enumerate(self.heis_levels):
            if lev:
                table[off + r, off + r, 1] = lev.rat if lev.is_rational() else lev
        return table

    # -- lookup -----------------------------------------------------------
    @property
    def ngens(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def gen_index(self, kind: str, pair: int) -> int:
        """Index of generator ``kind`` with 1-based pair number."""
        return self.index(f"{kind}{pair}")

    def parity(self, i: int) -> int:
        return self.generators[i].parity

    def contraction(self, i: int, j: int, k: int):
        """``a_i o_k a_j`` as a scalar multiple of the vacuum (0 if absent)."""
        return self._contr.get((i, j, k), 0)

    @property
    def contraction_table(self) -> dict:
        return dict(self._contr)

    def max_contraction_order(self) -> int:
        return max((k for (_, _, k) in self._contr), default=0)

    def star_weight(self, i: int) -> Fraction:
        """Internal grading: 1/2 on beta, gamma, b, c and 1 on Heisenberg fields."""
        return Fraction(1) if self.generators[i].kind == "j" else Fraction(1, 2)

    def is_pure_bg(self) -> bool:
        return self.bc_pairs == 0 and not self.heis_levels

    # -- construction helpers --------------------------------------------
    def gen(self, name: str, deriv: int = 0):
        from .state import State

        return State.generator(self, name, deriv)

    def vacuum(self):
        from .state import State

        return State.vacuum(self)

    def to_json(self) -> dict:
        return {
            "bg_pairs": self.bg_pairs,
            "bc_pairs": self.bc_pairs,
            "heisenberg_levels": [str(x) for x in self.heis_levels],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FreeAlgebra":
        levels = tuple(Scalar.from_json(x) for x in obj.get("heisenberg_levels", []))
        return cls(int(obj.get("bg_pairs", 0)), int(obj.get("bc_pairs", 0)), levels)


def parse_generator_name(name: str):
    m = _NAME.match(name)
    if not m:
        return None
    return m.group(1), int(m.group(2))


def load_algebra(path) -> FreeAlgebra:
    return FreeAlgebra.from_json(json.loads(Path(path).read_text()))
