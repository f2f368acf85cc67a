"""Exact linear algebra over Q(sqrt6) and integer lattice kernels."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .scalar import Scalar, as_scalar

__all__ = [
    "ActionMatrix",
    "rref",
    "rank",
    "nullspace",
    "dot",
    "gram_schmidt",
    "field_kernel_basis",
    "integer_kernel",
    "integer_kernel_basis",
    "hermite_rows",
    "solve_in_lattice",
]


class ActionMatrix:
    """``m x n`` matrix of Scalars; row ``i`` holds the diagonal of ``rho(xi^i)``."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(as_scalar(x) for x in r) for r in rows)
        if not rows or not rows[0]:
            raise ValueError("action matrix needs m >= 1 rows and n >= 1 columns")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged action matrix")
        self.rows = rows

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def __eq__(self, other):
        return isinstance(other, ActionMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __repr__(self):
        return "ActionMatrix([" + ", ".join("(" + ", ".join(map(str, r)) + ")" for r in self.rows) + "])"

    def to_json(self) -> dict:
        return {"rows": [[str(x) for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, obj) -> "ActionMatrix":
        return cls(obj["rows"])


def dot(u: Sequence, v: Sequence):
    """Standard symmetric pairing (no conjugation)."""
    total = Scalar(0)
    for a, b in zip(u, v):
        total = total + as_scalar(a) * b
    return total


def rref(rows, ncols: int | None = None):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    mat = [[as_scalar(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1]) if rows else 0


def nullspace(rows, ncols: int):
    """Basis of ``{x : rows x = 0}``; one vector per free column, in column order."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Scalar(0)] * ncols
        v[f] = Scalar(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def gram_schmidt(vectors):
    """Orthogonalize (without normalizing) against the symmetric pairing."""
    out = []
    for v in vectors:
        w = [as_scalar(x) for x in v]
        for u in out:
            q = dot(u, u)
            c = dot(u, w) / q
            w = [a - c * b for a, b in zip(w, u)]
        if any(w):
            out.append(w)
    return out


def field_kernel_basis(A) -> list:
    """Orthogonal basis of ``{v : <a^i, v> = 0 for all rows}`` over Q(sqrt6)."""
    A = A if isinstance(A, ActionMatrix) else ActionMatrix(A)
    return gram_schmidt(nullspace(list(A.rows), A.n))


# -- integer lattices ------------------------------------------------------

def _rational_constraints(A: ActionMatrix):
    """Split each row into rational and sqrt6 parts, scaled to integers."""
    out = []
    for row in A.rows:
        for part in ("rat", "irr"):
            vals = [getattr(x, part) for x in row]
            if not any(vals):
                continue
            den = math.lcm(*(v.denominator for v in vals))
            out.append([int(v * den) for v in vals])
    return out


def integer_kernel(M, n: int):
    """Z-basis of ``{l in Z^n : M l = 0}`` for an integer matrix ``M``.

    Column operations on ``M`` are mirrored on an identity matrix; columns of
    the transform that end up under zero columns span the kernel, and the
    transform is unimodular, so the result is saturated.
    """
    cols = [[row[j] for row in M] for j in range(n)]
    U = [[int(i == j) for i in range(n)] for j in range(n)]  # U[j] = column j
    nrows = len(M)
    start = 0
    for r in range(nrows):
        while True:
            nz = [j for j in range(start, n) if cols[j][r]]
            if not nz:
                break
            jmin = min(nz, key=lambda j: abs(cols[j][r]))
            cols[start], cols[jmin] = cols[jmin], cols[start]
            U[start], U[jmin] = U[jmin], U[start]
            done = True
            for j in range(start + 1, n):
                if cols[j][r]:
                    q = cols[j][r] // cols[start][r]
                    cols[j] = [a - q * b for a, b in zip(cols[j], cols[start])]
                    U[j] = [a - q * b for a, b in zip(U[j], U[start])]
                    if cols[j][r]:
                        done = False
            if done:
                start += 1
                break
    return [U[j] for j in range(start, n)]


def hermite_rows(vectors):
    """Row-style Hermite normal form with positive pivots; zero rows dropped."""
    mat = [list(map(int, v)) for v in vectors]
    if not mat:
        return []
    n = len(mat[0])
    r = 0
    pivots = []
    for col in range(n):
        while True:
            nz = [i for i in range(r, len(mat)) if mat[i][col]]
            if not nz:
                break
            imin = min(nz, key=lambda i: abs(mat[i][col]))
            mat[r], mat[imin] = mat[imin], mat[r]
            clean = True
            for i in range(r + 1, len(mat)):
                if mat[i][col]:
                    q = mat[i][col] // mat[r][col]
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
                    if mat[i][col]:
                        clean = False
            if clean:
                break
        if r < len(mat) and mat[r][col]:
            if mat[r][col] < 0:
                mat[r] = [-a for a in mat[r]]
            p = mat[r][col]
            for i in range(r):
                q = mat[i][col] // p
                if q:
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
            pivots.append(col)
            r += 1
            if r == len(mat):
                break
    return [tuple(row) for row in mat[:r]]


def integer_kernel_basis(A) -> list:
    """Canonical Z-basis (Hermite rows) of the lattice ``A-perp ∩ Z^n``."""
    A = A if isinstance(A, ActionMatrix) else ActionMatrix(A)
    M = _rational_constraints(A)
    if not M:
        return [tuple(int(i == j) for i in range(A.n)) for j in range(A.n)]
    return hermite_rows(integer_kernel(M, A.n))


def solve_in_lattice(basis, v):
    """Integer coordinates of ``v`` in the Z-span of Hermite rows, or ``None``."""
    coords = []
    rest = [Fraction(x) for x in v]
    for row in basis:
        col = next(i for i, x in enumerate(row) if x)
        q = rest[col] / row[col]
        if q.denominator != 1:
            return None
        coords.append(int(q))
        rest = [a - q * b for a, b in zip(rest, row)]
    return coords if not any(rest) else None
