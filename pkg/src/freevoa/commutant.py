"""Invariants of an abelian current action inside a betagamma system.

A diagonal action is an ``m x n`` matrix ``A`` of full row rank. Row ``i``
gives the current ``theta^i = -sum_j a^i_j :gamma_j beta_j:``; the commutant
consists of the states annihilated by every non-negative mode of every
``theta^i``.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import FreeAlgebra
from .linalg import ActionMatrix, dot, field_kernel_basis, integer_kernel_basis, nullspace, rank, rref
from .ope import ModeCalculus, primary_defects, star_weight, wick, wick_power
from .scalar import Scalar, as_scalar
from .state import State, derive, normalize

__all__ = [
    "DiagonalAction",
    "build_theta",
    "build_phi",
    "phi_basis",
    "build_omega",
    "omega_exponent",
    "is_invariant",
    "invariance_defects",
    "generator_set",
    "lattice_contraction",
    "enumerate_monomials",
    "graded_commutant_basis",
    "quantum_correct",
    "extract_unit",
    "conformal_b_prime",
    "bprime_generator_checks",
    "bprime_central_charge",
]


class DiagonalAction:
    """A faithful diagonal action of an abelian Lie algebra on ``C^n``."""

    def __init__(self, matrix, algebra: FreeAlgebra | None = None):
        A = matrix if isinstance(matrix, ActionMatrix) else ActionMatrix(matrix)
        if rank(list(A.rows)) != A.m:
            raise ValueError(
                "action matrix is not of full row rank; the kernel of the action "
                "acts trivially, so quotient it out and pass an independent set of rows"
            )
        if algebra is None:
            algebra = FreeAlgebra(A.n)
        if algebra.bg_pairs != A.n or not algebra.is_pure_bg():
            raise ValueError(f"action on C^{A.n} needs a pure betagamma algebra with {A.n} pairs")
        self.matrix = A
        self.algebra = algebra

    @property
    def m(self) -> int:
        return self.matrix.m

    @property
    def n(self) -> int:
        return self.matrix.n

    def row(self, i: int):
        if not 1 <= i <= self.m:
            raise IndexError(f"row {i} out of range 1..{self.m}")
        return self.matrix.rows[i - 1]

    def lattice(self) -> list:
        return integer_kernel_basis(self.matrix)

    def in_lattice(self, l) -> bool:
        return all(not dot(row, l) for row in self.matrix.rows)

    def __repr__(self):
        return f"DiagonalAction({self.matrix!r})"


def _current(alg: FreeAlgebra, coeffs) -> State:
    n = alg.bg_pairs
    return normalize(alg, [(((j, 0), (n + j, 0)), -as_scalar(c)) for j, c in enumerate(coeffs)])


def build_theta(act: DiagonalAction, i: int) -> State:
    """``theta^i = -sum_j a^i_j :gamma_j beta_j:`` for the 1-based row ``i``."""
    return _current(act.algebra, act.row(i))


def build_phi(act: DiagonalAction, b) -> State:
    """``-sum_j b_j :gamma_j beta_j:`` for ``b`` orthogonal to every action row."""
    b = [as_scalar(x) for x in b]
    if len(b) != act.n:
        raise ValueError(f"phi needs a vector of length {act.n}")
    if not act.in_lattice(b):
        raise ValueError("vector is not orthogonal to the action rows")
    return _current(act.algebra, b)


def phi_basis(act: DiagonalAction) -> list:
    """Orthogonal (unnormalized) basis of the complement of the action rows."""
    return field_kernel_basis(act.matrix)


def build_omega(alg, l) -> State:
    """``:beta_j^{-l_j} ... gamma_j^{l_j} ...:`` (the vacuum for ``l = 0``)."""
    if isinstance(alg, DiagonalAction):
        alg = alg.algebra
    n = alg.bg_pairs
    if len(l) != n:
        raise ValueError(f"lattice vector needs {n} entries")
    factors = []
    for j, v in enumerate(l):
        v = int(v)
        factors += [(j, 0)] * (-v) if v < 0 else [(n + j, 0)] * v
    return normalize(alg, [(factors, 1)])


def omega_exponent(alg: FreeAlgebra, mono):
    """Inverse of :func:`build_omega` on monomials; ``None`` if not of that shape."""
    n = alg.bg_pairs
    l = [0] * n
    for g, k in mono:
        if k or g >= 2 * n:
            return None
        j = g % n
        step = -1 if g < n else 1
        if l[j] * step < 0:
            return None
        l[j] += step
    return tuple(l)


def invariance_defects(u: State, act: DiagonalAction, calc: ModeCalculus | None = None) -> list:
    """``(i, n)`` pairs with ``theta^i o_n u != 0``, for ``0 <= n < 1 + wt*(u)``."""
    calc = calc or ModeCalculus(act.algebra)
    bound = 1 + star_weight(u)
    out = []
    for i in range(1, act.m + 1):
        th = build_theta(act, i)
        n = 0
        while n < bound:
            if calc.product(th, u, n):
                out.append((i, n))
            n += 1
    return out


def is_invariant(u: State, act: DiagonalAction, calc: ModeCalculus | None = None) -> bool:
    """True iff every ``theta^i`` commutes with ``u``."""
    return not invariance_defects(u, act, calc)


def generator_set(act: DiagonalAction) -> dict:
    """Named generators: ``phi^i``, per-factor ``L^j, W^j``, and ``omega_{+-l}``."""
    from .w3 import build_LS_WS

    out = {}
    for i, b in enumerate(phi_basis(act), 1):
        out[f"phi{i}"] = build_phi(act, b)
    for j in range(1, act.n + 1):
        L, W = build_LS_WS(act.algebra, j)
        out[f"L{j}"] = L
        out[f"W{j}"] = W
    for l in act.lattice():
        for sgn in (1, -1):
            v = tuple(sgn * x for x in l)
            out["omega(" + ",".join(map(str, v)) + ")"] = build_omega(act.algebra, v)
    return out


def lattice_contraction(l, lp):
    """Closed form ``(d, c)`` with ``omega_l o_d omega_l' = c omega_{l+l'}``.

    Per coordinate: ``d_j = min(|l_j|, |l'_j|)`` and ``e_j = max(...)`` when
    the signs are opposite (else both 0), ``k_j = d_j`` if ``l_j > 0`` (else
    0); then ``d = -1 + sum d_j`` and ``c = prod (-1)^{k_j} e_j!/(e_j - d_j)!``.
    """
    if len(l) != len(lp):
        raise ValueError("lattice vectors of different length")
    d = -1
    c = 1
    for a, b in zip(l, lp):
        if a * b < 0:
            dj, ej = min(abs(a), abs(b)), max(abs(a), abs(b))
        else:
            dj = ej = 0
        kj = dj if a > 0 else 0
        d += dj
        for t in range(ej - dj + 1, ej + 1):
            c *= t
        if kj & 1:
            c = -c
    return d, Scalar(c)


# -- graded commutant ------------------------------------------------------

def _factor_pool(alg: FreeAlgebra, w: Fraction):
    pool = []
    for g in range(alg.ngens):
        k = 0
        while alg.star_weight(g) + k <= w:
            pool.append((g, k))
            k += 1
    return sorted(pool)


def enumerate_monomials(alg: FreeAlgebra, w, charge=None, max_degree=None) -> list:
    """Canonical monomials of internal weight ``w`` (sorted).

    ``charge`` filters by total betagamma charge (int) or per-pair charge
    vector (sequence); ``max_degree`` bounds the number of factors.
    """
    w = Fraction(w)
    pool = _factor_pool(alg, w)
    out = []

    def rec(start, left, acc):
        if left == 0:
            out.append(tuple(acc))
            return
        if max_degree is not None and len(acc) >= max_degree:
            return
        for idx in range(start, len(pool)):
            f = pool[idx]
            fw = alg.star_weight(f[0]) + f[1]
            if fw > left:
                continue
            # odd factors may not repeat
            nxt = idx + 1 if alg.parity(f[0]) else idx
            acc.append(f)
            rec(nxt, left - fw, acc)
            acc.pop()

    rec(0, w, [])
    if charge is not None:
        out = [m for m in out if _charge_matches(alg, m, charge)]
    return sorted(out, key=lambda m: (len(m), m))


def _charge_vector(alg: FreeAlgebra, mono):
    n = alg.bg_pairs
    q = [0] * n
    for g, _ in mono:
        if g < n:
            q[g] -= 1
        elif g < 2 * n:
            q[g - n] += 1
    return tuple(q)


def _charge_matches(alg, mono, charge) -> bool:
    q = _charge_vector(alg, mono)
    if isinstance(charge, int):
        return sum(q) == charge
    return q == tuple(charge)


def _constraint_rows(act: DiagonalAction, monos, w, calc: ModeCalculus):
    """Rows of the linear map ``x -> (theta^i o_n sum x_k mono_k)_{i, n}``."""
    cols = {}
    images = []
    alg = act.algebra
    for mono in monos:
        u = State(alg, {mono: 1})
        img = {}
        for i in range(1, act.m + 1):
            th = build_theta(act, i)
            n = 0
            while n < w + 1:
                for m2, c in calc.product(th, u, n).items():
                    key = (i, n, m2)
                    img[key] = c
                    cols.setdefault(key, len(cols))
                n += 1
        images.append(img)
    rows = [[Scalar(0)] * len(monos) for _ in range(len(cols))]
    for k, img in enumerate(images):
        for key, c in img.items():
            rows[cols[key]][k] = c
    return rows


def _kernel_states(alg, monos, rows) -> list:
    kern = nullspace(rows, len(monos)) if rows else [
        [Scalar(int(i == j)) for i in range(len(monos))] for j in range(len(monos))
    ]
    if not kern:
        return []
    red, _ = rref(kern, len(monos))
    return [State(alg, {m: c for m, c in zip(monos, vec) if c}) for vec in red]


def graded_commutant_basis(act: DiagonalAction, w, charge=0, calc: ModeCalculus | None = None) -> list:
    """Basis (reduced echelon form) of the invariants of internal weight ``w``
    and the given charge."""
    w = Fraction(w)
    if w < 0 or (2 * w).denominator != 1:
        raise ValueError("weight must lie in (1/2)Z, w >= 0")
    calc = calc or ModeCalculus(act.algebra)
    monos = enumerate_monomials(act.algebra, w, charge)
    if not monos:
        return []
    return _kernel_states(act.algebra, monos, _constraint_rows(act, monos, w, calc))


def quantum_correct(act: DiagonalAction, power: int, calc: ModeCalculus | None = None) -> State:
    """Invariant ``:theta^N: + omega_N`` with ``omega_N`` of degree <= ``2N - 2``.

    The correction is searched in increasing degree bound; within the first
    solvable bound the reduced-echelon particular solution (free variables
    set to zero) is returned.
    """
    if act.n != 1 or act.m != 1 or act.row(1)[0] != 1:
        raise ValueError("quantum corrections are defined for n = 1 with rho = (1)")
    if power < 2:
        raise ValueError("power must be at least 2")
    alg = act.algebra
    calc = calc or ModeCalculus(alg)
    th = build_theta(act, 1)
    lead = wick_power(th, power, calc)
    # target rows: theta o_n lead, to be cancelled
    for D in range(0, 2 * power - 1):
        monos = [m for m in enumerate_monomials(alg, power, 0, max_degree=D) if len(m) <= D]
        cols, images = {}, []
        for mono in [None] + monos:
            u = lead if mono is None else State(alg, {mono: 1})
            img = {}
            for n in range(power + 1):
                for m2, c in calc.product(th, u, n).items():
                    img[n, m2] = c
                    cols.setdefault((n, m2), len(cols))
            images.append(img)
        # augmented system [M | -b]; solve via homogeneous kernel with last coord 1
        ncol = len(monos) + 1
        rows = [[Scalar(0)] * ncol for _ in range(len(cols))]
        for k, img in enumerate(images):
            col = ncol - 1 if k == 0 else k - 1
            for key, c in img.items():
                rows[cols[key]][col] = c
        if not cols:
            return lead
        red, piv = rref(rows, ncol)
        if ncol - 1 in piv:
            continue
        sol = [Scalar(0)] * len(monos)
        for r, pc in zip(red, piv):
            sol[pc] = -r[ncol - 1]
        corr = State(alg, {m: c for m, c in zip(monos, sol) if c})
        return lead + corr
    raise RuntimeError(f"no quantum correction found for power {power}")


def extract_unit(u: State, act: DiagonalAction | None = None, calc: ModeCalculus | None = None):
    """Recover the vacuum from ``u = sum_l c_l omega_l``.

    Picks ``l`` of maximal degree ``d = sum |l_j|`` (ties: lexicographically
    largest ``l``) and returns ``(l, d, c)`` with
    ``c * (omega_{-l} o_{d-1} u) = 1``. With ``act`` given, every ``l`` must
    lie in the invariant lattice.
    """
    if not u:
        raise ValueError("cannot extract a unit from the zero state")
    alg = u.algebra
    comps = {}
    for mono, c in u.items():
        l = omega_exponent(alg, mono)
        if l is None:
            raise ValueError("state is not a combination of lattice monomials omega_l")
        if act is not None and not act.in_lattice(l):
            raise ValueError(f"omega_{l} is not invariant under the action")
        comps[l] = c
    d = max(sum(map(abs, l)) for l in comps)
    l = max(lv for lv in comps if sum(map(abs, lv)) == d)
    calc = calc or ModeCalculus(alg)
    res = calc.product(build_omega(alg, tuple(-x for x in l)), u, d - 1)
    if not res.is_scalar() or not res:
        raise RuntimeError("contraction did not produce a nonzero multiple of the vacuum")
    c = 1 / res.scalar_part()
    return l, d, c


def bprime_central_charge(act: DiagonalAction, lam=None):
    """``-2n + sum_i (1 + 12 lambda_i^2 q_i)`` with ``q_i = <b^i, b^i>``."""
    basis = phi_basis(act)
    lam = [as_scalar(x) for x in (lam or [0] * len(basis))]
    c = as_scalar(-2 * act.n)
    for b, lm in zip(basis, lam):
        c = c + 1 + 12 * lm * lm * dot(b, b)
    return c


def bprime_generator_checks(act: DiagonalAction, lam=None, calc: ModeCalculus | None = None) -> list:
    """``(name, weight, defects)`` for the generators ``phi^i, L^j, W^j`` under
    the B' conformal vector.

    ``phi^i`` (weight 1) and ``W^j`` (weight 3) are tested as primaries.
    ``L^j`` is itself a Virasoro field (``L o_3 L^j = -1``), so it is tested
    as a quasi-primary of weight 2.
    """
    from .w3 import build_LS_WS

    calc = calc or ModeCalculus(act.algebra)
    L = conformal_b_prime(act, lam, calc)
    out = []
    for i, b in enumerate(phi_basis(act), 1):
        out.append((f"phi{i}", 1, primary_defects(L, build_phi(act, b), 1, calc)))
    for j in range(1, act.n + 1):
        Lj, Wj = build_LS_WS(act.algebra, j)
        out.append((f"L{j}", 2, primary_defects(L, Lj, 2, calc, quasi=True)))
        out.append((f"W{j}", 3, primary_defects(L, Wj, 3, calc)))
    return out


def conformal_b_prime(act: DiagonalAction, lam=None, calc: ModeCalculus | None = None) -> State:
    """``sum_j L^j + sum_i (-(1/(2 q_i)) :phi^i phi^i: + lambda_i d(phi^i))``."""
    from .w3 import build_LS_WS

    basis = phi_basis(act)
    lam = [as_scalar(x) for x in (lam or [0] * len(basis))]
    if len(lam) != len(basis):
        raise ValueError(f"lambda needs {len(basis)} entries, got {len(lam)}")
    calc = calc or ModeCalculus(act.algebra)
    out = State(act.algebra)
    for j in range(1, act.n + 1):
        out = out + build_LS_WS(act.algebra, j)[0]
    for b, lm in zip(basis, lam):
        q = dot(b, b)
        if not q:
            raise ValueError("degenerate kernel vector with <b, b> = 0")
        phi = build_phi(act, b)
        out = out + (-1 / (2 * q)) * wick(phi, phi, calc) + lm * derive(phi)
    return out
