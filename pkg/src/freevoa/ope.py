"""n-th products of free-field states by mode calculus.

For a state ``u = a(p) w`` (``p < 0``) the field modes satisfy the iterate
formula

    (a(p) w)(n) = sum_j (-1)^j C(p, j) [ a(p-j) w(n+j)
                                          - (-1)^p (-1)^{|a||w|} w(p+n-j) a(j) ]

which peels one creation mode off ``u`` at a time. Annihilation modes acting
on a mode word contract against single factors, since every generator
contraction is a multiple of the vacuum. Both sums are finite on a fixed
vector because of the internal weight grading (1/2 on beta, gamma, b, c and
1 on Heisenberg fields): a vector of negative weight is zero.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .algebra import AlgebraMismatch, FreeAlgebra
from .scalar import as_scalar, binom
from .state import State, derive, mono_parity, mono_star_weight

__all__ = [
    "ModeCalculus",
    "circle",
    "wick",
    "ope_singular",
    "commutes",
    "verify_virasoro",
    "primary_defects",
    "virasoro_defects",
    "star_weight",
    "wick_power",
]


def _acc(out: dict, key, val):
    v = out.get(key)
    v = val if v is None else v + val
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def _int_coeffs(terms: dict) -> dict:
    """Integral Scalars as ints, which multiply much faster."""
    out = {}
    for m, c in terms.items():
        if not c.irr and c.rat.denominator == 1:
            c = int(c.rat)
        out[m] = c
    return out


class ModeCalculus:
    """Evaluates modes of states on mode words of one algebra.

    Results are memoized on the instance only; create one per computation
    (or share one across a batch of related products for speed).
    """

    def __init__(self, algebra: FreeAlgebra):
        self.alg = algebra
        self._act = {}
        self._ann = {}
        self._wt = {}
        self._odd = [algebra.parity(i) for i in range(algebra.ngens)]
        # doubled internal weights keep the truncation tests in integers
        self._w2 = [int(2 * algebra.star_weight(i)) for i in range(algebra.ngens)]
        # integral contraction values as ints: Scalar arithmetic is the hot path
        self._contr = {}
        for key, c in algebra.contraction_table.items():
            c = as_scalar(c)
            self._contr[key] = int(c.rat) if not c.irr and c.rat.denominator == 1 else c

        self._block = self._contraction_blocks()
        self._binom = {}

    def _contraction_blocks(self) -> list:
        """Generator classes of the equivalence generated by nonzero contractions."""
        parent = list(range(self.alg.ngens))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (i, j, _), c in self.alg.contraction_table.items():
            if c:
                parent[find(i)] = find(j)
        return [find(i) for i in range(self.alg.ngens)]

    def _sbinom(self, p: int, j: int) -> int:
        """``(-1)^j C(p, j)``."""
        key = (p, j)
        v = self._binom.get(key)
        if v is None:
            v = binom(p, j)
            v = -v if j & 1 else v
            self._binom[key] = v
        return v

    def _split(self, word, blk):
        """``(sign, in_block, rest)`` with the Koszul sign of the reordering."""
        odd = self._odd
        inside, rest = [], []
        sign = 1
        odd_rest = 0
        for f in word:
            if self._block[f[0]] == blk:
                if odd[f[0]] and odd_rest & 1:
                    sign = -sign
                inside.append(f)
            else:
                if odd[f[0]]:
                    odd_rest += 1
                rest.append(f)
        return sign, tuple(inside), tuple(rest)

    def _merge(self, w1, w2):
        """Sorted word of ``w1 w2`` (disjoint generator blocks) and its sign."""
        if not w1 or not w2:
            return 1, w1 + w2
        odd = self._odd
        out = sorted(w1 + w2)
        sign = 1
        odd_w2 = 0
        # count odd factors of w2 that must pass odd factors of w1
        i = j = 0
        while i < len(w1) or j < len(w2):
            if j < len(w2) and (i >= len(w1) or w2[j] < w1[i]):
                if odd[w2[j][0]]:
                    odd_w2 += 1
                j += 1
            else:
                if odd[w1[i][0]] and odd_w2 & 1:
                    sign = -sign
                i += 1
        return sign, tuple(out)

    def _act_blocks(self, uword, n: int, vword):
        """Tensor-product rule across generator blocks without cross contractions:
        ``(a b)(n)(c d) = (-1)^{|b||c|} sum_i a(i)c * b(n-1-i)d``. Returns None
        when every factor lies in one block."""
        blk = self._block[uword[0][0]]
        if all(self._block[g] == blk for g, _ in uword) and all(self._block[g] == blk for g, _ in vword):
            return None
        su, u1, u2 = self._split(uword, blk)
        sv, v1, v2 = self._split(vword, blk)
        odd = self._odd
        if sum(odd[g] for g, _ in u2) & 1 and sum(odd[g] for g, _ in v1) & 1:
            su = -su
        W1 = self.weight2(u1) + self.weight2(v1)
        W2 = self.weight2(u2) + self.weight2(v2)
        hi = (W1 - 2) // 2
        lo = n - 1 - (W2 - 2) // 2
        out: dict = {}
        for i in range(lo, hi + 1):
            left = self.act(u1, i, v1)
            if not left:
                continue
            right = self.act(u2, n - 1 - i, v2)
            for w1, c1 in left.items():
                for w2, c2 in right.items():
                    s, w = self._merge(w1, w2)
                    _acc(out, w, su * sv * s * c1 * c2)
        return out

    def weight2(self, word) -> int:
        """Twice the internal weight of a mode word."""
        w = self._wt.get(word)
        if w is None:
            w2 = self._w2
            w = sum(w2[g] + 2 * k for g, k in word)
            self._wt[word] = w
        return w

    def create(self, factor, word):
        """``a(-k-1)`` applied to ``word``; returns ``(sign, word)`` or ``(0, None)``."""
        g = factor[0]
        pos = 0
        odd_before = 0
        odd = self._odd
        for f in word:
            if f > factor:
                break
            if f == factor and odd[g]:
                return 0, None
            if odd[f[0]]:
                odd_before += 1
            pos += 1
        sign = -1 if (odd[g] and odd_before & 1) else 1
        return sign, word[:pos] + (factor,) + word[pos:]

    def annihilate(self, g: int, m: int, word) -> dict:
        """``a_g(m)`` with ``m >= 0`` applied to a mode word."""
        key = (g, m, word)
        hit = self._ann.get(key)
        if hit is not None:
            return hit
        out: dict = {}
        odd = self._odd
        odd_before = 0
        prev = None
        for i, (h, k) in enumerate(word):
            if (h, k) != prev:
                # [a(m), b(-k-1)] = C(m, k) * (a o_{m-k} b)
                if m >= k:
                    c = self._contr.get((g, h, m - k), 0)
                    if c:
                        coeff = math.comb(m, k) * c
                        if odd[g] and odd_before & 1:
                            coeff = -coeff
                        _acc(out, word[:i] + word[i + 1:], coeff)
                        # repeated even factors each contribute the same term
                        mult = 1
                        while i + mult < len(word) and word[i + mult] == (h, k):
                            mult += 1
                        if mult > 1 and not odd[h]:
                            _acc(out, word[:i] + word[i + 1:], coeff * (mult - 1))
                prev = (h, k)
            if odd[h]:
                odd_before += 1
        self._ann[key] = out
        return out

    def act(self, uword, n: int, vword) -> dict:
        """Mode-basis expansion of ``u(n) v`` for mode words ``u`` and ``v``."""
        key = (uword, n, vword)
        hit = self._act.get(key)
        if hit is not None:
            return hit
        out: dict = {}
        if not uword:
            if n == -1:
                out[vword] = 1
            self._act[key] = out
            return out
        wv = self.weight2(vword)
        if self.weight2(uword) + wv - 2 * n - 2 < 0:
            self._act[key] = out
            return out
        split = self._act_blocks(uword, n, vword)
        if split is not None:
            self._act[key] = split
            return split
        (g, k), w = uword[0], uword[1:]
        p = -k - 1
        ww = self.weight2(w)
        odd_a = self._odd[g]
        eps = -1 if (odd_a and mono_parity(self.alg, w)) else 1

        # a(p - j) w(n + j) v
        j = 0
        while ww + wv - 2 * (n + j) - 2 >= 0:
            cj = self._sbinom(p, j)
            if cj:
                for word, c in self.act(w, n + j, vword).items():
                    sign, new = self.create((g, k + j), word)
                    if sign:
                        _acc(out, new, sign * cj * c)
            j += 1

        # -(-1)^p eps w(p + n - j) a(j) v
        pref = (1 if p & 1 else -1) * eps
        wa = self._w2[g]
        j = 0
        while wa + wv - 2 * j - 2 >= 0:
            cj = pref * self._sbinom(p, j)
            if cj:
                for word, c in self.annihilate(g, j, vword).items():
                    for word2, c2 in self.act(w, p + n - j, word).items():
                        _acc(out, word2, cj * c * c2)
            j += 1
        self._act[key] = out
        return out

    def product(self, u: State, v: State, n: int) -> State:
        if u.algebra != self.alg or v.algebra != self.alg:
            raise AlgebraMismatch("states belong to different algebras")
        out: dict = {}
        vm = _int_coeffs(v.mode_terms())
        for uw, uc in _int_coeffs(u.mode_terms()).items():
            for vw, vc in vm.items():
                coeff = uc * vc
                for word, c in self.act(uw, n, vw).items():
                    _acc(out, word, coeff * c)
        return State.from_mode_terms(self.alg, out)


def _same(u: State, v: State):
    if not isinstance(u, State) or not isinstance(v, State):
        raise TypeError("circle products take States")
    if u.algebra != v.algebra:
        raise AlgebraMismatch("states belong to different algebras")


def circle(u: State, v: State, n: int, calc: ModeCalculus | None = None) -> State:
    """The n-th product ``u o_n v`` for any integer ``n``."""
    _same(u, v)
    calc = calc or ModeCalculus(u.algebra)
    return calc.product(u, v, int(n))


def wick(u: State, v: State, calc: ModeCalculus | None = None) -> State:
    """Normally ordered product ``:uv: = u o_{-1} v``."""
    return circle(u, v, -1, calc)


def wick_power(u: State, k: int, calc: ModeCalculus | None = None) -> State:
    """Right-nested ``:u u ... u:`` with ``k`` factors (vacuum for ``k = 0``)."""
    calc = calc or ModeCalculus(u.algebra)
    out = State.vacuum(u.algebra)
    for _ in range(k):
        out = circle(u, out, -1, calc)
    return out


def star_weight(u: State) -> Fraction:
    """Largest internal weight among the monomials of ``u`` (0 for scalars)."""
    return max((mono_star_weight(u.algebra, m) for m in u), default=Fraction(0))


def _pole_bound(u: State, v: State) -> int:
    # u o_n v = 0 once n >= wt*(u) + wt*(v)
    return math.ceil(star_weight(u) + star_weight(v))


def ope_singular(u: State, v: State, calc: ModeCalculus | None = None) -> list:
    """Nonzero ``(n, u o_n v)`` for ``n >= 0`` in descending ``n``."""
    _same(u, v)
    calc = calc or ModeCalculus(u.algebra)
    out = []
    for n in range(_pole_bound(u, v) - 1, -1, -1):
        r = calc.product(u, v, n)
        if r:
            out.append((n, r))
    return out


def commutes(u: State, v: State, calc: ModeCalculus | None = None) -> bool:
    """True iff ``u o_n v = 0`` for all ``0 <= n < wt*(u) + wt*(v)``."""
    return not ope_singular(u, v, calc)


def virasoro_defects(L: State, c, calc: ModeCalculus | None = None) -> list:
    """Human-readable list of failed Virasoro OPE coefficients (empty if none)."""
    calc = calc or ModeCalculus(L.algebra)
    c = as_scalar(c)
    vac = State.vacuum(L.algebra)
    expected = {0: derive(L), 1: 2 * L, 2: State(L.algebra), 3: (c / 2) * vac}
    bad = []
    for n in range(0, max(4, _pole_bound(L, L))):
        got = calc.product(L, L, n)
        want = expected.get(n, State(L.algebra))
        if got != want:
            bad.append(f"L o_{n} L = {got}, expected {want}")
    return bad


def primary_defects(L: State, u: State, weight, calc: ModeCalculus | None = None,
                    quasi: bool = False) -> list:
    """Failed conditions for ``u`` to be primary of the given weight under ``L``.

    Primary: ``L o_0 u = du``, ``L o_1 u = weight u`` and ``L o_n u = 0`` for
    ``n >= 2``. With ``quasi=True`` only ``n = 2`` is required to vanish above
    ``n = 1``.
    """
    _same(L, u)
    calc = calc or ModeCalculus(L.algebra)
    weight = as_scalar(weight)
    expected = {0: derive(u), 1: weight * u}
    top = 3 if quasi else max(3, _pole_bound(L, u))
    bad = []
    for n in range(top):
        got = calc.product(L, u, n)
        want = expected.get(n, State(L.algebra))
        if got != want:
            bad.append(f"L o_{n} u = {got}, expected {want}")
    return bad


def verify_virasoro(L: State, c, calc: ModeCalculus | None = None) -> bool:
    """Check the Virasoro OPE of ``L`` with central charge ``c``."""
    return not virasoro_defects(L, c, calc)
