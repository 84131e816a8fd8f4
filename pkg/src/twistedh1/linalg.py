"""Dense linear algebra over the scalar modes.

Exact modes eliminate with a fraction-free cross-multiplication step
(divisions are by the previous pivot and stay exact); approx mode uses
partial pivoting and treats entries within the mode tolerance of zero as
zero, emitting a :class:`ConditioningWarning` when a pivot survives the
zero test but is within a factor of 1000 of it.

Kernels are right null spaces read off the reduced row echelon form: one
basis vector per free column, carrying 1 in that column.

Eigenvalue extraction for integer matrices keeps k = 1, 2 exact (rational
or quadratic irrational via the discriminant) and isolates real roots of
the characteristic polynomial with Sturm sequences for 3 <= k <= 8,
refining by bisection to a requested width.  Only positive real
eigenvalues are returned, each exactly once, in increasing order.
"""

from __future__ import annotations

import math
import warnings
from fractions import Fraction

from .scalars import (
    ApproxMode,
    DEFAULT_EPS,
    Mode,
    QuadraticElement,
    RationalMode,
    squarefree_decomposition,
)


class ConditioningWarning(UserWarning):
    """A numeric computation passed close to its zero tolerance."""


class Matrix:
    """A dense matrix with entries coerced into one scalar mode."""

    __slots__ = ("mode", "rows", "cols", "entries")

    def __init__(self, mode: Mode, entries, cols: int | None = None):
        self.mode = mode
        coerced = tuple(tuple(mode.coerce(x) for x in row) for row in entries)
        self.rows = len(coerced)
        if self.rows:
            widths = {len(r) for r in coerced}
            if len(widths) != 1:
                raise ValueError("ragged rows")
            (width,) = widths
            if cols is not None and cols != width:
                raise ValueError(f"cols={cols} does not match row width {width}")
            self.cols = width
        else:
            if cols is None:
                raise ValueError("a matrix with no rows needs an explicit column count")
            self.cols = cols
        self.entries = coerced

    @classmethod
    def identity(cls, mode: Mode, n: int) -> "Matrix":
        one, zero = mode.one(), mode.zero()
        return cls(mode, [[one if i == j else zero for j in range(n)] for i in range(n)])

    def entry(self, i: int, j: int):
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def transpose(self) -> "Matrix":
        return Matrix(self.mode,
                      [[self.entries[i][j] for i in range(self.rows)]
                       for j in range(self.cols)],
                      cols=self.rows)

    def times_vector(self, v) -> tuple:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        vv = [self.mode.coerce(x) for x in v]
        out = []
        for row in self.entries:
            acc = self.mode.zero()
            for a, x in zip(row, vv):
                acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def __repr__(self):
        return f"Matrix({self.mode!r}, {self.rows}x{self.cols})"


def _forward_eliminate(m: Matrix):
    """Row echelon form; returns (mutable rows, pivot (row, col) list)."""
    mode = m.mode
    rows = [list(r) for r in m.entries]
    pivots: list[tuple[int, int]] = []
    approx = isinstance(mode, ApproxMode)
    pr = 0
    prev = mode.one()
    for pc in range(m.cols):
        if pr >= m.rows:
            break
        if approx:
            best = max(range(pr, m.rows), key=lambda i: abs(rows[i][pc]))
            if mode.is_zero(rows[best][pc]):
                continue
            if abs(rows[best][pc]) <= 1000 * mode.eps:
                warnings.warn(
                    f"pivot {rows[best][pc]!r} is within 1000x of the zero "
                    f"tolerance {mode.eps!r}; ranks may be unreliable",
                    ConditioningWarning, stacklevel=3)
            pivot_row = best
        else:
            pivot_row = next(
                (i for i in range(pr, m.rows) if not mode.is_zero(rows[i][pc])), None)
            if pivot_row is None:
                continue
        rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
        piv = rows[pr][pc]
        for i in range(pr + 1, m.rows):
            if approx:
                f = rows[i][pc] / piv
                rows[i][pc] = 0.0
                for j in range(pc + 1, m.cols):
                    rows[i][j] = rows[i][j] - f * rows[pr][j]
            else:
                f = rows[i][pc]
                for j in range(pc, m.cols):
                    rows[i][j] = (piv * rows[i][j] - f * rows[pr][j]) / prev
        if not approx:
            prev = piv
        pivots.append((pr, pc))
        pr += 1
    return rows, pivots


def rank(m: Matrix) -> int:
    return len(_forward_eliminate(m)[1])


def rank_over_rationals(int_rows, cols: int | None = None) -> int:
    """Rank of an integer matrix, computed exactly."""
    return rank(Matrix(RationalMode(), int_rows, cols=cols))


def rref(m: Matrix):
    """Reduced row echelon form; returns (rows, pivot (row, col) list)."""
    rows, pivots = _forward_eliminate(m)
    for pr, pc in reversed(pivots):
        piv = rows[pr][pc]
        rows[pr] = [x / piv for x in rows[pr]]
        for i in range(pr):
            f = rows[i][pc]
            rows[i] = [a - f * b for a, b in zip(rows[i], rows[pr])]
    return rows, pivots


def kernel_basis(m: Matrix) -> list[tuple]:
    """A basis of { v : m v = 0 }, one vector per free column."""
    rows, pivots = rref(m)
    mode = m.mode
    pivot_cols = {pc for _, pc in pivots}
    basis = []
    for fc in range(m.cols):
        if fc in pivot_cols:
            continue
        v = [mode.zero()] * m.cols
        v[fc] = mode.one()
        for pr, pc in pivots:
            v[pc] = -rows[pr][fc]
        basis.append(tuple(v))
    return basis


def charpoly(int_matrix) -> list[int]:
    """Coefficients of det(s I - N), constant term first, leading 1 last.

    Faddeev-LeVerrier over exact rationals; the result is integral for an
    integer matrix.
    """
    n = len(int_matrix)
    a = [[Fraction(x) for x in row] for row in int_matrix]
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    coeffs = [Fraction(1)]  # leading first while iterating
    m = [[Fraction(i == j) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        m = [[sum(a[i][t] * m[t][j] for t in range(n)) for j in range(n)]
             for i in range(n)]
        ck = -sum(m[i][i] for i in range(n)) / k
        coeffs.append(ck)
        for i in range(n):
            m[i][i] += ck
    out = []
    for c in reversed(coeffs):
        if c.denominator != 1:
            raise AssertionError("characteristic polynomial must be integral")
        out.append(c.numerator)
    return out


# -- polynomial helpers over Fraction coefficients, constant term first --

def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p

def _poly_degree(p) -> int:
    return len(p) - 1

def _poly_eval(p, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc

def _poly_deriv(p):
    return [i * c for i, c in enumerate(p)][1:]

def _poly_divmod(num, den):
    num = list(num)
    q = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    inv_lead = 1 / den[-1]
    for i in range(len(num) - len(den), -1, -1):
        f = num[i + len(den) - 1] * inv_lead
        q[i] = f
        for j, c in enumerate(den):
            num[i + j] -= f * c
    return q, _poly_trim(num)

def _poly_monic(p):
    lead = p[-1]
    return [c / lead for c in p]

def _poly_gcd(a, b):
    a, b = list(a), list(b)
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, _poly_trim(r)
    return _poly_monic(a)

def _squarefree_part(p):
    g = _poly_gcd(p, _poly_deriv(p))
    if _poly_degree(g) == 0:
        return list(p)
    q, r = _poly_divmod(p, g)
    assert not r
    return q

def _sturm_chain(p):
    chain = [list(p), _poly_deriv(p)]
    while _poly_degree(chain[-1]) > 0:
        _, r = _poly_divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return chain

def _variations(chain, x: Fraction) -> int:
    signs = []
    for p in chain:
        v = _poly_eval(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)

def _roots_in(chain, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots in the half-open interval (lo, hi]."""
    return _variations(chain, lo) - _variations(chain, hi)

def _cauchy_bound(p) -> Fraction:
    lead = p[-1]
    return 1 + max(abs(c / lead) for c in p[:-1]) if len(p) > 1 else Fraction(1)

def _isolate(chain, lo: Fraction, hi: Fraction):
    count = _roots_in(chain, lo, hi)
    if count == 0:
        return []
    if count == 1:
        return [(lo, hi)]
    mid = (lo + hi) / 2
    return _isolate(chain, lo, mid) + _isolate(chain, mid, hi)

def _refine(poly, chain, lo: Fraction, hi: Fraction, width: Fraction) -> float:
    while hi - lo > width:
        mid = (lo + hi) / 2
        if _poly_eval(poly, mid) == 0:
            return float(mid)
        if _roots_in(chain, lo, mid) == 1:
            hi = mid
        else:
            lo = mid
    return float((lo + hi) / 2)


EIGENVALUE_SIZE_CAP = 8


def positive_real_eigenvalues(int_matrix, eps: float = DEFAULT_EPS) -> list:
    """Distinct positive real eigenvalues of a small integer matrix.

    k = 1 and k = 2 are exact (Fractions, or QuadraticElements over the
    squarefree part of the discriminant); 3 <= k <= 8 returns floats with
    each root bracketed to width eps by Sturm bisection.  Values come back
    strictly increasing.
    """
    k = len(int_matrix)
    if any(len(row) != k for row in int_matrix):
        raise ValueError("matrix is not square")
    if k > EIGENVALUE_SIZE_CAP:
        raise ValueError(
            f"eigenvalue extraction is capped at size {EIGENVALUE_SIZE_CAP}, got {k}")
    if k == 0:
        return []
    if k == 1:
        v = Fraction(int_matrix[0][0])
        return [v] if v > 0 else []
    if k == 2:
        tr = int_matrix[0][0] + int_matrix[1][1]
        det = int_matrix[0][0] * int_matrix[1][1] - int_matrix[0][1] * int_matrix[1][0]
        disc = tr * tr - 4 * det
        if disc < 0:
            return []
        if disc == 0:
            r = Fraction(tr, 2)
            return [r] if r > 0 else []
        s = math.isqrt(disc)
        if s * s == disc:
            roots = [Fraction(tr - s, 2), Fraction(tr + s, 2)]
            return [r for r in roots if r > 0]
        d, f = squarefree_decomposition(disc)
        half = Fraction(1, 2)
        roots = [QuadraticElement(tr * half, -f * half, d),
                 QuadraticElement(tr * half, f * half, d)]
        return [r for r in roots if r.sign() > 0]

    poly = [Fraction(c) for c in charpoly(int_matrix)]
    while poly and poly[0] == 0:  # roots at zero are not positive
        poly.pop(0)
    if _poly_degree(poly) == 0:
        return []
    sf = _squarefree_part(poly)
    chain = _sturm_chain(sf)
    bound = _cauchy_bound(sf)
    width = Fraction(eps)
    out = []
    for lo, hi in _isolate(chain, Fraction(0), bound):
        out.append(_refine(sf, chain, lo, hi, width))
    return out
