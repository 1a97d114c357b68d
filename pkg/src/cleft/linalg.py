"""Determinants and linear solves over localized polynomial rings."""

from __future__ import annotations

from functools import lru_cache

from .errors import DeterminantZero, NoInverseFound, NotInvertible, ZeroElement
from .localized import Frac, LocalizedRing
from .polynomial import Poly, exact_divide


def bareiss_det(matrix) -> Poly:
    """Fraction-free Gaussian elimination; every division is exact."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    a = [list(row) for row in matrix]
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    sign = 1
    prev = None
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return a[k][k] * 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                val = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = val if prev is None else exact_divide(val, prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def laplace_det(matrix):
    """Cofactor expansion along rows, memoized on the remaining column set.

    Independent of the elimination routine above; works for any entries
    supporting ``+``, ``-`` and ``*``.
    """
    n = len(matrix)

    @lru_cache(maxsize=None)
    def minor(row, cols):
        if row == n:
            return None
        total = None
        for pos, c in enumerate(cols):
            entry = matrix[row][c]
            if entry == 0:
                continue
            rest = minor(row + 1, cols[:pos] + cols[pos + 1:])
            term = entry if rest is None else entry * rest
            if pos % 2:
                term = -term
            total = term if total is None else total + term
        return total if total is not None else matrix[row][cols[0]] * 0

    return minor(0, tuple(range(n)))


def frac_det(ring: LocalizedRing, matrix) -> Frac:
    """Determinant of a matrix of Fracs, by clearing row denominators."""
    rows = []
    scale = ring.one()
    for row in matrix:
        row = [ring.coerce(x) for x in row]
        exps = tuple(max(col) for col in zip(*(x.exps for x in row)))
        rows.append([x._lift(exps) for x in row])
        scale = scale * Frac(ring, ring.poly(1), exps)
    return ring.frac(bareiss_det(rows)) * scale


def _is_lower(matrix) -> bool:
    return all(matrix[i][j].is_zero() for i in range(len(matrix)) for j in range(i + 1, len(matrix)))


def _is_upper(matrix) -> bool:
    return all(matrix[i][j].is_zero() for i in range(len(matrix)) for j in range(i))


def is_triangular(matrix) -> bool:
    return _is_lower(matrix) or _is_upper(matrix)


def _invert(ring, x, kmax):
    try:
        return ring.invert(x, kmax)
    except (NoInverseFound, ZeroElement) as exc:
        raise NotInvertible(f"{x} is not invertible") from exc


def solve_linear(ring: LocalizedRing, matrix, rhs, kmax: int = 8):
    """Solve ``matrix * x = rhs``.  Triangular systems use substitution and
    only need the diagonal to be invertible; otherwise Cramer's rule."""
    n = len(matrix)
    m = [[ring.coerce(x) for x in row] for row in matrix]
    b = [ring.coerce(x) for x in rhs]
    if _is_lower(m):
        x = [None] * n
        for i in range(n):
            acc = b[i]
            for j in range(i):
                if not m[i][j].is_zero():
                    acc = acc - m[i][j] * x[j]
            x[i] = (acc * _invert(ring, m[i][i], kmax)).normalized()
        return x
    if _is_upper(m):
        x = [None] * n
        for i in reversed(range(n)):
            acc = b[i]
            for j in range(i + 1, n):
                if not m[i][j].is_zero():
                    acc = acc - m[i][j] * x[j]
            x[i] = (acc * _invert(ring, m[i][i], kmax)).normalized()
        return x
    det = frac_det(ring, m)
    if det.is_zero():
        raise DeterminantZero("singular system")
    inv = _invert(ring, det, kmax)
    out = []
    for j in range(n):
        mj = [row[:j] + [b[i]] + row[j + 1:] for i, row in enumerate(m)]
        out.append((frac_det(ring, mj) * inv).normalized())
    return out
