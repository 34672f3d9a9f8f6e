"""Exact linear algebra over the scalar field (rationals or Gaussian rationals).

Matrices are plain lists of row lists.  Only what the library needs is here:
row reduction, kernels, particular solutions and an inconsistency certificate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .scalars import Scalar, inverse


def rref(rows: Sequence[Sequence[Scalar]], ncols: Optional[int] = None):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = inverse(m[r][c])
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int) -> list[list[Scalar]]:
    """Basis of ``{x : A x = 0}`` for an ``len(rows) x ncols`` matrix."""
    red, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, piv):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar], ncols: int):
    """A particular solution of ``A x = b`` or ``None`` when inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = rref(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, piv):
        x[p] = row[ncols]
    return x


def left_certificate(rows, rhs, ncols):
    """Vector ``y`` with ``y A = 0`` and ``y b != 0`` proving ``A x = b`` unsolvable."""
    nrows = len(rows)
    transposed = [[rows[i][j] for i in range(nrows)] for j in range(ncols)]
    for y in nullspace(transposed, nrows):
        if sum((yi * bi for yi, bi in zip(y, rhs)), Fraction(0)):
            return y
    return None


def matvec(rows, x):
    return [sum((a * b for a, b in zip(r, x)), Fraction(0)) for r in rows]
