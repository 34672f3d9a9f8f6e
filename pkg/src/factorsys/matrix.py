"""Dense matrices over a ring handle, with the two block Kronecker products.

Index conventions (fixed for the whole library):

* ``kron_right(A, B)`` (written ``A |> B``): block ``(k, l)`` is ``A * b_kl``.
  Row ``k * A.rows + i`` holds block row ``k`` (from ``B``) and row ``i`` of ``A``.
* ``kron_left(A, B)`` (written ``A <| B``): block ``(i, j)`` is ``a_ij * B``.
  Row ``i * B.rows + k``.
* ``block_apply(A, f)`` replaces each entry ``a_ij`` by the square block
  ``f(a_ij)``, A-major, matching ``kron_left`` layout.

With these choices ``x_g |> x_h`` is indexed by ``(h-index, g-index)`` and the
same ordering is produced by ``alpha_g`` applied blockwise to an
``n_h``-indexed matrix, so all factor-system identities type check.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .errors import DimensionMismatch
from .rings import Ring
from .scalars import is_scalar


class RingMatrix:
    __slots__ = ("ring", "rows", "cols", "entries", "_hash")

    def __init__(self, ring: Ring, entries: Sequence[Sequence]):
        rows = tuple(tuple(ring.coerce(x) for x in r) for r in entries)
        if not rows or not rows[0]:
            raise DimensionMismatch("matrices must be at least 1x1")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("ragged matrix")
        self.ring = ring
        self.entries = rows
        self.rows = len(rows)
        self.cols = width
        self._hash = None

    # constructors ---------------------------------------------------------------
    @classmethod
    def _raw(cls, ring, rows):
        m = cls.__new__(cls)
        m.ring = ring
        m.entries = rows
        m.rows = len(rows)
        m.cols = len(rows[0])
        m._hash = None
        return m

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "RingMatrix":
        z, o = ring.zero(), ring.one()
        return cls._raw(ring, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, ring: Ring, n: int, m: int) -> "RingMatrix":
        z = ring.zero()
        return cls._raw(ring, tuple(tuple(z for _ in range(m)) for _ in range(n)))

    @classmethod
    def column(cls, ring: Ring, items) -> "RingMatrix":
        return cls(ring, [[x] for x in items])

    @classmethod
    def row(cls, ring: Ring, items) -> "RingMatrix":
        return cls(ring, [list(items)])

    @classmethod
    def scalar_matrix(cls, ring: Ring, x) -> "RingMatrix":
        return cls(ring, [[x]])

    @classmethod
    def unit_row(cls, ring: Ring, n: int, i: int) -> "RingMatrix":
        z, o = ring.zero(), ring.one()
        return cls._raw(ring, (tuple(o if j == i else z for j in range(n)),))

    # shape helpers --------------------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column_entries(self) -> list:
        if self.cols != 1:
            raise DimensionMismatch("not a column")
        return [r[0] for r in self.entries]

    def row_entries(self) -> list:
        if self.rows != 1:
            raise DimensionMismatch("not a row")
        return list(self.entries[0])

    def flat(self) -> list:
        return [x for r in self.entries for x in r]

    def scalar_value(self):
        if self.shape != (1, 1):
            raise DimensionMismatch("not 1x1")
        return self.entries[0][0]

    def block(self, r0, c0, nr, nc) -> "RingMatrix":
        return RingMatrix._raw(self.ring, tuple(tuple(r[c0:c0 + nc]) for r in self.entries[r0:r0 + nr]))

    # arithmetic -------------------------------------------------------------------
    def _check_same(self, other):
        if not isinstance(other, RingMatrix):
            raise TypeError("expected RingMatrix")
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape}")

    def __add__(self, other):
        self._check_same(other)
        return RingMatrix._raw(self.ring, tuple(tuple(a + b for a, b in zip(r, s))
                                                for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other):
        self._check_same(other)
        return RingMatrix._raw(self.ring, tuple(tuple(a - b for a, b in zip(r, s))
                                                for r, s in zip(self.entries, other.entries)))

    def __neg__(self):
        return RingMatrix._raw(self.ring, tuple(tuple(-a for a in r) for r in self.entries))

    def __mul__(self, other):
        if is_scalar(other):
            return RingMatrix._raw(self.ring, tuple(tuple(a * other for a in r) for r in self.entries))
        if not isinstance(other, RingMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        ring = self.ring
        cols = list(zip(*other.entries))
        out = []
        for r in self.entries:
            row = []
            for c in cols:
                row.append(ring.sum(a * b for a, b in zip(r, c) if a and b))
            out.append(tuple(row))
        return RingMatrix._raw(ring, tuple(out))

    def __rmul__(self, other):
        if is_scalar(other):
            return self * other
        return NotImplemented

    def left_scale(self, x) -> "RingMatrix":
        """Multiply every entry on the left by the ring element ``x``."""
        return RingMatrix._raw(self.ring, tuple(tuple(x * a for a in r) for r in self.entries))

    def right_scale(self, x) -> "RingMatrix":
        return RingMatrix._raw(self.ring, tuple(tuple(a * x for a in r) for r in self.entries))

    def transpose(self) -> "RingMatrix":
        return RingMatrix._raw(self.ring, tuple(zip(*self.entries)))

    @property
    def T(self):
        return self.transpose()

    def dagger(self) -> "RingMatrix":
        star = self.ring.star
        return RingMatrix._raw(self.ring, tuple(tuple(star(a) for a in c) for c in zip(*self.entries)))

    def map(self, f: Callable, ring: Ring | None = None) -> "RingMatrix":
        ring = ring or self.ring
        return RingMatrix._raw(ring, tuple(tuple(f(a) for a in r) for r in self.entries))

    def commutator(self, other) -> "RingMatrix":
        return self * other - other * self

    def is_zero(self) -> bool:
        return not any(a for r in self.entries for a in r)

    # equality -------------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.entries)
        return self._hash

    def __repr__(self):
        body = "; ".join(", ".join(str(a) for a in r) for r in self.entries)
        return f"[{body}]"


def kron_right(A: RingMatrix, B: RingMatrix) -> RingMatrix:
    """``A |> B``: block ``(k, l)`` equals ``A * b_kl`` (B-major flattening)."""
    out = []
    for brow in B.entries:
        for arow in A.entries:
            out.append(tuple(a * b for b in brow for a in arow))
    return RingMatrix._raw(A.ring, tuple(out))


def kron_left(A: RingMatrix, B: RingMatrix) -> RingMatrix:
    """``A <| B``: block ``(i, j)`` equals ``a_ij * B`` (A-major flattening)."""
    out = []
    for arow in A.entries:
        for brow in B.entries:
            out.append(tuple(a * b for a in arow for b in brow))
    return RingMatrix._raw(A.ring, tuple(out))


def block_apply(A: RingMatrix, f: Callable, size: int, ring: Ring | None = None) -> RingMatrix:
    """Replace each entry by the ``size x size`` block ``f(entry)`` (A-major)."""
    ring = ring or A.ring
    out = []
    for arow in A.entries:
        blocks = [f(a).entries for a in arow]
        for i in range(size):
            out.append(tuple(x for blk in blocks for x in blk[i]))
    return RingMatrix._raw(ring, tuple(out))


def hstack(mats: Sequence[RingMatrix]) -> RingMatrix:
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise DimensionMismatch("hstack row mismatch")
    return RingMatrix._raw(mats[0].ring, tuple(tuple(x for m in mats for x in m.entries[i]) for i in range(rows)))


def vstack(mats: Sequence[RingMatrix]) -> RingMatrix:
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise DimensionMismatch("vstack column mismatch")
    return RingMatrix._raw(mats[0].ring, tuple(r for m in mats for r in m.entries))


def encode_matrix(M: RingMatrix) -> list:
    return [[M.ring.encode(a) for a in r] for r in M.entries]


def decode_matrix(ring: Ring, obj) -> RingMatrix:
    return RingMatrix(ring, [[ring.decode(a) for a in r] for r in obj])
