"""Dense linear algebra over GF(2).

Vectors are Python ints used as bit sets: bit ``j`` is coordinate ``j``.
A :class:`BitMatrix` stores one such int per row, so row operations are a
single XOR.  Everything here is exact and side-effect free.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotContained

__all__ = [
    "BitMatrix",
    "Subspace",
    "Quotient",
    "rank",
    "kernel",
    "image",
    "quotient_basis",
    "rref",
    "bits",
]


def bits(v: int) -> Iterable[int]:
    """Yield the indices of the set bits of ``v`` in increasing order."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def _reduce(pivots: dict[int, int], v: int) -> int:
    # pivots maps a pivot bit (as a power of two) to its row; rows are reduced
    # so that no row contains another row's pivot bit.
    x = v
    while x:
        low = x & -x
        row = pivots.get(low)
        if row is not None:
            v ^= row
            x = v & ~((low << 1) - 1)
        else:
            x ^= low
    return v


def _insert(pivots: dict[int, int], v: int) -> bool:
    """Add ``v`` to a reduced echelon family; return False if dependent."""
    v = _reduce(pivots, v)
    if not v:
        return False
    low = v & -v
    for key, row in pivots.items():
        if row & low:
            pivots[key] = row ^ v
    pivots[low] = v
    return True


def rref(vectors: Iterable[int]) -> tuple[int, ...]:
    """Reduced row-echelon basis of the span of ``vectors``.

    The pivot of a row is its lowest set bit; rows come sorted by pivot and
    every pivot column has exactly one nonzero entry.
    """
    pivots: dict[int, int] = {}
    for v in vectors:
        if v < 0:
            raise ValueError("bit vectors must be non-negative ints")
        _insert(pivots, v)
    return tuple(pivots[k] for k in sorted(pivots))


@dataclass(frozen=True)
class BitMatrix:
    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.nrows < 0 or self.ncols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.rows) != self.nrows:
            raise ValueError(f"expected {self.nrows} rows, got {len(self.rows)}")
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError(f"row {r:#b} does not fit in {self.ncols} columns")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> BitMatrix:
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], ncols: int | None = None) -> BitMatrix:
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        rows = []
        for row in entries:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            rows.append(sum(1 << j for j, e in enumerate(row) if e % 2))
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> BitMatrix:
        """Build from strings such as ``"1100"``; character ``j`` is column ``j``."""
        return cls.from_lists([[int(c) for c in s] for s in rows], len(rows[0]) if rows else 0)

    @classmethod
    def from_columns(cls, columns: Sequence[int], nrows: int) -> BitMatrix:
        rows = [0] * nrows
        for j, col in enumerate(columns):
            for i in bits(col):
                if i >= nrows:
                    raise ValueError(f"column {j} has an entry beyond row {nrows - 1}")
                rows[i] |= 1 << j
        return cls(nrows, len(columns), tuple(rows))

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def column(self, j: int) -> int:
        return sum(((r >> j) & 1) << i for i, r in enumerate(self.rows))

    def columns(self) -> list[int]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> BitMatrix:
        return BitMatrix(self.ncols, self.nrows, tuple(self.columns()))

    def apply(self, v: int) -> int:
        """Matrix times column vector ``v`` (a bit set over columns)."""
        out = 0
        for i, r in enumerate(self.rows):
            if (r & v).bit_count() & 1:
                out |= 1 << i
        return out

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        rows = []
        for r in self.rows:
            acc = 0
            for j in bits(r):
                acc ^= other.rows[j]
            rows.append(acc)
        return BitMatrix(self.nrows, other.ncols, tuple(rows))

    def is_zero(self) -> bool:
        return not any(self.rows)

    def __str__(self) -> str:
        return "\n".join("".join(str((r >> j) & 1) for j in range(self.ncols)) for r in self.rows)


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(2)^ambient_dim held by its reduced echelon basis."""

    ambient_dim: int
    basis: tuple[int, ...]

    def __post_init__(self) -> None:
        prev = 0
        pivmask = 0
        for b in self.basis:
            if b <= 0 or b.bit_length() > self.ambient_dim:
                raise ValueError("basis vectors must be nonzero and inside the ambient space")
            low = b & -b
            if low <= prev:
                raise ValueError("pivot columns must be strictly increasing")
            prev = low
            pivmask |= low
        for b in self.basis:
            if b & pivmask != b & -b:
                raise ValueError("basis must be in reduced row-echelon form")

    @classmethod
    def span(cls, vectors: Iterable[int], ambient_dim: int) -> Subspace:
        return cls(ambient_dim, rref(vectors))

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, tuple(1 << i for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple((b & -b).bit_length() - 1 for b in self.basis)

    def _pivot_map(self) -> dict[int, int]:
        return {b & -b: b for b in self.basis}

    def reduce(self, v: int) -> int:
        """Canonical representative of ``v`` modulo this subspace."""
        return _reduce(self._pivot_map(), v)

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def is_subspace_of(self, other: Subspace) -> bool:
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace.span(self.basis + other.basis, max(self.ambient_dim, other.ambient_dim))

    def as_matrix(self) -> BitMatrix:
        return BitMatrix(len(self.basis), self.ambient_dim, self.basis)


def rank(m: BitMatrix) -> int:
    return len(rref(m.rows))


def kernel(m: BitMatrix) -> Subspace:
    """Null space ``{v : m v = 0}`` inside GF(2)^cols."""
    echelon = rref(m.rows)
    pivot_cols = {(r & -r).bit_length() - 1: r for r in echelon}
    vectors = []
    for f in range(m.ncols):
        if f in pivot_cols:
            continue
        v = 1 << f
        for p, row in pivot_cols.items():
            if (row >> f) & 1:
                v |= 1 << p
        vectors.append(v)
    return Subspace.span(vectors, m.ncols)


def image(m: BitMatrix) -> Subspace:
    """Column span of ``m`` inside GF(2)^rows."""
    return Subspace.span(m.columns(), m.nrows)


def quotient_basis(sub: Subspace, inside: Subspace) -> list[int]:
    """Coset representatives forming a basis of ``inside / sub``.

    Representatives are reduced modulo ``sub`` and then put in reduced
    echelon form among themselves, so the answer depends only on the two
    subspaces and not on how they were presented.
    """
    if not sub.is_subspace_of(inside):
        raise NotContained("sub is not contained in inside")
    residues = [sub.reduce(b) for b in inside.basis]
    return list(rref(r for r in residues if r))


class Quotient:
    """Coordinates on ``inside / sub`` with respect to :func:`quotient_basis`."""

    __slots__ = ("sub", "inside", "reps", "_pivots", "_sub_pivots")

    def __init__(self, sub: Subspace, inside: Subspace):
        self.sub = sub
        self.inside = inside
        self.reps = tuple(quotient_basis(sub, inside))
        self._pivots = tuple(r & -r for r in self.reps)
        self._sub_pivots = sub._pivot_map()

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coords(self, v: int) -> int:
        """Coordinates of the coset of ``v``; raises if ``v`` is not in ``inside``."""
        r = _reduce(self._sub_pivots, v)
        c = 0
        acc = 0
        for i, p in enumerate(self._pivots):
            if r & p:
                c |= 1 << i
                acc ^= self.reps[i]
        if acc != r:
            raise NotContained(f"vector {v:#b} is not in the enclosing subspace")
        return c

    def lift(self, c: int) -> int:
        acc = 0
        for i in bits(c):
            acc ^= self.reps[i]
        return acc
