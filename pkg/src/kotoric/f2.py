"""Dense linear algebra over GF(2) with rows packed into Python ints.

Bit ``j`` of a row is the entry in column ``j`` (0-indexed), so the
leftmost column is the least significant bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import ResourceCapError

DEFAULT_RANK_CAP = 20


def pack(bits: Iterable[int]) -> int:
    """Pack a 0/1 sequence into an int, first entry in bit 0."""
    out = 0
    for j, b in enumerate(bits):
        if b & 1:
            out |= 1 << j
    return out


def unpack(value: int, length: int) -> list[int]:
    return [(value >> j) & 1 for j in range(length)]


def rank_of_rows(rows: Iterable[int]) -> int:
    """GF(2) rank of a collection of packed rows (xor-basis insertion)."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            h = r.bit_length() - 1
            b = basis.get(h)
            if b is None:
                basis[h] = r
                break
            r ^= b
    return len(basis)


@dataclass(frozen=True)
class F2Vector:
    bits: int
    length: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("padding bits set in F2Vector")

    @property
    def is_zero(self) -> bool:
        return self.bits == 0

    def support(self) -> tuple[int, ...]:
        """1-indexed positions of the non-zero entries."""
        return tuple(j + 1 for j in range(self.length) if (self.bits >> j) & 1)

    def to_list(self) -> list[int]:
        return unpack(self.bits, self.length)

    def bitstring(self) -> str:
        return "".join(str(b) for b in self.to_list())

    def __xor__(self, other: "F2Vector") -> "F2Vector":
        if other.length != self.length:
            raise ValueError("length mismatch")
        return F2Vector(self.bits ^ other.bits, self.length)


@dataclass(frozen=True)
class F2Matrix:
    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ValueError("row count mismatch")
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise ValueError("padding bits set in F2Matrix row")

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[int]], ncols: int | None = None) -> "F2Matrix":
        if ncols is None:
            ncols = len(data[0]) if data else 0
        for row in data:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
        return cls(len(data), ncols, tuple(pack(row) for row in data))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "F2Matrix":
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[int], nrows: int) -> "F2Matrix":
        """Build from packed columns (bit ``i`` of a column is row ``i``)."""
        rows = [0] * nrows
        for j, c in enumerate(columns):
            for i in range(nrows):
                if (c >> i) & 1:
                    rows[i] |= 1 << j
        return cls(nrows, len(columns), tuple(rows))

    def to_lists(self) -> list[list[int]]:
        return [unpack(r, self.ncols) for r in self.rows]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.rows[i] >> j) & 1

    def column(self, j: int) -> int:
        """Column ``j`` packed with row ``i`` in bit ``i``."""
        out = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                out |= 1 << i
        return out

    def columns(self) -> list[int]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "F2Matrix":
        return F2Matrix(self.ncols, self.nrows, tuple(self.columns()))

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for r in self.rows:
            acc = 0
            k = 0
            while r:
                if r & 1:
                    acc ^= other.rows[k]
                r >>= 1
                k += 1
            out.append(acc)
        return F2Matrix(self.nrows, other.ncols, tuple(out))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def rank(self) -> int:
        return rank_of_rows(self.rows)

    def delete(self, row: int | None = None, col: int | None = None) -> "F2Matrix":
        """Drop one row and/or one column (0-indexed)."""
        rows = list(self.rows)
        if row is not None:
            del rows[row]
        ncols = self.ncols
        if col is not None:
            low = (1 << col) - 1
            rows = [(r & low) | ((r >> (col + 1)) << col) for r in rows]
            ncols -= 1
        return F2Matrix(len(rows), ncols, tuple(rows))

    def select_columns(self, cols: Sequence[int]) -> "F2Matrix":
        rows = []
        for r in self.rows:
            rows.append(pack((r >> c) & 1 for c in cols))
        return F2Matrix(self.nrows, len(cols), tuple(rows))

    def row_space(self, cap: int = DEFAULT_RANK_CAP, start: int = 0,
                  stop: int | None = None) -> Iterator[F2Vector]:
        return row_space(self, cap, start, stop)


def rref(A: F2Matrix) -> tuple[F2Matrix, int, tuple[int, ...]]:
    """Reduced row-echelon form; pivots are taken leftmost column first.

    Returns the echelon matrix (same shape, zero rows last), its rank and
    the pivot columns.
    """
    work = list(A.rows)
    pivots: list[int] = []
    top = 0
    for col in range(A.ncols):
        bit = 1 << col
        piv = next((i for i in range(top, len(work)) if work[i] & bit), None)
        if piv is None:
            continue
        work[top], work[piv] = work[piv], work[top]
        prow = work[top]
        for i in range(len(work)):
            if i != top and work[i] & bit:
                work[i] ^= prow
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return F2Matrix(A.nrows, A.ncols, tuple(work)), top, tuple(pivots)


def row_basis(A: F2Matrix) -> list[int]:
    """Non-zero rows of the RREF of ``A``."""
    R, r, _ = rref(A)
    return list(R.rows[:r])


def row_space_size(A: F2Matrix) -> int:
    return 1 << A.rank()


def row_space(A: F2Matrix, cap: int = DEFAULT_RANK_CAP, start: int = 0,
              stop: int | None = None) -> Iterator[F2Vector]:
    """Every vector of the row space of ``A``, each exactly once.

    Order is a binary counter over the RREF row basis: counter value ``k``
    maps to the xor of basis rows ``i`` with bit ``i`` of ``k`` set, so the
    zero vector comes first.  ``start``/``stop`` select a counter range,
    which lets callers split the enumeration into disjoint chunks.
    """
    basis = row_basis(A)
    r = len(basis)
    if r > cap:
        raise ResourceCapError(
            f"row space has 2^{r} = {1 << r} vectors, above the cap 2^{cap}",
            required=1 << r,
        )
    total = 1 << r
    stop = total if stop is None else min(stop, total)
    for k in range(start, stop):
        v = 0
        i = 0
        kk = k
        while kk:
            if kk & 1:
                v ^= basis[i]
            kk >>= 1
            i += 1
        yield F2Vector(v, A.ncols)


def inverse(A: F2Matrix) -> F2Matrix:
    """Inverse of a square matrix over GF(2); raises ValueError if singular."""
    n = A.nrows
    if A.ncols != n:
        raise ValueError("matrix is not square")
    # augment: low n bits = A, high n bits = identity
    aug = F2Matrix(n, 2 * n, tuple(r | (1 << (n + i)) for i, r in enumerate(A.rows)))
    R, _, piv = rref(aug)
    if piv[:n] != tuple(range(n)):
        raise ValueError("matrix is singular over GF(2)")
    return F2Matrix(n, n, tuple(r >> n for r in R.rows))


def distinct_nonzero_columns(A: F2Matrix) -> list[int]:
    seen: list[int] = []
    for c in A.columns():
        if c and c not in seen:
            seen.append(c)
    return seen


def distinct_columns_independent(A: F2Matrix) -> bool:
    """True iff no column is zero and the distinct columns are independent.

    This is exactly the condition for some invertible row operation to turn
    every column into a standard basis vector.
    """
    cols = A.columns()
    if any(c == 0 for c in cols):
        return False
    distinct = distinct_nonzero_columns(A)
    return rank_of_rows(distinct) == len(distinct)


def single_entry_normalizer(A: F2Matrix) -> F2Matrix | None:
    """An invertible ``G`` with exactly one non-zero entry per column of ``G @ A``.

    Returns None when no such basis change exists.
    """
    if not distinct_columns_independent(A):
        return None
    n = A.nrows
    basis = distinct_nonzero_columns(A)
    # extend the independent columns to a basis with standard vectors
    for i in range(n):
        if len(basis) == n:
            break
        e = 1 << i
        if rank_of_rows(basis + [e]) > len(basis):
            basis.append(e)
    B = F2Matrix.from_columns(basis, n)
    return inverse(B)
