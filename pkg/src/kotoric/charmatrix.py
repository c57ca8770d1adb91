"""Characteristic matrices, their validation, and the wedge/restriction moves."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from .complex import SimplicialComplex
from .errors import DomainError, InputError, ValidationError
from .f2 import F2Matrix, pack


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class CharMatrix:
    """Integer n x m matrix; column k is the vector assigned to vertex k + 1."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        if not rows or not rows[0]:
            raise InputError("characteristic matrix must be non-empty")
        if len({len(r) for r in rows}) != 1:
            raise InputError("characteristic matrix rows have different lengths")

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[int]]) -> "CharMatrix":
        return cls(tuple(tuple(r) for r in data))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def m(self) -> int:
        return len(self.entries[0])

    def column(self, k: int) -> tuple[int, ...]:
        """Column for 1-indexed vertex ``k``."""
        return tuple(r[k - 1] for r in self.entries)

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def mod2(self) -> F2Matrix:
        return F2Matrix(self.n, self.m, tuple(pack(x % 2 for x in r) for r in self.entries))

    def minor(self, face: Sequence[int]) -> int:
        cols = [self.column(k) for k in face]
        return bareiss_det([[c[i] for c in cols] for i in range(self.n)])

    def left_multiply(self, g: Sequence[Sequence[int]]) -> "CharMatrix":
        out = []
        for grow in g:
            out.append(tuple(sum(grow[i] * self.entries[i][k] for i in range(self.n)) for k in range(self.m)))
        return CharMatrix(tuple(out))


def mod2(lam: CharMatrix) -> F2Matrix:
    return lam.mod2()


@dataclass
class ValidationReport:
    mode: str
    problems: list[str] = field(default_factory=list)
    failing_faces: list[tuple[tuple[int, ...], int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems and not self.failing_faces

    def to_dict(self) -> dict[str, Any]:
        return {
            "mode": self.mode,
            "ok": self.ok,
            "problems": list(self.problems),
            "failing_faces": [{"face": list(f), "det": d} for f, d in self.failing_faces],
        }


def validate(K: SimplicialComplex, lam: CharMatrix, mode: str = "toric") -> ValidationReport:
    """Check the non-degeneracy condition at every maximal face.

    toric: every n x n minor on a maximal face is +-1.
    small-cover: the same minors are odd.
    All problems are collected; nothing fails fast.
    """
    if mode not in ("toric", "small-cover"):
        raise ValueError(f"unknown validation mode {mode!r}")
    report = ValidationReport(mode)
    if lam.m != K.m:
        report.problems.append(f"matrix has {lam.m} columns but the complex has {K.m} vertices")
    if K.void or K.is_empty:
        report.problems.append("complex has no vertices")
        return report
    if K.dim + 1 != lam.n:
        report.problems.append(f"matrix has {lam.n} rows but dim K + 1 = {K.dim + 1}")
    if not K.is_pure():
        report.problems.append("complex is not pure")
    if report.problems:
        return report
    for face in K.maximal_faces:
        d = lam.minor(face)
        bad = abs(d) != 1 if mode == "toric" else d % 2 == 0
        if bad:
            report.failing_faces.append((face, d))
    return report


@dataclass(frozen=True)
class ToricInstance:
    """A validated pair (K, lambda).

    ``provenance`` maps each vertex created by a wedge to the original vertex
    it was split from.
    """

    complex: SimplicialComplex
    lam: CharMatrix
    name: str = ""
    provenance: tuple[tuple[int, int], ...] = ()
    metadata: tuple[tuple[str, Any], ...] = ()

    def __post_init__(self):
        report = validate(self.complex, self.lam, "toric")
        if not report.ok:
            msgs = report.problems + [f"face {list(f)} has determinant {d}" for f, d in report.failing_faces]
            raise ValidationError("invalid characteristic data: " + "; ".join(msgs), report)

    @property
    def n(self) -> int:
        return self.lam.n

    @property
    def m(self) -> int:
        return self.lam.m

    @property
    def lam2(self) -> F2Matrix:
        return self.lam.mod2()

    def origin(self, v: int) -> int:
        """Original vertex a (possibly wedge-created) label descends from."""
        return dict(self.provenance).get(v, v)


def wedge_lambda(lam: CharMatrix, j: int) -> CharMatrix:
    """Extend lambda for a wedge on vertex ``j``.

    Every column gets a trailing 0, a new column e_(n+1) is appended, and the
    new last row is -1 under ``j``, 1 under the new vertex, 0 elsewhere.
    """
    if not 1 <= j <= lam.m:
        raise DomainError(f"column index {j} outside 1..{lam.m}")
    rows = [tuple(r) + (0,) for r in lam.entries]
    last = [0] * (lam.m + 1)
    last[j - 1] = -1
    last[lam.m] = 1
    rows.append(tuple(last))
    return CharMatrix(tuple(rows))


def iterated_wedge(inst: ToricInstance, vertices: Sequence[int], name: str | None = None) -> ToricInstance:
    """Wedge the listed original vertices one after another."""
    if len(set(vertices)) != len(vertices):
        raise DomainError(f"duplicate wedge vertices in {list(vertices)}")
    K, lam = inst.complex, inst.lam
    prov = dict(inst.provenance)
    for j in vertices:
        if not 1 <= j <= inst.m:
            raise DomainError(f"wedge vertex {j} is not an original vertex (1..{inst.m})")
        new = K.m + 1
        K = K.wedge(j)
        lam = wedge_lambda(lam, j)
        prov[new] = prov.get(j, j)
    if name is None:
        name = f"{inst.name}({','.join(map(str, vertices))})" if vertices else inst.name
    return ToricInstance(K, lam, name, tuple(sorted(prov.items())), inst.metadata)


def facet_restrict(K: SimplicialComplex, lam2: F2Matrix, facet: int,
                   row: int) -> tuple[SimplicialComplex, F2Matrix, tuple[int, ...]]:
    """Characteristic data of the small cover over one facet.

    ``facet`` is a 1-indexed vertex of K whose column must have its only
    non-zero entry in 1-indexed ``row``.  Returns the link of the vertex, the
    matrix with that row and column removed and columns restricted to the
    link, and the original labels of the link vertices.
    """
    if not 1 <= facet <= K.m:
        raise DomainError(f"facet index {facet} outside 1..{K.m}")
    if not 1 <= row <= lam2.nrows:
        raise DomainError(f"row index {row} outside 1..{lam2.nrows}")
    col = lam2.column(facet - 1)
    if col != 1 << (row - 1):
        raise DomainError(
            f"column {facet} is not the standard vector e_{row}; apply a basis change first "
            "(see single_entry_normalizer)"
        )
    lk, labels = K.link((facet,))
    reduced = lam2.delete(row=row - 1)
    return lk, reduced.select_columns([v - 1 for v in labels]), labels
