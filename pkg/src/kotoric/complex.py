"""Finite abstract simplicial complexes on vertices labelled 1..m.

A complex is stored as the antichain of its maximal faces.  Internally each
face is also kept as a bitmask with vertex ``v`` in bit ``v - 1``.
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

from .errors import DomainError, InputError

Face = tuple[int, ...]


def face_to_mask(face: Iterable[int]) -> int:
    mask = 0
    for v in face:
        mask |= 1 << (v - 1)
    return mask


def mask_to_face(mask: int) -> Face:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def maximal_masks(masks: Iterable[int]) -> list[int]:
    """Keep only the inclusion-maximal masks (deduplicated)."""
    uniq = sorted(set(masks), key=lambda x: -x.bit_count())
    kept: list[int] = []
    for x in uniq:
        size = x.bit_count()
        if not any((x & ~k) == 0 for k in kept if k.bit_count() > size):
            kept.append(x)
    return kept


@dataclass(frozen=True)
class SimplicialComplex:
    """Vertex count ``m`` plus the maximal faces.

    ``SimplicialComplex(0, ())`` is the empty complex, whose only face is the
    empty simplex.  ``void=True`` gives the complex with no faces at all.
    """

    m: int
    maximal_faces: tuple[Face, ...]
    void: bool = False
    masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        faces = tuple(sorted(tuple(sorted(set(f))) for f in self.maximal_faces))
        object.__setattr__(self, "maximal_faces", faces)
        if self.m < 0:
            raise InputError("vertex count must be non-negative")
        if self.void:
            if faces:
                raise InputError("the void complex has no faces")
            object.__setattr__(self, "masks", ())
            return
        for f in faces:
            for v in f:
                if not 1 <= v <= self.m:
                    raise InputError(f"vertex label {v} outside 1..{self.m}")
        masks = tuple(face_to_mask(f) for f in faces)
        if len(set(masks)) != len(masks):
            raise InputError("duplicate maximal face")
        by_size = sorted(masks, key=int.bit_count)
        sizes = [x.bit_count() for x in by_size]
        for i, a in enumerate(by_size):
            for b in by_size[bisect.bisect_right(sizes, sizes[i]):]:
                if a & ~b == 0:
                    raise InputError(
                        f"maximal faces are not an antichain: {mask_to_face(a)} is inside {mask_to_face(b)}"
                    )
        covered = 0
        for x in masks:
            covered |= x
        if covered != (1 << self.m) - 1:
            missing = mask_to_face(((1 << self.m) - 1) & ~covered)
            raise InputError(f"vertices {missing} lie in no maximal face")
        if faces == ((),):
            object.__setattr__(self, "maximal_faces", ())
            masks = ()
        object.__setattr__(self, "masks", masks)

    @classmethod
    def from_masks(cls, m: int, masks: Iterable[int]) -> "SimplicialComplex":
        return cls(m, tuple(mask_to_face(x) for x in masks))

    @classmethod
    def empty(cls) -> "SimplicialComplex":
        return cls(0, ())

    @classmethod
    def simplex_boundary(cls, n: int) -> "SimplicialComplex":
        """Boundary of the n-simplex on n + 1 vertices."""
        full = range(1, n + 2)
        return cls(n + 1, tuple(tuple(v for v in full if v != u) for u in full))

    @classmethod
    def simplex(cls, n: int) -> "SimplicialComplex":
        return cls(n + 1, (tuple(range(1, n + 2)),))

    @classmethod
    def cross_polytope_boundary(cls, n: int) -> "SimplicialComplex":
        """Boundary of the n-dimensional cross-polytope; antipodes are (i, i + n)."""
        faces = []
        for choice in itertools.product((0, 1), repeat=n):
            faces.append(tuple(i + 1 + c * n for i, c in enumerate(choice)))
        return cls(2 * n, tuple(faces))

    @classmethod
    def polygon(cls, m: int) -> "SimplicialComplex":
        if m < 3:
            raise DomainError("a polygon needs at least 3 vertices")
        return cls(m, tuple((i, i % m + 1) for i in range(1, m + 1)))

    @property
    def is_empty(self) -> bool:
        """True for the complex whose only face is the empty simplex."""
        return not self.void and not self.maximal_faces

    @property
    def dim(self) -> int:
        if self.void:
            raise DomainError("the void complex has no dimension")
        if not self.maximal_faces:
            return -1
        return max(len(f) for f in self.maximal_faces) - 1

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(range(1, self.m + 1))

    def is_pure(self) -> bool:
        return len({len(f) for f in self.maximal_faces}) <= 1

    def _check_labels(self, sigma: Iterable[int]) -> int:
        mask = 0
        for v in sigma:
            if not 1 <= v <= self.m:
                raise InputError(f"vertex label {v} outside 1..{self.m}")
            mask |= 1 << (v - 1)
        return mask

    def contains_face(self, sigma: Iterable[int]) -> bool:
        mask = self._check_labels(sigma)
        if self.void:
            return False
        if mask == 0:
            return True
        return any(mask & ~f == 0 for f in self.masks)

    def faces(self, dim: int | None = None) -> list[Face]:
        """All faces (including the empty face), sorted by size then lex."""
        return [mask_to_face(x) for x in self.face_masks(dim)]

    def face_masks(self, dim: int | None = None) -> list[int]:
        if self.void:
            return []
        seen: set[int] = {0}
        for f in self.masks:
            verts = [1 << i for i in range(self.m) if f >> i & 1]
            for k in range(1, len(verts) + 1):
                for combo in itertools.combinations(verts, k):
                    seen.add(sum(combo))
        out = sorted(seen, key=lambda x: (x.bit_count(), mask_to_face(x)))
        if dim is not None:
            out = [x for x in out if x.bit_count() == dim + 1]
        return out

    def full_subcomplex(self, S: Iterable[int]) -> tuple["SimplicialComplex", tuple[int, ...]]:
        """The full subcomplex on ``S``, relabelled 1..|S| in increasing order.

        Also returns the original label of each new vertex.
        """
        smask = self._check_labels(S)
        labels = mask_to_face(smask)
        if self.void:
            return SimplicialComplex(0, (), void=True), ()
        restricted = maximal_masks(f & smask for f in self.masks)
        return _relabel(restricted, labels), labels

    def link(self, sigma: Iterable[int]) -> tuple["SimplicialComplex", tuple[int, ...]]:
        """Link of a face, relabelled 1..r; returns the original labels too."""
        smask = self._check_labels(sigma)
        if not self.contains_face(mask_to_face(smask)):
            raise DomainError(f"{mask_to_face(smask)} is not a face of the complex")
        star = [f & ~smask for f in self.masks if smask & ~f == 0]
        lk = maximal_masks(star)
        verts = 0
        for x in lk:
            verts |= x
        labels = mask_to_face(verts)
        return _relabel(lk, labels), labels

    def join(self, other: "SimplicialComplex") -> "SimplicialComplex":
        """Join, with ``other``'s labels shifted above ours."""
        if self.void or other.void:
            return SimplicialComplex(0, (), void=True)
        a = self.masks or (0,)
        b = other.masks or (0,)
        faces = [x | (y << self.m) for x in a for y in b]
        return SimplicialComplex.from_masks(self.m + other.m, [f for f in faces if f])

    def wedge(self, j: int) -> "SimplicialComplex":
        """Simplicial wedge on vertex ``j``; the new vertex gets label m + 1.

        Union of {j, j'} * Link(j) with {j} * K_{V-j} and {j'} * K_{V-j}.
        """
        if not 1 <= j <= self.m or self.void:
            raise DomainError(f"{j} is not a vertex of the complex")
        jbit = 1 << (j - 1)
        newbit = 1 << self.m
        rest = maximal_masks(f & ~jbit for f in self.masks)
        lk = maximal_masks(f & ~jbit for f in self.masks if f & jbit)
        faces = [x | jbit | newbit for x in lk]
        faces += [x | jbit for x in rest]
        faces += [x | newbit for x in rest]
        return SimplicialComplex.from_masks(self.m + 1, maximal_masks(faces))

    def relabel(self, perm: Sequence[int]) -> "SimplicialComplex":
        """Apply the vertex map ``v -> perm[v - 1]``."""
        if sorted(perm) != list(range(1, self.m + 1)):
            raise InputError("not a permutation of the vertex labels")
        return SimplicialComplex(self.m, tuple(tuple(perm[v - 1] for v in f) for f in self.maximal_faces))

    def f_vector(self) -> tuple[int, ...]:
        """Face counts f[0], f[1], ...; f[-1] = 1 is left implicit."""
        if self.void or self.is_empty:
            raise DomainError("f-vector of an empty complex is not defined")
        counts = [0] * (self.dim + 1)
        for x in self.face_masks():
            if x:
                counts[x.bit_count() - 1] += 1
        return tuple(counts)

    def h_vector(self) -> tuple[int, ...]:
        return h_from_f(self.f_vector())

    def is_isomorphic(self, other: "SimplicialComplex") -> bool:
        """Exhaustive search over vertex bijections; only for m <= 10."""
        if self.m != other.m or len(self.masks) != len(other.masks):
            return False
        if self.m > 10:
            raise DomainError("isomorphism search is limited to m <= 10")
        if sorted(map(len, self.maximal_faces)) != sorted(map(len, other.maximal_faces)):
            return False
        target = set(other.masks)
        for perm in itertools.permutations(range(1, self.m + 1)):
            if set(self.relabel(perm).masks) == target:
                return True
        return False


def _relabel(masks: Sequence[int], labels: Sequence[int]) -> SimplicialComplex:
    pos = {v: i + 1 for i, v in enumerate(labels)}
    faces = tuple(tuple(pos[v] for v in mask_to_face(x)) for x in masks if x)
    return SimplicialComplex(len(labels), faces)


def h_from_f(f: Sequence[int]) -> tuple[int, ...]:
    """h_k = sum_i (-1)^(k-i) C(n-i, k-i) f_(i-1), with n = len(f), f_(-1) = 1."""
    n = len(f)
    ff = [1, *f]
    return tuple(
        sum((-1) ** (k - i) * comb(n - i, k - i) * ff[i] for i in range(k + 1))
        for k in range(n + 1)
    )


def f_from_h(h: Sequence[int]) -> tuple[int, ...]:
    """Inverse transform: f_(j-1) = sum_i C(n-i, j-i) h_i."""
    n = len(h) - 1
    ff = [sum(comb(n - i, j - i) * h[i] for i in range(j + 1)) for j in range(n + 1)]
    return tuple(ff[1:])


def stellar_subdivide(K: SimplicialComplex, face: Iterable[int]) -> SimplicialComplex:
    """Stellar subdivision of a face; the new vertex gets label m + 1.

    Subdividing a facet of a polytopal sphere is dual to cutting off a vertex
    of the simple polytope, so the result stays polytopal.
    """
    fmask = face_to_mask(face)
    if not K.contains_face(mask_to_face(fmask)) or fmask.bit_count() < 2:
        raise DomainError("can only subdivide a face with at least two vertices")
    newbit = 1 << K.m
    out = []
    for F in K.masks:
        if fmask & ~F:
            out.append(F)
            continue
        # replace F by cone over (boundary of face) * (rest of F)
        rest = F & ~fmask
        for v in mask_to_face(fmask):
            out.append(rest | (fmask & ~(1 << (v - 1))) | newbit)
    return SimplicialComplex.from_masks(K.m + 1, maximal_masks(out))
