"""Reduced simplicial cohomology with GF(2) coefficients.

Degree -1 is the augmentation: the empty simplex spans C^{-1}, so the
empty complex has reduced cohomology Z/2 in degree -1 and nothing else,
while any complex with a vertex has nothing in degree -1.

Coboundaries are stored as cochain maps: ``delta[d]`` has one row per
(d+1)-face and one column per d-face, entry 1 when the d-face is in the
boundary of the (d+1)-face.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .complex import SimplicialComplex
from .f2 import F2Matrix, rank_of_rows

GradedDims = dict[int, int]


@dataclass(frozen=True)
class CochainComplexF2:
    faces: dict[int, tuple[int, ...]]
    coboundary: dict[int, F2Matrix]

    def rank(self, d: int) -> int:
        return len(self.faces.get(d, ()))


def _all_faces(masks: Iterable[int]) -> dict[int, list[int]]:
    seen: set[int] = {0}
    for f in masks:
        bits = [1 << i for i in range(f.bit_length()) if f >> i & 1]
        for k in range(1, len(bits) + 1):
            for combo in itertools.combinations(bits, k):
                seen.add(sum(combo))
    by_dim: dict[int, list[int]] = defaultdict(list)
    for x in seen:
        by_dim[x.bit_count() - 1].append(x)
    for d in by_dim:
        # lexicographic order on the sorted vertex lists
        by_dim[d].sort(key=lambda x: [i for i in range(x.bit_length()) if x >> i & 1])
    return dict(by_dim)


def _cochains(masks: Sequence[int]) -> CochainComplexF2:
    faces = _all_faces(masks)
    top = max(faces)
    cob: dict[int, F2Matrix] = {}
    for d in range(-1, top):
        index = {x: i for i, x in enumerate(faces[d])}
        rows = []
        for tau in faces[d + 1]:
            row = 0
            t = tau
            while t:
                low = t & -t
                row |= 1 << index[tau ^ low]
                t ^= low
            rows.append(row)
        cob[d] = F2Matrix(len(rows), len(faces[d]), tuple(rows))
    return CochainComplexF2({d: tuple(v) for d, v in faces.items()}, cob)


def build_cochain_complex(K: SimplicialComplex) -> CochainComplexF2:
    """Augmented cochain complex of K over GF(2); checks delta o delta = 0."""
    if K.void:
        return CochainComplexF2({}, {})
    cc = _cochains(K.masks)
    for d in cc.coboundary:
        nxt = cc.coboundary.get(d + 1)
        if nxt is not None:
            assert (nxt @ cc.coboundary[d]).is_zero(), f"delta^{d + 1} o delta^{d} != 0"
    return cc


def _dense_dims(masks: Sequence[int]) -> GradedDims:
    cc = _cochains(masks)
    ranks = {d: rank_of_rows(M.rows) for d, M in cc.coboundary.items()}
    out: GradedDims = {}
    for d, fs in cc.faces.items():
        h = len(fs) - ranks.get(d, 0) - ranks.get(d - 1, 0)
        if h:
            out[d] = h
    return out


def _join_dims(parts: Sequence[GradedDims]) -> GradedDims:
    """Kunneth for joins: H~^{a+b+1}(A*B) = sum H~^a(A) (x) H~^b(B)."""
    acc: GradedDims = {-1: 1}
    for p in parts:
        nxt: GradedDims = defaultdict(int)
        for a, x in acc.items():
            for b, y in p.items():
                nxt[a + b + 1] += x * y
        acc = {d: v for d, v in nxt.items() if v}
    return acc


def _components(dep: np.ndarray) -> list[list[int]]:
    n = dep.shape[0]
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in zip(*np.nonzero(np.triu(dep, 1))):
        ri, rj = find(int(i)), find(int(j))
        if ri != rj:
            parent[ri] = rj
    groups: dict[int, list[int]] = defaultdict(list)
    for i in range(n):
        groups[find(i)].append(i)
    return list(groups.values())


def _maximal_np(arr: np.ndarray) -> np.ndarray:
    arr = np.unique(arr)
    if arr.size > 1:
        arr = arr[arr != 0]
    sizes = np.bitwise_count(arr)
    if arr.size <= 1 or sizes.min() == sizes.max():
        return arr
    order = np.argsort(-sizes, kind="stable")
    arr, sizes = arr[order], sizes[order]
    keep = np.ones(arr.size, dtype=bool)
    for s in np.unique(sizes)[::-1][1:]:
        small = np.nonzero(sizes == s)[0]
        big = arr[(sizes > s) & keep]
        inside = ((arr[small][:, None] & ~big[None, :]) == 0).any(axis=1)
        keep[small[inside]] = False
    return arr[keep]


def restrict_masks(masks: np.ndarray, smask: int) -> np.ndarray:
    """Maximal faces (as uint64 masks) of the full subcomplex on ``smask``."""
    return _maximal_np(masks & np.uint64(smask))


def _dims_np(arr: np.ndarray) -> GradedDims:
    """Reduced cohomology of the complex with maximal faces ``arr``.

    Splits off join factors first (a vertex partition is a join
    decomposition exactly when every facet is a union of facets of the
    pieces), then falls back to dense coboundary ranks per prime factor.
    """
    n_faces = arr.size
    if n_faces == 0 or (n_faces == 1 and int(arr[0]) == 0):
        return {-1: 1}
    common = np.bitwise_and.reduce(arr)
    if int(common):
        return {}
    if n_faces <= 2:
        return _dense_dims([int(x) for x in arr])
    union = int(np.bitwise_or.reduce(arr))
    verts = [i for i in range(union.bit_length()) if union >> i & 1]
    X = ((arr[:, None] >> np.array(verts, dtype=np.uint64)[None, :]) & np.uint64(1)).astype(np.int64)
    C = X.T @ X
    c = np.diag(C)
    dep = n_faces * C != np.outer(c, c)
    comps = _components(dep)
    if len(comps) > 1:
        cmasks = [sum(1 << verts[i] for i in comp) for comp in comps]
        projs = [np.unique(arr & np.uint64(cm)) for cm in cmasks]
        if np.prod([p.size for p in projs], dtype=object) == n_faces:
            return _join_dims([_dims_np(p) for p in projs])
        for cm, p in zip(cmasks, projs):
            rest = np.unique(arr & np.uint64(union & ~cm))
            if p.size * rest.size == n_faces:
                return _join_dims([_dims_np(p), _dims_np(rest)])
    return _dense_dims([int(x) for x in arr])


def dims_from_masks(masks: Iterable[int], method: str = "auto") -> GradedDims:
    """Reduced GF(2) cohomology dims from maximal-face bitmasks.

    ``method="dense"`` skips join splitting and ranks the full cochain
    complex; it is the independent path used to check the fast one.
    """
    masks = list(masks)
    if method == "dense":
        return _dense_dims(masks) if masks else {-1: 1}
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    if masks and max(masks).bit_length() > 63:
        return _dense_dims(masks)
    return _dims_np(np.array(masks, dtype=np.uint64))


def reduced_cohomology_dims(K: SimplicialComplex, method: str = "auto") -> GradedDims:
    """dim H~^d(K; Z/2) for every degree with non-zero cohomology."""
    if K.void:
        return {}
    return dims_from_masks(K.masks, method)


def reduced_euler_characteristic(K: SimplicialComplex) -> int:
    """Alternating face count including the empty face with sign -1."""
    if K.void:
        return 0
    return sum(1 if x.bit_count() % 2 else -1 for x in K.face_masks())
