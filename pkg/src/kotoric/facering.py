"""Face-ring presentations of mod 2 cohomology and Steenrod squares on them.

H*(M; Z/2) is the Stanley-Reisner ring of K on degree-2 generators modulo
the linear forms given by the rows of lambda mod 2; H*(M_R; Z/2) is the
same with degree-1 generators.  Everything here is computed from that
presentation alone, independently of the subcomplex route in ``ko``.

Monomials are exponent tuples of length m.  In each degree they are
ordered descending lexicographically (v1 > v2 > ...) and monomial ``i``
occupies bit ``i`` of a packed vector.  When quotienting by the linear
forms the earliest monomial of each relation is eliminated first, so the
surviving standard monomials are the lexicographically latest ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterator

from .complex import SimplicialComplex, mask_to_face
from .errors import DomainError, InternalError
from .f2 import F2Matrix, rank_of_rows
from .cohomology import GradedDims

Monomial = tuple[int, ...]
MonomialBasis = dict[int, list[Monomial]]


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered ways to write ``total`` as ``parts`` positive integers."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for cuts in itertools.combinations(range(1, total), parts - 1):
        bounds = (0, *cuts, total)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def _monomials(m: int, faces_by_size: dict[int, list[int]], count: int) -> list[Monomial]:
    out = []
    for size in range(0, min(count, max(faces_by_size)) + 1):
        for face in faces_by_size.get(size, ()):
            verts = [v - 1 for v in mask_to_face(face)]
            for comp in _compositions(count, size):
                e = [0] * m
                for v, c in zip(verts, comp):
                    e[v] = c
                out.append(tuple(e))
    out.sort(reverse=True)
    return out


def _faces_by_size(K: SimplicialComplex) -> dict[int, list[int]]:
    by: dict[int, list[int]] = {}
    for x in K.face_masks():
        by.setdefault(x.bit_count(), []).append(x)
    return by


def face_ring_basis(K: SimplicialComplex, generator_degree: int, max_degree: int) -> MonomialBasis:
    """Monomials whose support is a face, bucketed by weighted degree."""
    if generator_degree not in (1, 2):
        raise ValueError("generator degree must be 1 or 2")
    if K.void or K.is_empty:
        raise DomainError("face ring needs a non-empty complex")
    fbs = _faces_by_size(K)
    return {
        d: _monomials(K.m, fbs, d // generator_degree)
        for d in range(0, max_degree + 1, generator_degree)
    }


def _mask_of(mono: Monomial) -> int:
    return sum(1 << i for i, e in enumerate(mono) if e)


@dataclass
class QuotientPresentation:
    """Per-degree basis of the face ring modulo the linear forms.

    ``monomials[d]`` lists the face-ring monomials of degree d,
    ``pivots[d]`` maps an eliminated monomial position to the relation
    (packed vector) whose earliest monomial it is, and ``basis[d]`` lists
    the positions of the surviving standard monomials.
    """

    generator_degree: int
    max_degree: int
    m: int
    n: int
    monomials: MonomialBasis
    index: dict[int, dict[Monomial, int]]
    pivots: dict[int, dict[int, int]]
    basis: dict[int, list[int]]
    relations: dict[int, list[int]] = field(repr=False)

    @property
    def dims(self) -> GradedDims:
        return {d: len(b) for d, b in self.basis.items() if b}

    def dim(self, d: int) -> int:
        return len(self.basis.get(d, ()))

    def covers(self, d: int) -> bool:
        return 0 <= d <= self.max_degree

    def reduce_vector(self, d: int, vec: int) -> int:
        """Normal form of a packed face-ring vector, in standard-basis coordinates."""
        piv = self.pivots[d]
        for p in sorted(piv):
            if vec >> p & 1:
                vec ^= piv[p]
        out = 0
        for i, pos in enumerate(self.basis[d]):
            if vec >> pos & 1:
                out |= 1 << i
        return out

    def pack(self, d: int, monos) -> int:
        """Pack a set of monomials of degree d (dropping those outside the face ring)."""
        idx = self.index[d]
        vec = 0
        for mo in monos:
            i = idx.get(mo)
            if i is not None:
                vec ^= 1 << i
        return vec

    def standard_monomials(self, d: int) -> list[Monomial]:
        return [self.monomials[d][i] for i in self.basis.get(d, ())]


def quotient_presentation(K: SimplicialComplex, lam2: F2Matrix, generator_degree: int,
                          max_degree: int | None = None) -> QuotientPresentation:
    """Presentation of (Z/2[gens] / Stanley-Reisner ideal) / (linear forms)."""
    n = lam2.nrows
    if lam2.ncols != K.m:
        raise DomainError("matrix columns do not match the vertex count")
    if lam2.rank() != n:
        raise DomainError("mod 2 characteristic matrix is not of full rank")
    g = generator_degree
    if max_degree is None:
        max_degree = g * n
    monos = face_ring_basis(K, g, max_degree)
    faces = set(K.face_masks())
    thetas = [[k for k in range(K.m) if lam2.rows[i] >> k & 1] for i in range(n)]
    index = {d: {mo: i for i, mo in enumerate(ms)} for d, ms in monos.items()}
    pivots: dict[int, dict[int, int]] = {}
    basis: dict[int, list[int]] = {}
    relations: dict[int, list[int]] = {}
    for d, ms in monos.items():
        rels = []
        if d - g in monos:
            idx = index[d]
            for mu in monos[d - g]:
                supp = _mask_of(mu)
                for ks in thetas:
                    vec = 0
                    for k in ks:
                        if (supp | 1 << k) in faces:
                            e = list(mu)
                            e[k] += 1
                            vec ^= 1 << idx[tuple(e)]
                    if vec:
                        rels.append(vec)
        echelon: dict[int, int] = {}
        for r in rels:
            while r:
                low = (r & -r).bit_length() - 1
                b = echelon.get(low)
                if b is None:
                    echelon[low] = r
                    break
                r ^= b
        pivots[d] = echelon
        basis[d] = [i for i in range(len(ms)) if i not in echelon]
        relations[d] = rels
    return QuotientPresentation(g, max_degree, K.m, n, monos, index, pivots, basis, relations)


def _square_monomial(mono: Monomial, steps: int) -> dict[Monomial, int]:
    """Cartan formula with Sq(g) = g + g^2 on each generator.

    Raising the squaring count by ``steps`` means choosing s_i <= a_i extra
    factors at each generator, with coefficient prod C(a_i, s_i) mod 2.
    """
    supp = [i for i, e in enumerate(mono) if e]
    out: dict[Monomial, int] = {}
    for dist in _bounded_distributions(steps, [mono[i] for i in supp]):
        coeff = 1
        for s, i in zip(dist, supp):
            coeff &= comb(mono[i], s) & 1
            if not coeff:
                break
        if coeff:
            e = list(mono)
            for s, i in zip(dist, supp):
                e[i] += s
            key = tuple(e)
            out[key] = out.get(key, 0) ^ 1
    return {k: v for k, v in out.items() if v}


def _bounded_distributions(total: int, caps: list[int]) -> Iterator[tuple[int, ...]]:
    if not caps:
        if total == 0:
            yield ()
        return
    first, rest = caps[0], caps[1:]
    for s in range(min(first, total) + 1):
        for tail in _bounded_distributions(total - s, rest):
            yield (s, *tail)


def _square_vector(pres: QuotientPresentation, k: int, d: int, vec: int) -> int:
    """Sq^k of a packed degree-d face-ring vector, packed in degree d + k."""
    steps = k // pres.generator_degree
    acc: dict[Monomial, int] = {}
    ms = pres.monomials[d]
    i = 0
    while vec:
        if vec & 1:
            for mo in _square_monomial(ms[i], steps):
                acc[mo] = acc.get(mo, 0) ^ 1
        vec >>= 1
        i += 1
    return pres.pack(d + k, (mo for mo, c in acc.items() if c))


def steenrod_square_matrix(pres: QuotientPresentation, k: int, d: int,
                           check_samples: int = 3) -> F2Matrix:
    """Matrix of Sq^k : H^d -> H^(d+k) in the standard-monomial bases.

    Rows index the target basis, columns the source basis.  A few relations
    of degree d are also pushed through Sq^k to confirm they reduce to
    zero, which guards the reduction map.
    """
    if k not in (1, 2):
        raise ValueError("only Sq^1 and Sq^2 are supported")
    if not (pres.covers(d) and pres.covers(d + k)):
        raise DomainError(f"presentation does not cover degrees {d} and {d + k}")
    g = pres.generator_degree
    src = pres.dim(d) if d % g == 0 else 0
    tgt = pres.dim(d + k) if (d + k) % g == 0 else 0
    if k % g or src == 0 or tgt == 0:
        return F2Matrix.zeros(tgt, src)
    cols = []
    for pos in pres.basis[d]:
        img = _square_vector(pres, k, d, 1 << pos)
        cols.append(pres.reduce_vector(d + k, img))
    for rel in pres.relations.get(d, ())[:check_samples]:
        img = _square_vector(pres, k, d, rel)
        if pres.reduce_vector(d + k, img):
            raise InternalError(f"Sq^{k} is not well defined on the degree {d} quotient")
    return F2Matrix.from_columns(cols, tgt)


def _square_maps(pres: QuotientPresentation, k: int) -> dict[int, F2Matrix]:
    """Sq^k in every degree; maps leaving the covered range are zero."""
    maps = {}
    for d in range(pres.max_degree + 1):
        if pres.covers(d + k):
            maps[d] = steenrod_square_matrix(pres, k, d)
        else:
            maps[d] = F2Matrix.zeros(0, pres.dim(d) if d % pres.generator_degree == 0 else 0)
    return maps


def margolis_dims(pres: QuotientPresentation, k: int) -> GradedDims:
    """dim ker Sq^k - dim im Sq^k in each degree."""
    maps = _square_maps(pres, k)
    for d, A in maps.items():
        B = maps.get(d + k)
        if B is not None and B.ncols == A.nrows and A.nrows and not (B @ A).is_zero():
            raise InternalError(f"Sq^{k} o Sq^{k} != 0 starting in degree {d}")
    ranks = {d: A.rank() for d, A in maps.items()}
    out: GradedDims = {}
    for d in range(pres.max_degree + 1):
        dim = pres.dim(d) if d % pres.generator_degree == 0 else 0
        h = dim - ranks[d] - ranks.get(d - k, 0)
        if h:
            out[d] = h
    return out


@dataclass(frozen=True)
class A1Decomposition:
    """Dimensions of the trivial part and of the Sq^2-paired part.

    ``m_pairs[d]`` counts pairs (y, z) with y in degree d and z = Sq^2 y in
    degree d + 2.
    """

    s: dict[int, int]
    m_pairs: dict[int, int]
    dims: dict[int, int]

    @property
    def all_trivial(self) -> bool:
        return not any(self.m_pairs.values())

    @property
    def reduced_all_paired(self) -> bool:
        return {d: v for d, v in self.s.items() if d > 0 and v} == {}


def a1_decomposition(pres: QuotientPresentation) -> A1Decomposition:
    if pres.generator_degree != 2:
        raise DomainError("the A(1) split is computed on the degree-2 presentation")
    for d in range(pres.max_degree):
        if not steenrod_square_matrix(pres, 1, d).is_zero():
            raise InternalError(f"Sq^1 is non-zero on H^{d}")
    s = margolis_dims(pres, 2)
    maps = _square_maps(pres, 2)
    m_pairs = {d: A.rank() for d, A in maps.items() if A.rank()}
    dims = pres.dims
    for d in range(pres.max_degree + 1):
        if s.get(d, 0) + m_pairs.get(d, 0) + m_pairs.get(d - 2, 0) != dims.get(d, 0):
            raise InternalError(f"A(1) split does not account for H^{d}")
    return A1Decomposition(s, m_pairs, dims)


@dataclass
class HalvingReport:
    betti_M: dict[int, int]
    betti_R: dict[int, int]
    margolis_M: dict[int, int]
    margolis_R: dict[int, int]
    mismatches: list[str]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "betti_M": _keys_str(self.betti_M),
            "betti_R": _keys_str(self.betti_R),
            "sq2_margolis_M": _keys_str(self.margolis_M),
            "sq1_margolis_R": _keys_str(self.margolis_R),
            "mismatches": list(self.mismatches),
        }


def _keys_str(d: dict[int, int]) -> dict[str, int]:
    return {str(k): v for k, v in sorted(d.items())}


def degree_halving_check(K: SimplicialComplex, lam2: F2Matrix,
                         pres_M: QuotientPresentation | None = None) -> HalvingReport:
    """Compare the degree-2 and degree-1 presentations under d -> d/2.

    Betti numbers must agree, and Sq^2-Margolis dims on one side must equal
    Sq^1-Margolis dims on the other.
    """
    n = lam2.nrows
    pm = pres_M if pres_M is not None else quotient_presentation(K, lam2, 2)
    pr = quotient_presentation(K, lam2, 1)
    bm, br = pm.dims, pr.dims
    mm, mr = margolis_dims(pm, 2), margolis_dims(pr, 1)
    bad = []
    for d in range(2 * n + 1):
        if d % 2:
            if bm.get(d, 0) or mm.get(d, 0):
                bad.append(f"odd degree {d} is non-zero on the degree-2 side")
            continue
        i = d // 2
        if bm.get(d, 0) != br.get(i, 0):
            bad.append(f"Betti: H^{d}(M) = {bm.get(d, 0)} but H^{i}(M_R) = {br.get(i, 0)}")
        if mm.get(d, 0) != mr.get(i, 0):
            bad.append(f"Margolis: Sq^2 at {d} = {mm.get(d, 0)} but Sq^1 at {i} = {mr.get(i, 0)}")
    return HalvingReport(bm, br, mm, mr, bad)
