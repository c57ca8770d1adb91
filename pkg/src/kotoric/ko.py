"""Witt groups, KO-groups and the S-type / M-type classifiers.

The Witt count in W^t sums, over every vector w of the mod 2 row space,
the reduced cohomology of the full subcomplex on supp(w) in all degrees d
with d + 1 = t (mod 4).  The zero vector gives the empty complex, whose
only class sits in degree -1 and so lands in W^0.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .charmatrix import ToricInstance
from .cohomology import GradedDims, _dims_np, restrict_masks
from .complex import mask_to_face
from .errors import DataError, OracleMismatch
from .f2 import DEFAULT_RANK_CAP, F2Matrix, F2Vector, row_basis, row_space, single_entry_normalizer
from .facering import a1_decomposition, degree_halving_check, quotient_presentation

FACE_RING_MAX_M = 12


def witt_index(d: int) -> int:
    """Witt group receiving H~^d of a full subcomplex."""
    return (d + 1) % 4


@dataclass(frozen=True)
class Contribution:
    omega: str
    degree: int
    dim: int

    @property
    def target(self) -> int:
        return witt_index(self.degree)

    def to_dict(self) -> dict[str, Any]:
        return {"omega": self.omega, "degree": self.degree, "dim": self.dim, "witt_index": self.target}


@dataclass(frozen=True)
class WittGroups:
    w: tuple[int, int, int, int]
    attribution: tuple[Contribution, ...] = ()
    subcomplex_count: int = 0

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {f"w{i}": self.w[i] for i in range(4)}
        out["subcomplexes"] = self.subcomplex_count
        out["attribution"] = [c.to_dict() for c in self.attribution]
        return out

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "WittGroups":
        attr = tuple(Contribution(a["omega"], a["degree"], a["dim"]) for a in d.get("attribution", []))
        return cls(tuple(d[f"w{i}"] for i in range(4)), attr, d.get("subcomplexes", 0))

    def degree_sums(self) -> dict[int, int]:
        """Total dim H~^d over all row-space vectors, by degree d."""
        out: dict[int, int] = {}
        for c in self.attribution:
            out[c.degree] = out.get(c.degree, 0) + c.dim
        return out


def _bits(v: int, m: int) -> str:
    return "".join(str(v >> j & 1) for j in range(m))


def _witt_chunk(args) -> list[tuple[int, GradedDims]]:
    masks, basis, start, stop = args
    arr = np.array(masks, dtype=np.uint64)
    out = []
    for k in range(start, stop):
        v = 0
        i = 0
        kk = k
        while kk:
            if kk & 1:
                v ^= basis[i]
            kk >>= 1
            i += 1
        dims = _dims_np(restrict_masks(arr, v)) if v else {-1: 1}
        if dims:
            out.append((v, dims))
    return out


def resolve_workers(workers: int | None) -> int:
    if not workers:
        return os.cpu_count() or 1
    return max(1, workers)


def witt_groups(inst: ToricInstance, rank_cap: int = DEFAULT_RANK_CAP, workers: int = 1) -> WittGroups:
    """Witt counts w[0..3] with per-vector attribution.

    Counter ranges of the row space are farmed out to ``workers`` processes
    when more than one is requested; the totals and the ordering of the
    attribution table do not depend on the split.
    """
    lam2 = inst.lam2
    basis = row_basis(lam2)
    # raises the resource error before any work is done
    next(row_space(lam2, cap=rank_cap), None)
    total = 1 << len(basis)
    masks = list(inst.complex.masks)
    workers = resolve_workers(workers)
    if workers == 1 or total < 64:
        results = _witt_chunk((masks, basis, 0, total))
    else:
        nchunks = workers * 4
        step = -(-total // nchunks)
        jobs = [(masks, basis, s, min(s + step, total)) for s in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = [r for part in ex.map(_witt_chunk, jobs) for r in part]
    w = [0, 0, 0, 0]
    attribution = []
    for v, dims in results:
        for d, h in sorted(dims.items()):
            w[witt_index(d)] += h
            attribution.append(Contribution(_bits(v, inst.m), d, h))
    return WittGroups(tuple(w), tuple(attribution), total)


def betti_from_h_vector(inst: ToricInstance) -> dict[int, int]:
    h = inst.complex.h_vector()
    return {2 * k: x for k, x in enumerate(h) if x}


def free_ranks(inst: ToricInstance, method: str = "auto") -> tuple[int, int]:
    """(n_0, n_2): total Betti number in degrees 0 mod 4 and 2 mod 4.

    ``face_ring`` reads the Betti numbers off the mod 2 presentation (valid
    because the integral cohomology is torsion free), ``h_vector`` uses the
    h-vector of K, ``both`` computes both and raises DataError on any
    difference.  ``auto`` uses both when m is small enough for the face
    ring and the h-vector alone otherwise.
    """
    if method == "auto":
        method = "both" if inst.m <= FACE_RING_MAX_M else "h_vector"
    if method not in ("face_ring", "h_vector", "both"):
        raise ValueError(f"unknown method {method!r}")
    betti = None
    if method in ("face_ring", "both"):
        betti = quotient_presentation(inst.complex, inst.lam2, 2).dims
    if method in ("h_vector", "both"):
        hb = betti_from_h_vector(inst)
        if betti is not None and hb != betti:
            raise DataError(f"h-vector Betti numbers {hb} disagree with the face ring {betti}")
        betti = hb
    n0 = sum(x for d, x in betti.items() if d % 4 == 0)
    n2 = sum(x for d, x in betti.items() if d % 4 == 2)
    return n0, n2


@dataclass(frozen=True)
class KOTable:
    free: tuple[int, ...]
    torsion: tuple[int, ...]
    reduced: bool = False

    def group(self, j: int) -> str:
        parts = []
        if self.free[j]:
            parts.append("Z" if self.free[j] == 1 else f"Z^{self.free[j]}")
        if self.torsion[j]:
            parts.append("Z/2" if self.torsion[j] == 1 else f"(Z/2)^{self.torsion[j]}")
        return " + ".join(parts) or "0"

    def to_list(self) -> list[dict[str, int]]:
        return [{"j": j, "free": self.free[j], "torsion": self.torsion[j]} for j in range(8)]

    @classmethod
    def from_list(cls, rows: list[dict[str, int]], reduced: bool) -> "KOTable":
        rows = sorted(rows, key=lambda r: r["j"])
        return cls(tuple(r["free"] for r in rows), tuple(r["torsion"] for r in rows), reduced)


def assemble_ko(w: tuple[int, ...], n0: int, n2: int, reduced: bool = False) -> KOTable:
    """KO^(2i) = Z^(n_2i) + (Z/2)^w[i+1], KO^(2i+1) = (Z/2)^w[i+1].

    The reduced table drops the point: one free generator in degree 0 and
    the empty-subcomplex class in W^0, which sits in KO^6 and KO^7.
    """
    w = list(w)
    if reduced:
        w[0] -= 1
        n0 -= 1
    free = [0] * 8
    torsion = [0] * 8
    for i in range(4):
        t = w[(i + 1) % 4]
        free[2 * i] = n0 if i % 2 == 0 else n2
        torsion[2 * i] = t
        torsion[2 * i + 1] = t
    return KOTable(tuple(free), tuple(torsion), reduced)


def ko_table(inst: ToricInstance, reduced: bool = False, witt: WittGroups | None = None,
             ranks: tuple[int, int] | None = None, **kw) -> KOTable:
    witt = witt if witt is not None else witt_groups(inst, **kw)
    n0, n2 = ranks if ranks is not None else free_ranks(inst)
    return assemble_ko(witt.w, n0, n2, reduced)


@dataclass(frozen=True)
class Classification:
    s_type: bool
    m_type: bool
    s_witness: dict[str, Any] = field(default_factory=dict)
    m_witness: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"s_type": self.s_type, "m_type": self.m_type,
                "s_witness": self.s_witness, "m_witness": self.m_witness}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Classification":
        return cls(d["s_type"], d["m_type"], d.get("s_witness", {}), d.get("m_witness", {}))


def _s_witness(lam2: F2Matrix) -> tuple[bool, dict[str, Any]]:
    G = single_entry_normalizer(lam2)
    if G is not None:
        return True, {"basis_change": G.to_lists(), "normalized": (G @ lam2).to_lists()}
    cols = lam2.columns()
    zero = [j + 1 for j, c in enumerate(cols) if c == 0]
    if zero:
        return False, {"zero_columns": zero}
    # smallest dependent set among the distinct columns
    distinct: dict[int, int] = {}
    for j, c in enumerate(cols):
        distinct.setdefault(c, j + 1)
    items = list(distinct.items())
    for r in range(2, len(items) + 1):
        for combo in itertools.combinations(items, r):
            acc = 0
            for c, _ in combo:
                acc ^= c
            if acc == 0:
                return False, {"dependent_columns": [j for _, j in combo]}
    return False, {}


def classify(inst: ToricInstance, rank_cap: int = DEFAULT_RANK_CAP, workers: int = 1,
             witt: WittGroups | None = None) -> Classification:
    """S-type from the column test, M-type from acyclicity of every non-zero vector's subcomplex."""
    s_type, s_wit = _s_witness(inst.lam2)
    witt = witt if witt is not None else witt_groups(inst, rank_cap, workers)
    m_wit: dict[str, Any] = {"checked": witt.subcomplex_count - 1}
    bad = [c for c in witt.attribution if c.degree >= 0]
    m_type = not bad
    if bad:
        first = bad[0]
        m_wit = {"omega": first.omega,
                 "vertices": list(mask_to_face(int(first.omega[::-1], 2))),
                 "degree": first.degree, "dim": first.dim}
    return Classification(s_type, m_type, s_wit, m_wit)


@dataclass
class OracleReport:
    margolis: dict[int, int]
    subcomplex_sums: dict[int, int]
    m_pairs: dict[int, int]
    halving: Any
    mismatches: list[str]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict[str, Any]:
        return {
            "ok": self.ok,
            "sq2_margolis": {str(k): v for k, v in sorted(self.margolis.items())},
            "subcomplex_sums": {str(k): v for k, v in sorted(self.subcomplex_sums.items())},
            "m_pairs": {str(k): v for k, v in sorted(self.m_pairs.items())},
            "degree_halving": self.halving.to_dict(),
            "mismatches": list(self.mismatches),
        }


def oracle_crosscheck(inst: ToricInstance, witt: WittGroups | None = None, **kw) -> OracleReport:
    """Compare the face-ring trivial summands against the subcomplex sums.

    For every i, dim S^(2i) must equal the total dim H~^(i-1)(K_w) over the
    row space; the degree-halving check is run as well.
    """
    witt = witt if witt is not None else witt_groups(inst, **kw)
    pres = quotient_presentation(inst.complex, inst.lam2, 2)
    dec = a1_decomposition(pres)
    sums = {d + 1: x for d, x in witt.degree_sums().items()}
    halving = degree_halving_check(inst.complex, inst.lam2, pres)
    bad = []
    top = max([0, *dec.s, *(2 * i for i in sums)])
    for d in range(0, top + 1):
        s = dec.s.get(d, 0)
        if d % 2:
            if s:
                bad.append(f"trivial summand in odd degree {d}")
            continue
        rhs = sums.get(d // 2, 0)
        if s != rhs:
            bad.append(f"degree {d}: face ring gives {s}, subcomplexes give {rhs}")
    bad += halving.mismatches
    margolis_by_i = {d // 2: v for d, v in dec.s.items()}
    return OracleReport(margolis_by_i, sums, dec.m_pairs, halving, bad)


def require_oracle(report: OracleReport) -> None:
    if not report.ok:
        raise OracleMismatch("; ".join(report.mismatches))
