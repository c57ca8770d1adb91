"""Acceptance gate: one printed PASS/FAIL line per criterion.

Run under pytest, or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import sys
import time
from math import comb
from functools import lru_cache
from pathlib import Path

import pytest
from hypothesis import HealthCheck, given, settings

sys.path.insert(0, str(Path(__file__).resolve().parent))

from conftest import complexes  # noqa: E402
from kotoric.cohomology import dims_from_masks, reduced_cohomology_dims  # noqa: E402
from kotoric.complex import SimplicialComplex  # noqa: E402
from kotoric.facering import a1_decomposition, degree_halving_check, quotient_presentation  # noqa: E402
from kotoric.instances import complex_projective_space, corpus, cp1_power, maximal_simplex_wedge  # noqa: E402
from kotoric.ko import classify, ko_table, witt_groups  # noqa: E402

PT = SimplicialComplex(1, ((1,),))


@lru_cache(maxsize=None)
def acceptance_corpus():
    return tuple(corpus(seed=2024, random_count=20))


@lru_cache(maxsize=None)
def corpus_results():
    """Witt counts, classification and A(1) split for every corpus instance."""
    out = []
    for inst in acceptance_corpus():
        w = witt_groups(inst)
        dec = a1_decomposition(quotient_presentation(inst.complex, inst.lam2, 2))
        out.append((inst, w, classify(inst, witt=w), dec))
    return tuple(out)


def _line(n: int, ok: bool, detail: str) -> str:
    return f"acceptance criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"


# 1 ------------------------------------------------------------------------

def criterion_1() -> tuple[bool, str]:
    t0 = time.perf_counter()
    problems = []
    for n in range(1, 7):
        inst = complex_projective_space(n)
        w = witt_groups(inst)
        full = ko_table(inst, witt=w)
        red = ko_table(inst, reduced=True, witt=w)
        if n % 2:
            expected = [1, 0, 0, 0]
            expected[n % 4] += 1
            tors = sorted(j for j in range(8) if red.torsion[j])
            if list(w.w) != expected or tors != sorted({(2 * n - 1) % 8, (2 * n - 2) % 8}):
                problems.append(f"CP{n}: w={w.w} reduced torsion at {tors}")
            if [red.torsion[j] for j in tors] != [1, 1]:
                problems.append(f"CP{n}: reduced torsion counts {red.torsion}")
        else:
            if w.w != (1, 0, 0, 0) or any(red.torsion):
                problems.append(f"CP{n}: w={w.w} reduced torsion {red.torsion}")
        if full.torsion[6] < 1 or full.torsion[7] < 1:
            problems.append(f"CP{n}: point torsion missing")
    dt = time.perf_counter() - t0
    ok = not problems and dt < 1.0
    return ok, f"CP^1..CP^6 Witt/KO torsion exact; {dt:.3f} s (limit 1 s)" + ("; " + "; ".join(problems) if problems else "")


# 2 ------------------------------------------------------------------------

def criterion_2() -> tuple[bool, str]:
    t0 = time.perf_counter()
    table = ko_table(complex_projective_space(2))
    got = [(table.free[j], table.torsion[j]) for j in range(8)]
    assembled = [(2, 0), (0, 0), (1, 0), (0, 0), (2, 0), (0, 0), (1, 1), (0, 1)]
    # published: reduced KO of CP^2 is Z in each even degree and 0 in odd
    # degrees; the point contributes KO^j = KO_{-j}(pt), Bott periodic
    reduced_cp2 = [(1, 0), (0, 0)] * 4
    point = {0: (1, 0), 7: (0, 1), 6: (0, 1), 4: (1, 0)}
    published = [tuple(a + b for a, b in zip(reduced_cp2[j], point.get(j, (0, 0)))) for j in range(8)]
    dt = time.perf_counter() - t0
    ok = got == assembled == published and dt < 1.0
    return ok, f"KO^*(CP^2) = {[table.group(j) for j in range(8)]}; matches assembled and published tables; {dt:.3f} s"


# 3 ------------------------------------------------------------------------

def criterion_3() -> tuple[bool, str]:
    t0 = time.perf_counter()
    results = corpus_results()
    bad = []
    for inst, w, _, dec in results:
        sums: dict[int, int] = {}
        for c in w.attribution:
            sums[c.degree + 1] = sums.get(c.degree + 1, 0) + c.dim
        top = max([*dec.s, *(2 * i for i in sums), 0])
        for d in range(top + 1):
            lhs = dec.s.get(d, 0)
            rhs = sums.get(d // 2, 0) if d % 2 == 0 else 0
            if lhs != rhs:
                bad.append(f"{inst.name} degree {d}: {lhs} vs {rhs}")
    dt = time.perf_counter() - t0
    n = len(results)
    ok = n >= 50 and not bad and dt < 60
    return ok, f"{n} instances, {len(bad)} mismatches; {dt:.2f} s (limit 60 s)" + ("; " + "; ".join(bad[:5]) if bad else "")


# 4 ------------------------------------------------------------------------

def criterion_4() -> tuple[bool, str]:
    bad = []
    for inst in acceptance_corpus():
        rep = degree_halving_check(inst.complex, inst.lam2)
        if not rep.ok:
            bad.append(f"{inst.name}: {rep.mismatches}")
    n = len(acceptance_corpus())
    return not bad, f"degree halving holds on {n - len(bad)}/{n} instances" + ("; " + "; ".join(bad[:5]) if bad else "")


# 5 ------------------------------------------------------------------------

def _brute_nonzero_acyclic(inst) -> tuple[int, list[int]]:
    rows = inst.lam2.rows
    seen = set()
    bad = []
    for coeffs in itertools.product((0, 1), repeat=len(rows)):
        v = 0
        for c, r in zip(coeffs, rows):
            if c:
                v ^= r
        if v == 0 or v in seen:
            continue
        seen.add(v)
        sub = [f & v for f in inst.complex.masks]
        if dims_from_masks(sub, method="dense"):
            bad.append(v)
    return len(seen), bad


def criterion_5() -> tuple[bool, str]:
    t0 = time.perf_counter()
    parts = []
    ok = True
    for n in (2, 3):
        inst = maximal_simplex_wedge(n)
        c = classify(inst)
        count, bad = _brute_nonzero_acyclic(inst)
        good = c.m_type and not bad and count == 2 ** (2 * n) - 1 and c.m_witness["checked"] == count
        ok &= good
        parts.append(f"n={n}: m_type={c.m_type}, {count} non-zero subcomplexes acyclic={not bad}")
    dt = time.perf_counter() - t0
    ok &= dt < 5
    return ok, "; ".join(parts) + f"; {dt:.2f} s (limit 5 s)"


# 6 ------------------------------------------------------------------------

def criterion_6() -> tuple[bool, str]:
    bad = []
    s_count = trivial_count = 0
    for inst, _, c, dec in corpus_results():
        if c.s_type:
            s_count += 1
            if not dec.all_trivial:
                bad.append(f"{inst.name}: S-type but Sq^2 pairs {dec.m_pairs}")
        has_reduced = sum(dec.dims.values()) > 1
        if dec.all_trivial and has_reduced:
            trivial_count += 1
            if not c.s_type:
                bad.append(f"{inst.name}: Sq^2 = 0 but not S-type")
    return not bad, (f"{s_count} S-type instances all Sq^2-trivial; {trivial_count} Sq^2-trivial instances all S-type"
                     + ("; " + "; ".join(bad[:5]) if bad else ""))


# 7 ------------------------------------------------------------------------

PROPERTY_CASES = 10_000


@settings(max_examples=PROPERTY_CASES, deadline=None, database=None,
          suppress_health_check=[HealthCheck.too_slow])
@given(complexes(max_m=6, max_faces=6))
def _euler_property(K):
    betti = reduced_cohomology_dims(K)
    lhs = sum((-1) ** (d % 2) * x for d, x in betti.items())
    rhs = sum(1 if x.bit_count() % 2 else -1 for x in K.face_masks())
    assert lhs == rhs


@settings(max_examples=PROPERTY_CASES, deadline=None, database=None,
          suppress_health_check=[HealthCheck.too_slow])
@given(complexes(max_m=6, max_faces=6))
def _cone_property(K):
    assert reduced_cohomology_dims(K.join(PT)) == {}


def criterion_7() -> tuple[bool, str]:
    bad = []
    for inst, w, c, _ in corpus_results():
        t = ko_table(inst, witt=w)
        if any(t.torsion[2 * i] != t.torsion[2 * i + 1] for i in range(4)):
            bad.append(f"{inst.name}: unpaired torsion {t.torsion}")
        if w.w[0] < 1:
            bad.append(f"{inst.name}: w0 = 0")
        if c.m_type != (w.w == (1, 0, 0, 0)):
            bad.append(f"{inst.name}: m_type {c.m_type} with w {w.w}")
    props = []
    for name, prop in (("Euler characteristic", _euler_property), ("cone acyclicity", _cone_property)):
        try:
            prop()
            props.append(f"{name} {PROPERTY_CASES} cases ok")
        except Exception as exc:  # report, then fail the criterion
            bad.append(f"{name}: {exc}")
    n = len(corpus_results())
    return not bad, f"structural invariants on {n} instances; " + ", ".join(props) + ("; " + "; ".join(bad[:5]) if bad else "")


# 8 ------------------------------------------------------------------------

def criterion_8() -> tuple[bool, str]:
    inst = cp1_power(12)
    runs = {}
    times = {}
    for workers in (1, 2, 4):
        t0 = time.perf_counter()
        runs[workers] = witt_groups(inst, workers=workers)
        times[workers] = time.perf_counter() - t0
    same = runs[1] == runs[2] == runs[4]
    # independent count: a support-s subset of the antipodal pairs gives S^(s-1)
    expected = [0, 0, 0, 0]
    for s in range(13):
        expected[s % 4] += comb(12, s)
    ok = same and list(runs[4].w) == expected and runs[4].subcomplex_count == 4096 and times[4] < 30
    return ok, (f"(CP^1)^12 n=12 m=24: w={runs[4].w}, 4096 subcomplexes, identical across 1/2/4 workers={same}; "
                f"times 1w {times[1]:.2f} s, 2w {times[2]:.2f} s, 4w {times[4]:.2f} s (limit 30 s)")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("n", range(1, 9))
def test_acceptance_criterion(n, capsys):
    ok, detail = CRITERIA[n - 1]()
    with capsys.disabled():
        print("\n" + _line(n, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failures = 0
    for i, crit in enumerate(CRITERIA, 1):
        ok, detail = crit()
        print(_line(i, ok, detail), flush=True)
        failures += not ok
    sys.exit(1 if failures else 0)
