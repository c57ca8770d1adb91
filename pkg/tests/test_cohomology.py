from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from conftest import complexes
from kotoric.cohomology import (
    build_cochain_complex,
    dims_from_masks,
    reduced_cohomology_dims,
    reduced_euler_characteristic,
)
from kotoric.complex import SimplicialComplex, mask_to_face

PT = SimplicialComplex(1, ((1,),))
S0 = SimplicialComplex(2, ((1,), (2,)))
TRI = SimplicialComplex.simplex_boundary(2)


def cone(K: SimplicialComplex) -> SimplicialComplex:
    return K.join(PT)


def components(K: SimplicialComplex) -> int:
    parent = list(range(K.m + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in K.maximal_faces:
        for v in f[1:]:
            parent[find(v)] = find(f[0])
    return len({find(v) for v in K.vertices})


class TestCochains:
    def test_point(self):
        cc = build_cochain_complex(PT)
        assert cc.rank(-1) == 1 and cc.rank(0) == 1
        assert cc.coboundary[-1].to_lists() == [[1]]

    def test_s0(self):
        cc = build_cochain_complex(S0)
        assert cc.rank(0) == 2 and cc.coboundary[-1].to_lists() == [[1], [1]]

    def test_triangle(self):
        cc = build_cochain_complex(TRI)
        assert [cc.rank(d) for d in (-1, 0, 1)] == [1, 3, 3]

    @given(complexes())
    def test_delta_squared(self, K):
        cc = build_cochain_complex(K)
        for d, M in cc.coboundary.items():
            if d + 1 in cc.coboundary:
                assert (cc.coboundary[d + 1] @ M).is_zero()


class TestReducedCohomology:
    def test_empty(self):
        assert reduced_cohomology_dims(SimplicialComplex.empty()) == {-1: 1}

    def test_void(self):
        assert reduced_cohomology_dims(SimplicialComplex(0, (), void=True)) == {}

    def test_tetrahedron_boundary(self):
        assert reduced_cohomology_dims(SimplicialComplex.simplex_boundary(3)) == {2: 1}

    def test_s0(self):
        assert reduced_cohomology_dims(S0) == {0: 1}

    def test_simplex_is_acyclic(self):
        assert reduced_cohomology_dims(SimplicialComplex.simplex(4)) == {}

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_cross_polytope_sphere(self, n):
        K = SimplicialComplex.cross_polytope_boundary(n)
        assert reduced_cohomology_dims(K) == {n - 1: 1}
        assert reduced_cohomology_dims(K, method="dense") == {n - 1: 1}

    def test_torus(self):
        # 7-vertex triangulation of the torus
        faces = [(i % 7 + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1) for i in range(7)]
        faces += [(i % 7 + 1, (i + 2) % 7 + 1, (i + 3) % 7 + 1) for i in range(7)]
        T = SimplicialComplex(7, tuple(faces))
        assert reduced_cohomology_dims(T) == {1: 2, 2: 1}

    def test_join_of_spheres(self):
        K = SimplicialComplex.polygon(5).join(S0).join(TRI)
        assert reduced_cohomology_dims(K) == {4: 1}


@settings(max_examples=500, deadline=None)
@given(complexes(max_m=6, max_faces=6))
def test_euler_characteristic(K):
    """Alternating sum of reduced Betti numbers equals the reduced face-count sum."""
    betti = reduced_cohomology_dims(K)
    lhs = sum((-1) ** (d % 2) * x for d, x in betti.items())
    rhs = sum(1 if x.bit_count() % 2 else -1 for x in K.face_masks())
    assert lhs == rhs == reduced_euler_characteristic(K)


@settings(max_examples=500, deadline=None)
@given(complexes(max_m=6, max_faces=6))
def test_cone_acyclic(K):
    C = cone(K)
    assert reduced_cohomology_dims(C) == {}
    assert dims_from_masks(C.masks, method="dense") == {}


@given(complexes())
def test_h0_counts_components(K):
    assert reduced_cohomology_dims(K).get(0, 0) == components(K) - 1


@settings(max_examples=300, deadline=None)
@given(complexes(max_m=8, max_faces=10))
def test_fast_path_matches_dense(K):
    assert reduced_cohomology_dims(K) == reduced_cohomology_dims(K, method="dense")


@settings(max_examples=200, deadline=None)
@given(complexes(max_m=5, max_faces=5), complexes(max_m=4, max_faces=4))
def test_joins_match_dense(A, B):
    J = A.join(B)
    assert reduced_cohomology_dims(J) == reduced_cohomology_dims(J, method="dense")


def test_full_subcomplexes_of_octahedron():
    K = SimplicialComplex.cross_polytope_boundary(3)
    for s in range(1 << 6):
        sub, _ = K.full_subcomplex(mask_to_face(s))
        assert reduced_cohomology_dims(sub) == reduced_cohomology_dims(sub, method="dense")
