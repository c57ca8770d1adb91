from __future__ import annotations

from hypothesis import strategies as st

from kotoric.complex import SimplicialComplex, mask_to_face, maximal_masks


@st.composite
def complexes(draw, max_m: int = 7, max_faces: int = 8) -> SimplicialComplex:
    """Random complex; vertices are whatever the drawn faces cover, relabelled 1..m."""
    m = draw(st.integers(1, max_m))
    raw = draw(st.lists(st.integers(1, (1 << m) - 1), min_size=1, max_size=max_faces))
    masks = maximal_masks(raw)
    used = 0
    for x in masks:
        used |= x
    labels = mask_to_face(used)
    pos = {v: i + 1 for i, v in enumerate(labels)}
    return SimplicialComplex(len(labels), tuple(tuple(pos[v] for v in mask_to_face(x)) for x in masks))


def unimodular(n: int, ops: list[tuple[int, int, int]]) -> list[list[int]]:
    """Product of elementary row operations r_i += s * r_j."""
    g = [[int(i == j) for j in range(n)] for i in range(n)]
    for i, j, s in ops:
        i, j = i % n, j % n
        if i == j:
            continue
        g[i] = [a + s * b for a, b in zip(g[i], g[j])]
    return g


def gl2(n: int, ops: list[tuple[int, int]]) -> list[list[int]]:
    g = [[int(i == j) for j in range(n)] for i in range(n)]
    for i, j in ops:
        i, j = i % n, j % n
        if i != j:
            g[i] = [(a + b) % 2 for a, b in zip(g[i], g[j])]
    return g
