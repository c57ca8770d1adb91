"""Standard toric instances and random generators for test corpora."""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from .charmatrix import CharMatrix, ToricInstance, bareiss_det, iterated_wedge
from .complex import SimplicialComplex, stellar_subdivide
from .errors import ValidationError


def complex_projective_space(n: int) -> ToricInstance:
    """CP^n: boundary of the n-simplex with lambda = (I_n | -1 column)."""
    rows = [[1 if i == j else 0 for j in range(n)] + [-1] for i in range(n)]
    return ToricInstance(SimplicialComplex.simplex_boundary(n), CharMatrix.from_lists(rows), f"CP{n}")


def cp1_power(n: int) -> ToricInstance:
    """(CP^1)^n over the n-cube; antipodal vertices i and i + n."""
    rows = [[1 if i == j else 0 for j in range(n)] + [-1 if i == j else 0 for j in range(n)] for i in range(n)]
    return ToricInstance(SimplicialComplex.cross_polytope_boundary(n), CharMatrix.from_lists(rows), f"CP1^{n}")


def product(a: ToricInstance, b: ToricInstance) -> ToricInstance:
    """Product manifold: join of the complexes, block-diagonal lambda."""
    K = a.complex.join(b.complex)
    rows = [list(r) + [0] * b.m for r in a.lam.entries]
    rows += [[0] * a.m + list(r) for r in b.lam.entries]
    return ToricInstance(K, CharMatrix.from_lists(rows), f"{a.name}x{b.name}")


def _base_sphere(rng: random.Random, n: int, max_m: int) -> SimplicialComplex:
    choices = ["simplex"]
    if n == 2 and max_m >= 4:
        choices.append("polygon")
    if n >= 2 and max_m >= n + 3:
        choices.append("join")
    kind = rng.choice(choices)
    if kind == "polygon":
        return SimplicialComplex.polygon(rng.randint(4, max_m))
    if kind == "join":
        k = rng.randint(1, n - 1)
        return SimplicialComplex.simplex_boundary(k).join(SimplicialComplex.simplex_boundary(n - k))
    return SimplicialComplex.simplex_boundary(n)


def random_polytopal_sphere(rng: random.Random, n: int, max_m: int) -> SimplicialComplex:
    """Dual of a random simple n-polytope with at most ``max_m`` facets.

    Starts from a simplex, a polygon or a join of simplex boundaries and
    applies stellar subdivisions of random facets (vertex truncations).
    """
    K = _base_sphere(rng, n, max_m)
    target = rng.randint(K.m, max(K.m, max_m))
    while K.m < target:
        facet = rng.choice(K.maximal_faces)
        K = stellar_subdivide(K, facet)
    return K


def random_char_matrix(rng: random.Random, K: SimplicialComplex, attempts: int = 200,
                       retries: int = 40) -> CharMatrix | None:
    """Rejection-sample a lambda with entries in {-1, 0, 1}.

    The first maximal face gets the identity (a normalization up to
    GL(n, Z)); every later column is drawn at random and redrawn while some
    fully assigned maximal face has a minor other than +-1.
    """
    n = K.dim + 1
    first = K.maximal_faces[0]
    order = list(first) + [v for v in K.vertices if v not in first]
    candidates = [c for c in itertools.product((-1, 0, 1), repeat=n) if any(c)]
    for _ in range(attempts):
        cols: dict[int, tuple[int, ...]] = {v: tuple(int(i == k) for i in range(n)) for k, v in enumerate(first)}
        ok = True
        for v in order[n:]:
            relevant = [f for f in K.maximal_faces if v in f and all(u in cols or u == v for u in f)]
            for _ in range(retries):
                cols[v] = rng.choice(candidates)
                lam = _partial(cols, n)
                if all(abs(lam(f)) == 1 for f in relevant):
                    break
            else:
                ok = False
                break
        if ok:
            return CharMatrix(tuple(tuple(cols[v][i] for v in K.vertices) for i in range(n)))
    return None


def _partial(cols: dict[int, tuple[int, ...]], n: int):
    def minor(face):
        return bareiss_det([[cols[v][i] for v in face] for i in range(n)])

    return minor


def random_instance(rng: random.Random, n: int, max_m: int, name: str = "") -> ToricInstance | None:
    K = random_polytopal_sphere(rng, n, max_m)
    lam = random_char_matrix(rng, K)
    if lam is None:
        return None
    try:
        return ToricInstance(K, lam, name or f"rand_n{n}_m{K.m}")
    except ValidationError:
        return None


def base_instances() -> list[ToricInstance]:
    return [complex_projective_space(n) for n in range(1, 5)] + [cp1_power(n) for n in range(1, 5)]


def wedge_family(base: list[ToricInstance]) -> Iterator[ToricInstance]:
    """Every base instance, its single wedges and its double wedges."""
    for inst in base:
        yield inst
        for j in inst.complex.vertices:
            yield iterated_wedge(inst, (j,))
        for pair in itertools.combinations(inst.complex.vertices, 2):
            yield iterated_wedge(inst, pair)


def random_corpus(seed: int, count: int, max_m: int = 9) -> list[ToricInstance]:
    rng = random.Random(seed)
    out: list[ToricInstance] = []
    while len(out) < count:
        n = rng.choice((2, 2, 3, 3, 4))
        inst = random_instance(rng, n, max_m, name=f"rand{len(out)}")
        if inst is not None:
            out.append(inst)
    return out


def corpus(seed: int = 2024, random_count: int = 20) -> list[ToricInstance]:
    return list(wedge_family(base_instances())) + random_corpus(seed, random_count)


def maximal_simplex_wedge(n: int) -> ToricInstance:
    """CP^n wedged at every vertex of the maximal face {1, ..., n}."""
    inst = complex_projective_space(n)
    return iterated_wedge(inst, tuple(range(1, n + 1)))


__all__ = [
    "complex_projective_space", "cp1_power", "product", "random_polytopal_sphere",
    "random_char_matrix", "random_instance", "base_instances", "wedge_family",
    "random_corpus", "corpus", "maximal_simplex_wedge",
]
