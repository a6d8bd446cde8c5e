"""Standard test complexes and random complexes/fields."""
from __future__ import annotations

import random
from itertools import combinations

from .morse import GradientField, _band_cycle, boundary_flow, count_paths
from .simplicial import OrientedComplex, build_complex


def point() -> OrientedComplex:
    return build_complex([["a"]])


def cycle_graph(n: int = 6) -> OrientedComplex:
    names = [f"c{i}" for i in range(n)]
    return build_complex([[names[i], names[(i + 1) % n]] for i in range(n)])


def path_graph(n: int) -> OrientedComplex:
    names = [f"p{i}" for i in range(n)]
    if n == 1:
        return build_complex([names])
    return build_complex([[names[i], names[i + 1]] for i in range(n - 1)])


def simplex_boundary(dim: int = 3) -> OrientedComplex:
    """Boundary of the ``dim``-simplex (a (dim-1)-sphere)."""
    names = [f"s{i}" for i in range(dim + 1)]
    return build_complex(list(combinations(names, dim)))


def projective_plane() -> OrientedComplex:
    """Minimal 6-vertex triangulation of the real projective plane."""
    tris = [(1, 2, 4), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 5, 6),
            (2, 3, 5), (2, 3, 6), (2, 4, 5), (3, 4, 6), (4, 5, 6)]
    return build_complex([[f"r{i}" for i in t] for t in tris])


def torus() -> OrientedComplex:
    """Seven-vertex (Moebius-Kantor) torus."""
    tris = []
    for i in range(7):
        tris.append((i, (i + 1) % 7, (i + 3) % 7))
        tris.append((i, (i + 2) % 7, (i + 3) % 7))
    return build_complex([[f"t{i}" for i in t] for t in tris])


def random_complex(rng: random.Random, max_vertices: int = 12, max_dim: int = 2) -> OrientedComplex:
    """Random closure of edges and triangles on at most ``max_vertices`` vertices."""
    n = rng.randint(2, max_vertices)
    names = [f"x{i:02d}" for i in range(n)]
    facets = []
    if max_dim >= 2 and n >= 3:
        for _ in range(rng.randint(0, 2 * n)):
            tri = rng.sample(names, 3)
            facets.append(tri)
    for _ in range(rng.randint(1, n)):
        facets.append(rng.sample(names, 2))
    # occasional isolated vertices
    for v in names:
        if rng.random() < 0.1:
            facets.append([v])
    unique: dict[frozenset, list[str]] = {}
    for f in facets:
        unique.setdefault(frozenset(f), f)
    return build_complex(unique.values())


def random_field(K: OrientedComplex, rng: random.Random, density: float = 0.8) -> GradientField:
    """Greedy random acyclic matching: shuffle all incidences, keep the legal ones."""
    incidences = [(f, s.id) for s in K for f, _ in K.face_ids(s.id)]
    rng.shuffle(incidences)
    up: dict[int, int] = {}
    used: set[int] = set()
    for a, b in incidences:
        if a in used or b in used or rng.random() > density:
            continue
        up[a] = b
        if _band_cycle(K, up):
            del up[a]
            continue
        used.update((a, b))
    return GradientField(K, up.items(), check=False)


def cancellable_pairs(V: GradientField) -> list[tuple[int, int]]:
    """Critical (sigma, alpha) pairs joined by exactly one gradient path."""
    K = V.complex
    out = []
    for q in range(1, K.dim + 1):
        for sigma in V.critical(q):
            counts = boundary_flow(V, sigma, signed=False)
            out.extend((sigma, a) for a, c in sorted(counts.items()) if c == 1)
    return out


__all__ = [
    "point", "cycle_graph", "path_graph", "simplex_boundary", "projective_plane",
    "torus", "random_complex", "random_field", "cancellable_pairs", "count_paths",
]
