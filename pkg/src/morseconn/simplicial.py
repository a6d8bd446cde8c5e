"""Finite oriented simplicial complexes.

A simplex is stored with an ordered vertex tuple; the order is its
orientation.  Incidence numbers follow the alternating-sign rule, so the
simplicial boundary squares to zero by construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence


class ComplexError(ValueError):
    """Raised for malformed complex input."""


def permutation_sign(source: Sequence, target: Sequence) -> int:
    """Sign of the permutation taking ``source`` to ``target``."""
    pos = {v: i for i, v in enumerate(source)}
    perm = [pos[v] for v in target]
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class OrientedSimplex:
    id: int
    vertices: tuple[str, ...]
    label: str

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    @property
    def key(self) -> frozenset:
        return frozenset(self.vertices)

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True, eq=False)
class OrientedComplex:
    """Immutable oriented simplicial complex.

    Use :func:`build_complex` to construct one; ids are dense integers
    assigned dimension-major, then lexicographically by sorted vertex tuple.
    """

    simplices: tuple[OrientedSimplex, ...]
    _by_key: Mapping[frozenset, int] = field(repr=False)
    _by_label: Mapping[str, int] = field(repr=False)
    _faces: tuple[tuple[tuple[int, int], ...], ...] = field(repr=False)
    _cofaces: tuple[tuple[tuple[int, int], ...], ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.simplices)

    def __iter__(self):
        return iter(self.simplices)

    def __getitem__(self, sid: int) -> OrientedSimplex:
        return self.simplices[sid]

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrientedComplex):
            return NotImplemented
        return self.simplices == other.simplices

    def __hash__(self) -> int:
        return hash(self.simplices)

    @property
    def dim(self) -> int:
        return max(s.dim for s in self.simplices)

    def ids_of_dim(self, q: int) -> list[int]:
        return [s.id for s in self.simplices if s.dim == q]

    def count(self, q: int) -> int:
        return len(self.ids_of_dim(q))

    @property
    def vertex_order(self) -> list[str]:
        return [s.vertices[0] for s in self.simplices if s.dim == 0]

    def find(self, vertices: Iterable[str]) -> int:
        """Id of the simplex with the given vertex set."""
        key = frozenset(vertices)
        try:
            return self._by_key[key]
        except KeyError:
            raise KeyError(f"no simplex with vertices {sorted(key)}") from None

    def resolve(self, name: str) -> int:
        """Look a simplex up by label, or by a comma-separated vertex list."""
        if name in self._by_label:
            return self._by_label[name]
        parts = [p.strip() for p in name.split(",")]
        key = frozenset(parts)
        if len(key) == len(parts) and key in self._by_key:
            return self._by_key[key]
        raise KeyError(f"unknown simplex {name!r}")

    def label(self, sid: int) -> str:
        return self.simplices[sid].label

    def faces(self, sid: int) -> list[tuple[OrientedSimplex, int]]:
        return [(self.simplices[f], s) for f, s in self._faces[sid]]

    def cofaces(self, sid: int) -> list[tuple[OrientedSimplex, int]]:
        return [(self.simplices[c], s) for c, s in self._cofaces[sid]]

    def face_ids(self, sid: int) -> tuple[tuple[int, int], ...]:
        return self._faces[sid]

    def coface_ids(self, sid: int) -> tuple[tuple[int, int], ...]:
        return self._cofaces[sid]

    def incidence(self, sigma: int | OrientedSimplex, alpha: int | OrientedSimplex) -> int:
        s = sigma.id if isinstance(sigma, OrientedSimplex) else sigma
        a = alpha.id if isinstance(alpha, OrientedSimplex) else alpha
        for f, sign in self._faces[s]:
            if f == a:
                return sign
        return 0

    def boundary_matrix(self, q: int):
        """Simplicial boundary C_q -> C_{q-1} as an integer array."""
        import numpy as np

        cols = self.ids_of_dim(q)
        rows = self.ids_of_dim(q - 1) if q > 0 else []
        row_pos = {r: i for i, r in enumerate(rows)}
        mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
        if q == 0:
            return mat
        for j, c in enumerate(cols):
            for f, sign in self._faces[c]:
                mat[row_pos[f], j] = sign
        return mat


def incidence(sigma: OrientedSimplex, alpha: OrientedSimplex) -> int:
    """Incidence number [sigma : alpha] of two oriented simplices."""
    if alpha.dim != sigma.dim - 1 or not alpha.key < sigma.key:
        return 0
    (missing,) = sigma.key - alpha.key
    k = sigma.vertices.index(missing)
    induced = tuple(v for v in sigma.vertices if v != missing)
    return (-1) ** k * permutation_sign(induced, alpha.vertices)


def _auto_label(vertices: Sequence[str]) -> str:
    return ",".join(vertices)


def build_complex(
    facets: Iterable[Sequence[str]],
    labels: Mapping[frozenset, str] | None = None,
) -> OrientedComplex:
    """Close a list of ordered vertex lists under taking faces.

    Listed simplices keep their vertex order; generated faces use the
    ascending global vertex order (lexicographic on vertex names).
    ``labels`` optionally names simplices by vertex set.
    """
    explicit: dict[frozenset, tuple[str, ...]] = {}
    for facet in facets:
        verts = tuple(str(v) for v in facet)
        if not verts:
            raise ComplexError("empty facet")
        key = frozenset(verts)
        if len(key) != len(verts):
            raise ComplexError(f"duplicate vertex in {list(verts)}")
        if key in explicit:
            if permutation_sign(explicit[key], verts) != 1:
                raise ComplexError(
                    f"conflicting orientations {list(explicit[key])} and {list(verts)}"
                )
            continue
        explicit[key] = verts
    if not explicit:
        raise ComplexError("empty complex")

    oriented: dict[frozenset, tuple[str, ...]] = {}
    for key, verts in explicit.items():
        ordered = sorted(key)
        for size in range(1, len(ordered) + 1):
            for sub in combinations(ordered, size):
                oriented.setdefault(frozenset(sub), sub)
    oriented.update(explicit)

    order = sorted(oriented, key=lambda k: (len(k), sorted(k)))
    labels = dict(labels or {})
    simplices = []
    by_label: dict[str, int] = {}
    for sid, key in enumerate(order):
        verts = oriented[key]
        label = labels.get(key) or (verts[0] if len(verts) == 1 else _auto_label(sorted(key)))
        if label in by_label:
            raise ComplexError(f"duplicate simplex name {label!r}")
        by_label[label] = sid
        simplices.append(OrientedSimplex(sid, verts, label))
    by_key = {key: sid for sid, key in enumerate(order)}

    faces: list[list[tuple[int, int]]] = [[] for _ in simplices]
    cofaces: list[list[tuple[int, int]]] = [[] for _ in simplices]
    for s in simplices:
        if s.dim == 0:
            continue
        for v in s.vertices:
            fid = by_key[s.key - {v}]
            sign = incidence(s, simplices[fid])
            faces[s.id].append((fid, sign))
            cofaces[fid].append((s.id, sign))
    return OrientedComplex(
        simplices=tuple(simplices),
        _by_key=by_key,
        _by_label=by_label,
        _faces=tuple(tuple(sorted(f)) for f in faces),
        _cofaces=tuple(tuple(sorted(c)) for c in cofaces),
    )
