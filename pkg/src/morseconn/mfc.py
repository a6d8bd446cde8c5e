"""The complex of discrete Morse functions M(K).

Vertices are primitive fields (single face/coface pairs); a set of them
spans a simplex when together they form a gradient field.  Validity is
hereditary, so simplices are enumerated by extending valid sets one
primitive at a time.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .morse import GradientField, _band_cycle, validate_gradient_field
from .simplicial import OrientedComplex, build_complex


class SizeGuardError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class PrimitiveField:
    face: int
    coface: int

    def label(self, K: OrientedComplex) -> str:
        return f"({K.label(self.face)},{K.label(self.coface)})"


def enumerate_primitive_fields(K: OrientedComplex) -> list[PrimitiveField]:
    """One primitive field per codimension-1 incidence, sorted by (face, coface)."""
    return sorted(PrimitiveField(f, s.id) for s in K for f, _ in K.face_ids(s.id))


def _extend(K, prims, max_dim):
    """All valid index tuples, by size; only valid sets are extended."""
    levels = [[(j,) for j in range(len(prims))]]
    while levels[-1] and (max_dim is None or len(levels) <= max_dim):
        nxt = []
        for S in levels[-1]:
            used = {x for j in S for x in (prims[j].face, prims[j].coface)}
            up = {prims[j].face: prims[j].coface for j in S}
            for j in range(S[-1] + 1, len(prims)):
                p = prims[j]
                if p.face in used or p.coface in used:
                    continue
                up[p.face] = p.coface
                if _band_cycle(K, up) is None:
                    nxt.append(S + (j,))
                del up[p.face]
        levels.append(nxt)
    return [lvl for lvl in levels if lvl]


class MorseFunctionComplex:
    def __init__(self, complex: OrientedComplex, primitives: list[PrimitiveField],
                 simplices: list[list[tuple[int, ...]]]):
        self.complex = complex
        self.primitives = primitives
        self.simplices = simplices
        self._index = {S: (d, n) for d, lvl in enumerate(simplices) for n, S in enumerate(lvl)}

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    @property
    def vertices(self) -> list[tuple[int, ...]]:
        return self.simplices[0] if self.simplices else []

    @property
    def edges(self) -> list[tuple[int, ...]]:
        return self.simplices[1] if len(self.simplices) > 1 else []

    def __len__(self) -> int:
        return sum(len(lvl) for lvl in self.simplices)

    def __iter__(self):
        for lvl in self.simplices:
            yield from lvl

    def counts(self) -> list[int]:
        return [len(lvl) for lvl in self.simplices]

    def canonical(self, S: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(set(S)))

    def is_simplex(self, S: Iterable[int]) -> bool:
        return self.canonical(S) in self._index

    def _require(self, S) -> tuple[int, ...]:
        S = self.canonical(S)
        if S not in self._index:
            raise ValueError(f"{self.label(S)} is not a simplex of M(K)")
        return S

    def simplex_of(self, pairs: Iterable[tuple[int, int]]) -> tuple[int, ...]:
        """Index tuple for a collection of (face, coface) id pairs."""
        pos = {(p.face, p.coface): j for j, p in enumerate(self.primitives)}
        return self.canonical(pos[tuple(pr)] for pr in pairs)

    def field_of(self, S: Iterable[int]) -> GradientField:
        S = self.canonical(S)
        return GradientField(self.complex, [(self.primitives[j].face, self.primitives[j].coface) for j in S],
                             check=False)

    def label(self, S: Iterable[int]) -> str:
        return "{" + ", ".join(self.primitives[j].label(self.complex) for j in sorted(S)) + "}"

    def components(self) -> list[list[tuple[int, ...]]]:
        """Simplices grouped by connectivity through nonempty faces."""
        parent = list(range(len(self.primitives)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            parent[find(a)] = find(b)
        groups: dict[int, list] = {}
        for S in self:
            groups.setdefault(find(S[0]), []).append(S)
        return sorted(groups.values(), key=lambda g: g[0])

    def transition_path(self, S1, S2) -> list[tuple[int, ...]] | None:
        """Shortest chain of codimension-1 face steps from S1 to S2 (BFS)."""
        S1, S2 = self._require(S1), self._require(S2)
        prev = {S1: None}
        queue = deque([S1])
        while queue:
            S = queue.popleft()
            if S == S2:
                out = []
                while S is not None:
                    out.append(S)
                    S = prev[S]
                return out[::-1]
            nbrs = [tuple(x for x in S if x != j) for j in S] if len(S) > 1 else []
            nbrs += [self.canonical(S + (j,)) for j in range(len(self.primitives)) if j not in S]
            for T in nbrs:
                if T in self._index and T not in prev:
                    prev[T] = S
                    queue.append(T)
        return None

    def to_dot(self) -> str:
        """The 1-skeleton in DOT format."""
        K = self.complex
        lines = ["graph MK {"]
        for (j,) in self.vertices:
            lines.append(f'  p{j} [label="{self.primitives[j].label(K)}"];')
        for a, b in self.edges:
            lines.append(f"  p{a} -- p{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def _vertex_names(self) -> list[str]:
        K = self.complex
        return [f"{K.label(p.face)}|{K.label(p.coface)}" for p in self.primitives]

    def as_complex(self) -> OrientedComplex:
        """M(K) as an ordinary simplicial complex (vertex names ``face|coface``)."""
        names = self._vertex_names()
        return build_complex([[names[j] for j in S] for S in self])

    def validate_matching(self, pairs: Iterable[tuple[Iterable[int], Iterable[int]]]) -> list[str]:
        """C1/C2 violations of a matching on M(K) given as (face, coface) simplex pairs."""
        MK = self.as_complex()
        names = self._vertex_names()

        def sid(S):
            return MK.find(names[j] for j in self._require(S))

        return validate_gradient_field(MK, [(sid(a), sid(b)) for a, b in pairs])


def build_mfc(K: OrientedComplex, max_dim: int | None = None, size_guard: int = 24) -> MorseFunctionComplex:
    prims = enumerate_primitive_fields(K)
    if len(prims) > size_guard:
        raise SizeGuardError(
            f"{len(prims)} primitive fields exceed the size guard of {size_guard}; M(K) grows exponentially"
        )
    levels = _extend(K, prims, max_dim) if prims else []
    return MorseFunctionComplex(K, prims, levels)


def classify_face_step(M: MorseFunctionComplex, S1, S2) -> str:
    """'death' if S2 adds one pair to S1, 'birth' if it removes one, else 'none'."""
    S1, S2 = M._require(S1), M._require(S2)
    a, b = set(S1), set(S2)
    if a < b and len(b) - len(a) == 1:
        return "death"
    if b < a and len(a) - len(b) == 1:
        return "birth"
    return "none"


__all__ = [
    "PrimitiveField", "MorseFunctionComplex", "SizeGuardError", "enumerate_primitive_fields",
    "build_mfc", "classify_face_step",
]
