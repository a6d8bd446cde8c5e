"""Discrete Morse functions, gradient vector fields and Morse chain complexes.

Sign convention for a gradient path: each step through a pair
``(a_i, b_i)`` that leaves ``b_i`` by the face ``a_{i+1}`` contributes
``-[b_i:a_i] * [b_i:a_{i+1}]``; a boundary coefficient additionally
prepends the seed incidence ``[sigma:a_0]``.  With this convention the
Morse boundary squares to zero over the integers, which
:func:`build_morse_complex` enforces.
"""
from __future__ import annotations

import sys
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np

from .linalg import check_ring, invariant_factors, rank, reduce
from .simplicial import OrientedComplex


class FieldError(ValueError):
    """A set of pairs that is not a gradient vector field."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


class MorseComplexError(RuntimeError):
    """The Morse boundary failed to square to zero (sign bug)."""


# ---------------------------------------------------------------- functions

def validate_morse_function(K: OrientedComplex, values: Mapping[int, float]) -> list[str]:
    """Violations of the two discrete Morse conditions; empty if ``values`` is Morse."""
    missing = [s.label for s in K if s.id not in values]
    if missing:
        raise KeyError(f"no value for simplices {missing}")
    out = []
    for s in K:
        fs = values[s.id]
        up = [c for c, _ in K.coface_ids(s.id) if values[c] <= fs]
        down = [f for f, _ in K.face_ids(s.id) if values[f] >= fs]
        if len(up) > 1:
            out.append(f"{s.label}: cofaces with value <= f: {[K.label(c) for c in up]}")
        if len(down) > 1:
            out.append(f"{s.label}: faces with value >= f: {[K.label(f) for f in down]}")
    return out


def gradient_field_of(K: OrientedComplex, values: Mapping[int, float]) -> "GradientField":
    violations = validate_morse_function(K, values)
    if violations:
        raise FieldError(violations)
    pairs = [
        (f, s.id)
        for s in K
        for f, _ in K.face_ids(s.id)
        if values[f] >= values[s.id]
    ]
    return GradientField(K, pairs)


def function_from_field(V: "GradientField") -> dict[int, float]:
    """A discrete Morse function whose gradient field is exactly ``V``.

    Values are positions in a topological order of the modified Hasse
    diagram (non-pair incidences point up, pairs point down).
    """
    K = V.complex
    succ: dict[int, list[int]] = defaultdict(list)
    indeg = [0] * len(K)
    for s in K:
        for f, _ in K.face_ids(s.id):
            a, b = (s.id, f) if V.up.get(f) == s.id else (f, s.id)
            succ[a].append(b)
            indeg[b] += 1
    ready = sorted(i for i in range(len(K)) if indeg[i] == 0)
    values: dict[int, float] = {}
    while ready:
        node = ready.pop(0)
        values[node] = float(len(values))
        for nxt in succ[node]:
            indeg[nxt] -= 1
            if indeg[nxt] == 0:
                ready.append(nxt)
    if len(values) != len(K):
        raise FieldError(["modified Hasse diagram has a cycle"])
    return values


# ------------------------------------------------------------------ fields

def _band_cycle(K: OrientedComplex, up: Mapping[int, int]) -> list[int] | None:
    """A directed cycle of p-simplices a -> a' (a' a face of up[a]), if any."""
    WHITE, GREY, BLACK = 0, 1, 2
    color: dict[int, int] = {}
    for root in sorted(up):
        if color.get(root, WHITE) != WHITE:
            continue
        stack = [(root, iter(K.face_ids(up[root])))]
        color[root] = GREY
        trail = [root]
        while stack:
            node, it = stack[-1]
            for f, _ in it:
                if f == node or f not in up:
                    continue
                c = color.get(f, WHITE)
                if c == GREY:
                    return trail[trail.index(f):]
                if c == WHITE:
                    color[f] = GREY
                    trail.append(f)
                    stack.append((f, iter(K.face_ids(up[f]))))
                    break
            else:
                color[node] = BLACK
                trail.pop()
                stack.pop()
    return None


def validate_gradient_field(K: OrientedComplex, pairs: Iterable[tuple[int, int]]) -> list[str]:
    """Violations of the matching (C1) and acyclicity (C2) conditions."""
    pairs = list(pairs)
    out = []
    n = len(K)
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise KeyError(f"unknown simplex id in pair {(a, b)}")
        if K.incidence(b, a) == 0:
            raise ValueError(f"pair ({K.label(a)}, {K.label(b)}) is not a codimension-1 face pair")
    seen: dict[int, tuple[int, int]] = {}
    for pair in pairs:
        for sid in pair:
            if sid in seen and seen[sid] != pair:
                out.append(f"matching: {K.label(sid)} appears in two pairs")
            seen.setdefault(sid, pair)
    if out:
        return out
    up = dict(pairs)
    cycle = _band_cycle(K, up)
    if cycle:
        labels = " -> ".join(K.label(a) for a in cycle + cycle[:1])
        out.append(f"acyclicity: closed V-path {labels}")
    return out


class GradientField:
    """Acyclic partial matching of face/coface pairs on a complex."""

    def __init__(self, complex: OrientedComplex, pairs: Iterable[tuple[int, int]] = (), check: bool = True):
        self.complex = complex
        self.pairs = frozenset((int(a), int(b)) for a, b in pairs)
        if check:
            violations = validate_gradient_field(complex, self.pairs)
            if violations:
                raise FieldError(violations)
        self.up = {a: b for a, b in self.pairs}
        self.down = {b: a for a, b in self.pairs}

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradientField):
            return NotImplemented
        return self.complex == other.complex and self.pairs == other.pairs

    def __hash__(self) -> int:
        return hash(self.pairs)

    def __repr__(self) -> str:
        K = self.complex
        body = ", ".join(f"({K.label(a)},{K.label(b)})" for a, b in sorted(self.pairs))
        return f"GradientField({{{body}}})"

    def __len__(self) -> int:
        return len(self.pairs)

    def is_critical(self, sid: int) -> bool:
        return sid not in self.up and sid not in self.down

    def critical(self, q: int | None = None) -> list[int]:
        ids = range(len(self.complex)) if q is None else self.complex.ids_of_dim(q)
        return [i for i in ids if self.is_critical(i)]

    def critical_counts(self) -> list[int]:
        return [len(self.critical(q)) for q in range(self.complex.dim + 1)]

    def with_pairs(self, pairs: Iterable[tuple[int, int]]) -> "GradientField":
        return GradientField(self.complex, pairs)


# ------------------------------------------------------------------- paths

@dataclass(frozen=True)
class GradientPath:
    sequence: tuple[int, ...]
    sign: int

    def labels(self, K: OrientedComplex) -> list[str]:
        return [K.label(s) for s in self.sequence]


def _default_band(K: OrientedComplex, start: int) -> str:
    return "up" if K[start].dim == 0 else "down"


def enumerate_paths(V: GradientField, start: int, end: int, band: str | None = None) -> list[GradientPath]:
    """All gradient V-paths from ``start`` to ``end``.

    Equal dimensions: ``band='down'`` walks q-simplices through the
    (q-1, q) pairs, ``band='up'`` walks q-simplices through the (q, q+1)
    pairs (the only option for vertices).  If ``end`` is one dimension
    below ``start``, the path is seeded at each face of ``start`` and the
    seed incidence is folded into its sign.
    """
    K = V.complex
    ds, de = K[start].dim, K[end].dim
    if ds == de + 1:
        out = []
        for a0, s in K.face_ids(start):
            for p in _walk_up(V, a0, end):
                out.append(GradientPath((start,) + p.sequence, s * p.sign))
        return sorted(out, key=lambda p: p.sequence)
    if ds != de:
        raise ValueError("start and end must have equal dimension (or end one below start)")
    if start == end:
        return [GradientPath((start,), 1)]
    band = band or _default_band(K, start)
    walker = _walk_up if band == "up" else _walk_down
    return sorted(walker(V, start, end), key=lambda p: p.sequence)


def _walk_up(V: GradientField, start: int, end: int) -> Iterator[GradientPath]:
    K = V.complex

    def rec(a: int, seq: tuple[int, ...], sign: int):
        if a == end:
            yield GradientPath(seq, sign)
            return
        b = V.up.get(a)
        if b is None:
            return
        sa = K.incidence(b, a)
        for f, s in K.face_ids(b):
            if f != a:
                yield from rec(f, seq + (b, f), sign * -sa * s)

    yield from rec(start, (start,), 1)


def _walk_down(V: GradientField, start: int, end: int) -> Iterator[GradientPath]:
    K = V.complex

    def rec(b: int, seq: tuple[int, ...], sign: int):
        if b == end and len(seq) > 1:
            yield GradientPath(seq, sign)
            return
        came = V.down.get(b)
        for a, s in K.face_ids(b):
            if a == came:
                continue
            nb = V.up.get(a)
            if nb is None:
                continue
            yield from rec(nb, seq + (a, nb), sign * -s * K.incidence(nb, a))

    yield from rec(start, (start,), 1)


def _recursion_headroom(K: OrientedComplex) -> None:
    need = 4 * len(K) + 200
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


def flow_up(V: GradientField, start: int, targets=None, signed: bool = True) -> dict[int, int]:
    """Signed count of up-band paths from ``start`` to each target simplex.

    ``targets`` defaults to the critical simplices of ``V`` (where up-band
    paths end anyway).  Paths are not continued past a target.
    """
    K = V.complex
    _recursion_headroom(K)
    targets = None if targets is None else set(targets)
    memo: dict[int, dict[int, int]] = {}

    def is_target(a):
        return V.is_critical(a) if targets is None else a in targets

    def rec(a: int) -> dict[int, int]:
        if a in memo:
            return memo[a]
        out: dict[int, int] = defaultdict(int)
        if is_target(a):
            out[a] = 1
        else:
            b = V.up.get(a)
            if b is not None:
                sa = K.incidence(b, a)
                for f, s in K.face_ids(b):
                    if f == a:
                        continue
                    w = -sa * s if signed else 1
                    for t, c in rec(f).items():
                        out[t] += w * c
        memo[a] = {t: c for t, c in out.items() if c}
        return memo[a]

    return dict(rec(start))


def flow_down(V: GradientField, start: int, targets, signed: bool = True, truncate: bool = False) -> dict[int, int]:
    """Signed count of down-band paths from q-simplex ``start`` to each target.

    A start that is itself a target receives the trivial path (+1).  By
    default paths continue through intermediate targets; ``truncate``
    stops them at the first target reached.
    """
    K = V.complex
    _recursion_headroom(K)
    targets = set(targets)
    memo: dict[int, dict[int, int]] = {}

    def expand(b: int) -> dict[int, int]:
        out: dict[int, int] = defaultdict(int)
        came = V.down.get(b)
        for a, s in K.face_ids(b):
            if a == came:
                continue
            nb = V.up.get(a)
            if nb is None:
                continue
            w = -s * K.incidence(nb, a) if signed else 1
            for t, c in rec(nb).items():
                out[t] += w * c
        return out

    def rec(b: int) -> dict[int, int]:
        if b in memo:
            return memo[b]
        if b in targets:
            out = {b: 1} if truncate else _merge({b: 1}, expand(b))
        else:
            out = expand(b)
        memo[b] = {t: c for t, c in out.items() if c}
        return memo[b]

    result = expand(start)
    if start in targets:
        result[start] += 1
    return {t: c for t, c in result.items() if c}


def _merge(a: Mapping[int, int], b: Mapping[int, int]) -> dict[int, int]:
    out: dict[int, int] = defaultdict(int)
    for d in (a, b):
        for k, v in d.items():
            out[k] += v
    return out


def boundary_flow(V: GradientField, sigma: int, signed: bool = True) -> dict[int, int]:
    """Morse boundary of ``sigma`` as {critical face-dimension simplex: coefficient}."""
    K = V.complex
    out: dict[int, int] = defaultdict(int)
    for a0, s in K.face_ids(sigma):
        for t, c in flow_up(V, a0, signed=signed).items():
            out[t] += (s if signed else 1) * c
    return {t: c for t, c in out.items() if c}


def count_paths(V: GradientField, sigma: int, alpha: int) -> int:
    """Number of boundary-form gradient paths from ``sigma`` down to ``alpha``."""
    return boundary_flow(V, sigma, signed=False).get(alpha, 0)


def connectedness_coefficient(V: GradientField, sigma: int, alpha: int, truncate_at=None) -> int:
    """Connectedness coefficient n(sigma, alpha) on the field ``V``.

    ``alpha`` one dimension below ``sigma`` gives the boundary form; equal
    dimensions give the same-dimension form (down band for q >= 1, up band
    for vertices), with n(sigma, sigma) = 1.
    """
    K = V.complex
    if not V.is_critical(sigma):
        raise ValueError(f"{K.label(sigma)} is not critical")
    ds, da = K[sigma].dim, K[alpha].dim
    if ds == da + 1:
        if not V.is_critical(alpha):
            raise ValueError(f"{K.label(alpha)} is not critical")
        return boundary_flow(V, sigma).get(alpha, 0)
    if ds != da:
        raise ValueError("dimension mismatch")
    if sigma == alpha:
        return 1
    if ds == 0:
        return flow_up(V, sigma, targets={alpha} | set(V.critical(0))).get(alpha, 0)
    if truncate_at is None:
        return flow_down(V, sigma, {alpha}).get(alpha, 0)
    return flow_down(V, sigma, set(truncate_at) | {alpha}, truncate=True).get(alpha, 0)


# ----------------------------------------------------------- chain complex

@dataclass(frozen=True, eq=False)
class MorseComplexData:
    field: GradientField
    basis: tuple[tuple[int, ...], ...]
    boundary: tuple[np.ndarray, ...]
    ring: str

    @property
    def complex(self) -> OrientedComplex:
        return self.field.complex

    @property
    def top(self) -> int:
        return len(self.basis) - 1

    def matrix(self, q: int) -> np.ndarray:
        """Boundary C_q -> C_{q-1}; empty shapes outside the range."""
        if 0 <= q <= self.top:
            return self.boundary[q]
        rows = len(self.basis[q - 1]) if 0 <= q - 1 <= self.top else 0
        cols = len(self.basis[q]) if 0 <= q <= self.top else 0
        return np.zeros((rows, cols), dtype=np.int64)

    def size(self, q: int) -> int:
        return len(self.basis[q]) if 0 <= q <= self.top else 0

    def labels(self, q: int) -> list[str]:
        if not 0 <= q <= self.top:
            return []
        return [self.complex.label(s) for s in self.basis[q]]

    def image(self, q: int, sid: int) -> dict[int, int]:
        col = self.matrix(q)[:, self.basis[q].index(sid)]
        return {self.basis[q - 1][i]: int(c) for i, c in enumerate(col) if c}


def build_morse_complex(V: GradientField, ring: str = "z") -> MorseComplexData:
    check_ring(ring)
    K = V.complex
    basis = tuple(tuple(V.critical(q)) for q in range(K.dim + 1))
    mats = [np.zeros((0, len(basis[0])), dtype=np.int64)]
    for q in range(1, K.dim + 1):
        rows = {s: i for i, s in enumerate(basis[q - 1])}
        mat = np.zeros((len(basis[q - 1]), len(basis[q])), dtype=np.int64)
        for j, sigma in enumerate(basis[q]):
            for t, c in boundary_flow(V, sigma).items():
                mat[rows[t], j] = c
        mats.append(mat)
    for q in range(2, K.dim + 1):
        if np.any(mats[q - 1] @ mats[q]):
            raise MorseComplexError(f"Morse boundary does not square to zero in degree {q}")
    return MorseComplexData(V, basis, tuple(reduce(m, ring) for m in mats), ring)


@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        parts = [f"Z^{self.betti}"] if self.betti else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def homology_from_boundaries(sizes: list[int], mats: list[np.ndarray], ring: str) -> list[HomologyGroup]:
    """Homology of a chain complex given ``mats[q]``: C_q -> C_{q-1}."""
    top = len(sizes) - 1

    def mat(q):
        if 1 <= q <= top:
            return mats[q]
        return np.zeros((sizes[q - 1] if 0 <= q - 1 <= top else 0, sizes[q] if q <= top else 0), dtype=np.int64)

    if ring == "z":
        inv = {q: invariant_factors(mat(q)) if mat(q).size else [] for q in range(1, top + 2)}
        ranks = {q: len(inv.get(q, [])) for q in range(0, top + 2)}
    else:
        inv = {}
        ranks = {q: rank(mat(q), "z2") if 1 <= q <= top else 0 for q in range(0, top + 2)}
    out = []
    for q in range(top + 1):
        betti = sizes[q] - ranks[q] - ranks[q + 1]
        torsion = tuple(f for f in inv.get(q + 1, []) if f > 1)
        out.append(HomologyGroup(betti, torsion))
    return out


def morse_homology(data: MorseComplexData) -> list[HomologyGroup]:
    sizes = [len(b) for b in data.basis]
    return homology_from_boundaries(sizes, list(data.boundary), data.ring)


def simplicial_homology(K: OrientedComplex, ring: str = "z") -> list[HomologyGroup]:
    check_ring(ring)
    sizes = [K.count(q) for q in range(K.dim + 1)]
    mats = [reduce(K.boundary_matrix(q), ring) for q in range(K.dim + 1)]
    return homology_from_boundaries(sizes, mats, ring)


def is_optimal(V: GradientField) -> bool:
    """Critical counts equal the rational Betti numbers in every dimension."""
    betti = [h.betti for h in simplicial_homology(V.complex, "z")]
    return V.critical_counts() == betti
