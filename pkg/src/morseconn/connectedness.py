"""Connectedness homomorphisms between two gradient fields on one complex.

For a source-critical q-simplex s the column of H_q lists the signed path
counts from s to the target-critical q-simplices:

* q = 0, or s paired upward in the target field: up-band paths of the
  target field (through its (q, q+1) pairs);
* otherwise: down-band paths of the source field (through its (q-1, q)
  pairs), plus the trivial path when s is critical in both fields.

``mode="literal"`` always uses source down-band paths for q >= 1.  That
reading is kept for comparison; it is not a chain map in general once
q >= 2 (see the tests).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import check_ring, is_invertible, reduce
from .morse import GradientField, MorseComplexData, build_morse_complex, flow_down, flow_up

MODES = ("hybrid", "literal")


@dataclass(frozen=True, eq=False)
class ConnHom:
    source: GradientField
    target: GradientField
    src_basis: tuple[tuple[int, ...], ...]
    tgt_basis: tuple[tuple[int, ...], ...]
    matrices: tuple[np.ndarray, ...]
    ring: str
    mode: str = "hybrid"
    truncate: bool = False

    @property
    def complex(self):
        return self.source.complex

    @property
    def top(self) -> int:
        return len(self.matrices) - 1

    def matrix(self, q: int) -> np.ndarray:
        if 0 <= q <= self.top:
            return self.matrices[q]
        return np.zeros((0, 0), dtype=np.int64)

    def image(self, q: int, sid: int) -> dict[int, int]:
        """h_q(sid) as {target simplex: coefficient}."""
        col = self.matrices[q][:, self.src_basis[q].index(sid)]
        return {self.tgt_basis[q][i]: int(c) for i, c in enumerate(col) if c}

    def format_image(self, q: int, sid: int) -> str:
        K = self.complex
        terms = [(c, K.label(t)) for t, c in self.image(q, sid).items()]
        return _format_chain(terms)

    def is_identity(self) -> bool:
        """Same critical sets and identity matrices in every dimension."""
        return all(
            self.src_basis[q] == self.tgt_basis[q]
            and np.array_equal(self.matrices[q], np.eye(len(self.src_basis[q]), dtype=np.int64))
            for q in range(self.top + 1)
        )


def _format_chain(terms) -> str:
    if not terms:
        return "0"
    out = []
    for c, name in terms:
        if c == 1:
            out.append(f"+ {name}")
        elif c == -1:
            out.append(f"- {name}")
        else:
            out.append(f"{'+' if c > 0 else '-'} {abs(c)}*{name}")
    text = " ".join(out)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def column(V_src: GradientField, V_tgt: GradientField, s: int, mode: str = "hybrid",
           truncate: bool = False, signed: bool = True) -> dict[int, int]:
    """Path counts from source-critical ``s`` to the target-critical simplices."""
    K = V_src.complex
    q = K[s].dim
    targets = set(V_tgt.critical(q))
    if q == 0 or (mode == "hybrid" and s in V_tgt.up):
        return flow_up(V_tgt, s, targets=targets, signed=signed)
    return flow_down(V_src, s, targets, signed=signed, truncate=truncate)


def build_conn_hom(V_src: GradientField, V_tgt: GradientField, ring: str = "z2",
                   mode: str = "hybrid", truncate: bool = False) -> ConnHom:
    check_ring(ring)
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if V_src.complex != V_tgt.complex:
        raise ValueError("fields live on different complexes")
    K = V_src.complex
    src = tuple(tuple(V_src.critical(q)) for q in range(K.dim + 1))
    tgt = tuple(tuple(V_tgt.critical(q)) for q in range(K.dim + 1))
    mats = []
    for q in range(K.dim + 1):
        rows = {t: i for i, t in enumerate(tgt[q])}
        mat = np.zeros((len(tgt[q]), len(src[q])), dtype=np.int64)
        for j, s in enumerate(src[q]):
            for t, c in column(V_src, V_tgt, s, mode, truncate).items():
                mat[rows[t], j] = c
        mats.append(reduce(mat, ring))
    return ConnHom(V_src, V_tgt, src, tgt, tuple(mats), ring, mode, truncate)


def build_pair(V1: GradientField, V2: GradientField, ring: str = "z2", **kw) -> tuple[ConnHom, ConnHom]:
    """(h, g): h from V1 to V2 and g back."""
    return build_conn_hom(V1, V2, ring, **kw), build_conn_hom(V2, V1, ring, **kw)


# -------------------------------------------------------------- predicates

def _check_dims(K, s1, s2):
    if K[s1].dim != K[s2].dim:
        raise ValueError(f"dimension mismatch: {K.label(s1)} vs {K.label(s2)}")


def is_partially_connected(V_src: GradientField, V_tgt: GradientField, s1: int, s2: int,
                           mode: str = "hybrid") -> bool:
    """Some gradient path joins s1 (source-critical) to s2 (target-critical)."""
    K = V_src.complex
    _check_dims(K, s1, s2)
    if s1 == s2:
        return True
    return column(V_src, V_tgt, s1, mode, signed=False).get(s2, 0) > 0


def is_strongly_connected(V1: GradientField, V2: GradientField, s1: int, s2: int,
                          mode: str = "hybrid") -> bool:
    return is_partially_connected(V1, V2, s1, s2, mode) and is_partially_connected(V2, V1, s2, s1, mode)


@dataclass(frozen=True)
class ChainMapReport:
    ok: bool
    dimension: int | None = None
    simplex: int | None = None
    lhs: dict | None = None     # d_tgt(h(s))
    rhs: dict | None = None     # h(d_src(s))

    def describe(self, K) -> str:
        if self.ok:
            return "chain map: yes"
        lhs = _format_chain([(c, K.label(t)) for t, c in self.lhs.items()])
        rhs = _format_chain([(c, K.label(t)) for t, c in self.rhs.items()])
        return (f"chain map: no\nfirst failure: dimension {self.dimension}, simplex {K.label(self.simplex)}\n"
                f"boundary after hom: {lhs}\nhom after boundary: {rhs}")


def _data(h: ConnHom, src_data, tgt_data):
    if src_data is None:
        src_data = build_morse_complex(h.source, h.ring)
    if tgt_data is None:
        tgt_data = build_morse_complex(h.target, h.ring)
    return src_data, tgt_data


def is_chain_map(h: ConnHom, src_data: MorseComplexData | None = None,
                 tgt_data: MorseComplexData | None = None) -> ChainMapReport:
    """Check d_tgt H_q = H_{q-1} d_src column by column."""
    src_data, tgt_data = _data(h, src_data, tgt_data)
    for q in range(1, h.top + 1):
        lhs = reduce(tgt_data.matrix(q) @ h.matrix(q), h.ring)
        rhs = reduce(h.matrix(q - 1) @ src_data.matrix(q), h.ring)
        for j, s in enumerate(h.src_basis[q]):
            if not np.array_equal(lhs[:, j], rhs[:, j]):
                rows = h.tgt_basis[q - 1]
                return ChainMapReport(
                    False, q, s,
                    {rows[i]: int(c) for i, c in enumerate(lhs[:, j]) if c},
                    {rows[i]: int(c) for i, c in enumerate(rhs[:, j]) if c},
                )
    return ChainMapReport(True)


def is_weakly_faithful(h: ConnHom, s1: int) -> int | None:
    """The target simplex s2 if h(s1) is a nonzero multiple of s2 alone."""
    q = h.complex[s1].dim
    img = h.image(q, s1)
    if len(img) == 1:
        return next(iter(img))
    return None


@dataclass(frozen=True)
class FaithfulReport:
    ok: bool
    by_dimension: dict
    failures: tuple = ()      # (dimension, simplex, reason)


def is_faithful(h: ConnHom, src_data: MorseComplexData | None = None,
                tgt_data: MorseComplexData | None = None) -> FaithfulReport:
    """Weak faithfulness everywhere plus boundary compatibility for q >= 1.

    At q = 0 there is no boundary equation, so only weak faithfulness is
    required there.
    """
    src_data, tgt_data = _data(h, src_data, tgt_data)
    failures = []
    by_dim = {}
    for q in range(h.top + 1):
        ok = True
        if q >= 1:
            lhs = reduce(tgt_data.matrix(q) @ h.matrix(q), h.ring)
            rhs = reduce(h.matrix(q - 1) @ src_data.matrix(q), h.ring)
        for j, s in enumerate(h.src_basis[q]):
            if is_weakly_faithful(h, s) is None:
                failures.append((q, s, "not weakly faithful"))
                ok = False
            elif q >= 1 and not np.array_equal(lhs[:, j], rhs[:, j]):
                failures.append((q, s, "boundary equation fails"))
                ok = False
        by_dim[q] = ok
    return FaithfulReport(all(by_dim.values()), by_dim, tuple(failures))


def compose(first: ConnHom, second: ConnHom) -> list[np.ndarray]:
    """Matrices of second o first, per dimension."""
    if first.tgt_basis != second.src_basis:
        raise ValueError("homomorphisms do not compose")
    ring = first.ring
    return [reduce(second.matrix(q) @ first.matrix(q), ring) for q in range(first.top + 1)]


def is_isomorphism(h: ConnHom) -> bool:
    return all(is_invertible(h.matrix(q), h.ring) for q in range(h.top + 1))


def check_function_connectedness(h: ConnHom, g: ConnHom) -> bool:
    """Both directions are isomorphisms (square and invertible over the ring)."""
    return is_isomorphism(h) and is_isomorphism(g)


__all__ = [
    "ConnHom", "ChainMapReport", "FaithfulReport", "build_conn_hom", "build_pair", "column",
    "is_partially_connected", "is_strongly_connected", "is_chain_map", "is_weakly_faithful",
    "is_faithful", "compose", "is_isomorphism", "check_function_connectedness",
]
