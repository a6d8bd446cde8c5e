"""Birth and death transitions between two gradient fields, and cancellation.

Naming: of the two fields, ``a`` has fewer critical simplices and ``b``
has the two extra ones, sigma~ (dimension i) and alpha~ (dimension i-1).
``h`` always denotes the hom a -> b (the birth direction) and ``g`` the
hom b -> a.  A certificate's ``kind`` says which of these runs from the
first field to the second.

The non-redundant critical simplices of ``b`` are identified with those of
``a`` by a signed bijection read off the columns of ``g``; when all signs
are +1 and every simplex maps to itself the identification is the
identity, otherwise it is a relabelling by mutually faithful pairs.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .connectedness import ConnHom, build_conn_hom, check_function_connectedness, is_chain_map
from .linalg import check_ring, reduce
from .morse import GradientField, MorseComplexData, build_morse_complex, count_paths, enumerate_paths

log = logging.getLogger(__name__)

CHECK_ORDER = ("cardinality", "redundant pair", "identification", "h formula", "g formula",
               "eq1", "eq2", "eq3", "eq4", "eq5")


@dataclass(frozen=True)
class Candidate:
    sigma: int
    alpha: int
    k: int
    checks: dict
    identification: str | None = None

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    @property
    def failed_check(self) -> str | None:
        return next((name for name in CHECK_ORDER if self.checks.get(name) is False), None)


@dataclass(frozen=True, eq=False)
class TransitionCertificate:
    kind: str                       # "birth" or "death"
    redundant_pair: tuple[int, int]
    k: int
    dimension: int
    checks: dict
    identification: str
    candidates: tuple[Candidate, ...]
    h: ConnHom                      # a -> b
    g: ConnHom                      # b -> a
    ring: str

    @property
    def cusp(self) -> bool:
        return abs(self.k) == 1

    @property
    def alternates(self) -> list[Candidate]:
        return [c for c in self.candidates if (c.sigma, c.alpha) != self.redundant_pair]

    def describe(self) -> str:
        K = self.h.complex
        s, a = self.redundant_pair
        lines = [
            f"kind: {self.kind}",
            f"dimension: {self.dimension}",
            f"pair: {K.label(s)} {K.label(a)}",
            f"k: {self.k}",
            f"cusp: {'yes' if self.cusp else 'no'}",
            f"identification: {self.identification}",
        ]
        lines += [f"check {name}: {'pass' if self.checks[name] else 'fail'}" for name in CHECK_ORDER]
        for c in self.candidates:
            status = "pass" if c.passed else f"fail ({c.failed_check})"
            lines.append(f"candidate: {K.label(c.sigma)} {K.label(c.alpha)} k={c.k} {status}")
        return "\n".join(lines)


@dataclass(frozen=True, eq=False)
class TransitionAnalysis:
    """Everything detect_transition looked at, certified or not."""
    kind: str | None
    dimension: int | None
    candidates: tuple[Candidate, ...] = ()
    certificate: TransitionCertificate | None = None
    reason: str = ""


def _cardinality(V1: GradientField, V2: GradientField):
    c1, c2 = V1.critical_counts(), V2.critical_counts()
    diff = [y - x for x, y in zip(c1, c2)]
    nz = [q for q, d in enumerate(diff) if d]
    if len(nz) != 2 or nz[1] != nz[0] + 1 or diff[nz[0]] != diff[nz[1]] or abs(diff[nz[0]]) != 1:
        return None, None
    return ("birth" if diff[nz[0]] == 1 else "death"), nz[1]


def _embedding(ident: dict[int, tuple[int, int]], rows, cols) -> np.ndarray:
    """E[b-row, a-col] = sign for the identified pairs, zero rows elsewhere."""
    rpos = {r: i for i, r in enumerate(rows)}
    cpos = {c: j for j, c in enumerate(cols)}
    E = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for d2, (d1, sign) in ident.items():
        E[rpos[d2], cpos[d1]] = sign
    return E


def _same(x, y, ring) -> bool:
    return bool(np.array_equal(reduce(x, ring), reduce(y, ring)))


def _evaluate(sigma, alpha, i, h: ConnHom, g: ConnHom, da: MorseComplexData,
              db: MorseComplexData, ring: str) -> Candidate:
    K = h.complex
    top = K.dim
    Ba, Bb = h.src_basis, h.tgt_basis
    ssig, salp = Bb[i].index(sigma), Bb[i - 1].index(alpha)
    dsig = db.matrix(i)[:, ssig].copy()
    k = int(dsig[salp])
    checks = {"cardinality": True, "redundant pair": k != 0}
    if not checks["redundant pair"]:
        return Candidate(sigma, alpha, k, checks)

    # identification from the columns of g on the non-redundant simplices
    ident: list[dict[int, tuple[int, int]]] = []
    ok = True
    for q in range(top + 1):
        mapping = {}
        hit = set()
        for j, d2 in enumerate(Bb[q]):
            if d2 in (sigma, alpha):
                continue
            col = reduce(g.matrix(q)[:, j], ring)
            nz = np.flatnonzero(col)
            if len(nz) != 1 or abs(int(col[nz[0]])) != 1 or int(nz[0]) in hit:
                ok = False
                break
            hit.add(int(nz[0]))
            mapping[d2] = (Ba[q][nz[0]], int(col[nz[0]]))
        ident.append(mapping)
        if not ok:
            break
    checks["identification"] = ok
    if not ok:
        return Candidate(sigma, alpha, k, checks)
    identity = all(d1 == d2 and s == 1 for m in ident for d2, (d1, s) in m.items())
    E = [_embedding(ident[q], Bb[q], Ba[q]) for q in range(top + 1)]

    def Em(q):
        return E[q] if 0 <= q <= top else np.zeros((0, 0), dtype=np.int64)

    # h: E everywhere except the free sigma~ row in dimension i
    hq_ok = True
    for q in range(top + 1):
        H = h.matrix(q).copy()
        if q == i:
            nrow = H[ssig].copy()
            H[ssig] = 0
        hq_ok &= _same(H, E[q], ring)
    checks["h formula"] = hq_ok

    # g: E^T on the rest, g(sigma~) = 0, g(alpha~) = -E^T c / k
    c = dsig.copy()
    c[salp] = 0
    num = -(E[i - 1].T @ c)
    divisible = ring == "z2" or all(int(x) % k == 0 for x in num)
    g_alpha = num // k if ring == "z" and divisible else num
    gq_ok = divisible
    for q in range(top + 1):
        G = g.matrix(q).copy()
        expect = E[q].T.copy()
        if q == i:
            gq_ok &= not np.any(reduce(G[:, ssig], ring))
            G[:, ssig] = 0
        if q == i - 1:
            gq_ok &= _same(G[:, salp], g_alpha, ring)
            G[:, salp] = 0
        gq_ok &= _same(G, expect, ring)
    checks["g formula"] = bool(gq_ok)

    # boundary equations
    eq1 = True
    for q in range(1, top + 1):
        if q in (i, i + 1):
            continue
        # at q = i-1 the alpha~ row of E is zero, so its column drops out
        eq1 &= _same(db.matrix(q) @ Em(q), Em(q - 1) @ da.matrix(q), ring)
    checks["eq1"] = bool(eq1)
    if i + 1 <= top:
        checks["eq2"] = _same(db.matrix(i + 1) @ Em(i + 1), h.matrix(i) @ da.matrix(i + 1), ring)
    else:
        checks["eq2"] = True
    checks["eq3"] = _same(db.matrix(i) @ E[i], Em(i - 1) @ da.matrix(i) - np.outer(dsig, nrow), ring)
    checks["eq4"] = bool(divisible)
    if i - 1 >= 1:
        checks["eq5"] = _same(db.matrix(i - 1)[:, salp], Em(i - 2) @ da.matrix(i - 1) @ g_alpha, ring)
    else:
        checks["eq5"] = True
    return Candidate(sigma, alpha, k, checks, "identity" if identity else "relabelled")


def analyze_transition(V1: GradientField, V2: GradientField, ring: str = "z2",
                       pair: tuple[int, int] | None = None, **hom_kw) -> TransitionAnalysis:
    check_ring(ring)
    if V1.complex != V2.complex:
        raise ValueError("fields live on different complexes")
    kind, i = _cardinality(V1, V2)
    if kind is None:
        return TransitionAnalysis(None, None, reason="cardinality pattern does not match")
    a, b = (V1, V2) if kind == "birth" else (V2, V1)
    h = build_conn_hom(a, b, ring, **hom_kw)
    g = build_conn_hom(b, a, ring, **hom_kw)
    da, db = build_morse_complex(a, ring), build_morse_complex(b, ring)
    cands = []
    for sigma in b.critical(i):
        for alpha in b.critical(i - 1):
            if pair is not None and (sigma, alpha) != tuple(pair):
                continue
            if not db.matrix(i)[db.basis[i - 1].index(alpha), db.basis[i].index(sigma)]:
                continue
            cands.append(_evaluate(sigma, alpha, i, h, g, da, db, ring))
    cands.sort(key=lambda c: (c.sigma, c.alpha))
    chosen = next((c for c in cands if c.passed), None)
    if chosen is None:
        reason = "no candidate pair passes" if cands else "no redundant pair with nonzero coefficient"
        return TransitionAnalysis(kind, i, tuple(cands), None, reason)
    cert = TransitionCertificate(
        kind, (chosen.sigma, chosen.alpha), chosen.k, i, dict(chosen.checks),
        chosen.identification, tuple(cands), h, g, ring,
    )
    return TransitionAnalysis(kind, i, tuple(cands), cert, "certified")


def detect_transition(V1: GradientField, V2: GradientField, ring: str = "z2",
                      pair: tuple[int, int] | None = None, **hom_kw) -> TransitionCertificate | None:
    """Certificate that V1 -> V2 is a birth or death transition, else None.

    ``pair`` restricts the search to one (sigma~, alpha~) candidate.
    """
    return analyze_transition(V1, V2, ring, pair, **hom_kw).certificate


def verify_transition_chain_maps(cert: TransitionCertificate) -> bool:
    """Both directions of a certified transition must be chain maps."""
    ok = True
    for name, hom in (("h", cert.h), ("g", cert.g)):
        report = is_chain_map(hom)
        if not report.ok:
            log.error("certified transition but %s is not a chain map:\n%s", name,
                      report.describe(hom.complex))
            ok = False
    return ok


@dataclass(frozen=True)
class CompositionReport:
    g_after_h: bool                 # g o h = id
    h_after_g: bool                 # h o g = id away from sigma~, alpha~
    h_after_g_strict: bool          # h o g = id on every non-redundant simplex, all rows

    @property
    def ok(self) -> bool:
        return self.g_after_h and self.h_after_g


def verify_composition(cert: TransitionCertificate) -> CompositionReport:
    h, g, ring = cert.h, cert.g, cert.ring
    sigma, alpha = cert.redundant_pair
    gh_ok = hg_ok = strict = True
    for q in range(h.top + 1):
        gh = reduce(g.matrix(q) @ h.matrix(q), ring)
        gh_ok &= bool(np.array_equal(gh, np.eye(len(h.src_basis[q]), dtype=np.int64)))
        hg = reduce(h.matrix(q) @ g.matrix(q), ring)
        basis = h.tgt_basis[q]
        keep = [j for j, s in enumerate(basis) if s not in (sigma, alpha)]
        eye = np.eye(len(basis), dtype=np.int64)
        hg_ok &= bool(np.array_equal(hg[np.ix_(keep, keep)], eye[np.ix_(keep, keep)]))
        strict &= bool(np.array_equal(hg[:, keep], eye[:, keep]))
    return CompositionReport(gh_ok, hg_ok, strict)


class CancellationError(ValueError):
    pass


def cancel_pair(V: GradientField, sigma: int, alpha: int) -> GradientField:
    """Reverse the unique gradient path from ``sigma`` down to ``alpha``."""
    K = V.complex
    for s in (sigma, alpha):
        if not V.is_critical(s):
            raise CancellationError(f"{K.label(s)} is not critical")
    if K[sigma].dim != K[alpha].dim + 1:
        raise CancellationError("alpha must be one dimension below sigma")
    n = count_paths(V, sigma, alpha)
    if n != 1:
        raise CancellationError(
            f"{n} gradient paths from {K.label(sigma)} to {K.label(alpha)}; cancellation needs exactly one"
        )
    (path,) = enumerate_paths(V, sigma, alpha)
    seq = path.sequence
    old = {(seq[j], seq[j + 1]) for j in range(1, len(seq) - 1, 2)}
    new = {(seq[j + 1], seq[j]) for j in range(0, len(seq) - 1, 2)}
    return GradientField(K, (V.pairs - old) | new)


@dataclass(frozen=True)
class SequenceReport:
    ok: bool
    steps: tuple[str, ...]          # per adjacent pair: isomorphism / birth / death
    break_index: int | None = None


def verify_transition_sequence(fields: list[GradientField], ring: str = "z2") -> SequenceReport:
    if len(fields) < 2:
        raise ValueError("need at least two fields")
    steps = []
    for j, (V1, V2) in enumerate(zip(fields, fields[1:])):
        h = build_conn_hom(V1, V2, ring)
        g = build_conn_hom(V2, V1, ring)
        if check_function_connectedness(h, g):
            steps.append("isomorphism")
            continue
        cert = detect_transition(V1, V2, ring)
        if cert is None:
            return SequenceReport(False, tuple(steps), j)
        steps.append(cert.kind)
    return SequenceReport(True, tuple(steps))


__all__ = [
    "Candidate", "TransitionCertificate", "TransitionAnalysis", "CompositionReport",
    "SequenceReport", "CancellationError", "analyze_transition", "detect_transition",
    "verify_transition_chain_maps", "verify_composition", "cancel_pair",
    "verify_transition_sequence",
]
