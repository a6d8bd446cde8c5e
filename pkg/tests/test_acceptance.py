"""Acceptance criteria, one test each.

Every test records a single ``[PASS]``/``[FAIL]`` line that is printed and
repeated in the pytest terminal summary.  Run directly with
``python3 tests/test_acceptance.py``.
"""
import random
import sys
import time
from pathlib import Path

import numpy as np
import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

sys.path.insert(0, str(Path(__file__).parent))
from conftest import ACCEPTANCE  # noqa: E402

from morseconn.birth_death import (cancel_pair, detect_transition, verify_composition,  # noqa: E402
                                   verify_transition_chain_maps)
from morseconn.cli import main  # noqa: E402
from morseconn.connectedness import (build_conn_hom, build_pair, compose, is_chain_map,  # noqa: E402
                                     is_faithful)
from morseconn.figures import data_path  # noqa: E402
from morseconn.generate import (cancellable_pairs, cycle_graph, path_graph, point, projective_plane,  # noqa: E402
                                random_complex, random_field, simplex_boundary, torus)
from morseconn.mfc import build_mfc, classify_face_step  # noqa: E402
from morseconn.morse import GradientField, build_morse_complex, is_optimal, morse_homology  # noqa: E402
from morseconn.simplicial import build_complex  # noqa: E402


def record(n, ok, title, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {title} ({detail})"
    ACCEPTANCE[n] = line
    print(line)
    assert ok, line


def img(h, fig, q, label):
    K = h.complex
    return sorted(K.label(t) for t, c in h.image(q, fig.id(label)).items() if c)


def names(fig, *labels):
    return sorted(fig.complex.label(fig.id(x)) for x in labels)


# ---------------------------------------------------------------- figures

def test_criterion_1_fig2(fig2, capsys):
    t = time.perf_counter()
    V1, V2 = fig2.fields
    g = build_conn_hom(V2, V1, "z2")
    report = is_chain_map(g)
    lhs = sorted(fig2.complex.label(s) for s in report.lhs or {})
    code = main(["chainmap", "--complex", str(data_path("fig2.cx")),
                 "--field", str(data_path("fig2b.gf")), "--field", str(data_path("fig2a.gf"))])
    out = capsys.readouterr().out
    dt = time.perf_counter() - t
    ok = (not report.ok and report.simplex == fig2.id("e2^1") and lhs == names(fig2, "v1^1", "v1^2")
          and not report.rhs and code == 1 and "A4A5" in out and dt < 1)
    record(1, ok, "fig2: g is not a chain map at e2^1",
           f"chain map reported: {report.ok}, chainmap exit {code}, {dt:.2f}s")


def test_criterion_2_fig5(fig5):
    t = time.perf_counter()
    V1, V2 = fig5.fields
    h, g = build_pair(V1, V2, "z2")
    cert = detect_transition(V1, V2, "z2")
    dt = time.perf_counter() - t
    ok = (img(h, fig5, 1, "e1^1") == names(fig5, "e2^1", "e2^2")
          and img(h, fig5, 0, "v1^1") == names(fig5, "v2^1")
          and img(h, fig5, 0, "v1^2") == names(fig5, "v2^3")
          and is_chain_map(h).ok and is_chain_map(g).ok
          and cert is not None and cert.kind == "birth" and cert.cusp and cert.k == 1
          and cert.redundant_pair == (fig5.id("e2^2"), fig5.id("v2^2")) and dt < 1)
    record(2, ok, "fig5: homs and cusp birth certificate", f"{dt:.2f}s")


def test_criterion_3_fig6(fig6):
    t = time.perf_counter()
    V1, V2 = fig6.fields
    h, g = build_pair(V1, V2, "z2")
    d2 = build_morse_complex(V2, "z2")
    cert = detect_transition(V1, V2, "z2")
    dt = time.perf_counter() - t
    alts = [(c.sigma, c.alpha) for c in cert.alternates] if cert else []
    ok = (img(g, fig6, 0, "v2^1") == names(fig6, "v1^1") and img(g, fig6, 0, "v2^2") == names(fig6, "v1^1")
          and img(g, fig6, 1, "e2^1") == names(fig6, "e1^1") and img(g, fig6, 1, "e2^2") == []
          and d2.image(1, fig6.id("e2^1")) == {}
          and d2.image(1, fig6.id("e2^2")) == {fig6.id("v2^1"): 1, fig6.id("v2^2"): 1}
          and is_chain_map(h).ok and is_chain_map(g).ok
          and cert is not None and cert.redundant_pair == (fig6.id("e2^2"), fig6.id("v2^1"))
          and alts == [(fig6.id("e2^2"), fig6.id("v2^2"))] and dt < 1)
    record(3, ok, "fig6: homs and certificate with alternate", f"{dt:.2f}s")


FIG7_EDGES = {
    ("(a,e1)", "(b,e2)"), ("(a,e1)", "(c,e3)"), ("(a,e1)", "(c,e2)"),
    ("(a,e3)", "(b,e1)"), ("(a,e3)", "(b,e2)"), ("(a,e3)", "(c,e2)"),
    ("(b,e1)", "(c,e3)"), ("(b,e1)", "(c,e2)"), ("(b,e2)", "(c,e3)"),
}


def test_criterion_4_fig7(fig7):
    from morseconn.morse import validate_gradient_field
    t = time.perf_counter()
    M = build_mfc(fig7.complex)
    K = M.complex
    edges = {tuple(M.primitives[j].label(K) for j in e) for e in M.edges}
    brute = sum(1 for i, p in enumerate(M.primitives) for q in M.primitives[i + 1:]
                if not validate_gradient_field(K, [(p.face, p.coface), (q.face, q.coface)]))
    r = K.resolve
    s1 = M.simplex_of([(r("a"), r("e1"))])
    s2 = M.simplex_of([(r("a"), r("e1")), (r("b"), r("e2"))])
    steps = (classify_face_step(M, s1, s2), classify_face_step(M, s2, s1))
    dt = time.perf_counter() - t
    ok = (len(M.vertices) == 6 and edges == FIG7_EDGES and brute == 9 and len(M.components()) == 1
          and steps == ("death", "birth") and dt < 1)
    record(4, ok, "fig7: M(K)", f"{len(M.vertices)} vertices, {len(edges)} edges, "
                                   f"{len(M.components())} component, steps {steps}, {dt:.2f}s")


# ------------------------------------------------------------- properties

def test_criterion_5_transition_theorem():
    t = time.perf_counter()
    rng = random.Random(5)
    trials = failures = 0
    while trials < 100:
        K = random_complex(rng, max_vertices=12, max_dim=2)
        V = random_field(K, rng)
        pairs = cancellable_pairs(V)
        if not pairs:
            continue
        sigma, alpha = rng.choice(pairs)
        W = cancel_pair(V, sigma, alpha)
        ring = rng.choice(["z2", "z"])
        cert = detect_transition(V, W, ring)
        good = (cert is not None and verify_transition_chain_maps(cert) and verify_composition(cert).ok
                and morse_homology(build_morse_complex(W, ring)) == morse_homology(build_morse_complex(V, ring)))
        trials += 1
        failures += not good
    dt = time.perf_counter() - t
    record(5, failures == 0 and dt < 30, "cancel then certify",
           f"{trials} trials, {failures} failures, {dt:.1f}s")


def sympy_homology(K):
    ranks, torsion = {}, {}
    for q in range(1, K.dim + 1):
        m = K.boundary_matrix(q)
        f = [abs(int(x)) for x in invariant_factors(Matrix(m.tolist()), domain=ZZ) if x != 0]
        ranks[q] = len(f)
        torsion[q] = tuple(x for x in f if x > 1)
    return [(K.count(q) - ranks.get(q, 0) - ranks.get(q + 1, 0), torsion.get(q + 1, ()))
            for q in range(K.dim + 1)]


def test_criterion_6_forman_consistency():
    t = time.perf_counter()
    rng = random.Random(6)
    failures = runs = 0
    rp2_torsion = False
    for name, K in [("point", point()), ("C6", cycle_graph(6)), ("S2", simplex_boundary(3)),
                    ("RP2", projective_plane()), ("T2", torus())]:
        expect = sympy_homology(K)
        for _ in range(20):
            V = random_field(K, rng, density=rng.random())
            data = build_morse_complex(V, "z")
            squares = all(not np.any(data.matrix(q - 1) @ data.matrix(q)) for q in range(2, K.dim + 1))
            got = [(h.betti, h.torsion) for h in morse_homology(data)]
            failures += not (squares and got == expect)
            runs += 1
            if name == "RP2":
                rp2_torsion |= got[1] == (0, (2,))
    dt = time.perf_counter() - t
    record(6, failures == 0 and rp2_torsion and dt < 60, "Morse complex and homology",
           f"{runs} fields, {failures} failures, RP2 H1 torsion Z2: {rp2_torsion}, {dt:.1f}s")


def six_cycle_pair():
    K = cycle_graph(6)
    n = [f"c{i}" for i in range(6)]
    V = GradientField(K, [(K.find([n[i]]), K.find([n[i], n[i - 1]])) for i in range(1, 6)])
    W = GradientField(K, [(K.find([n[i]]), K.find([n[i], n[(i + 1) % 6]])) for i in range(0, 5)])
    return V, W


def test_criterion_7_faithfulness():
    t = time.perf_counter()
    rng = random.Random(7)
    h0_fail = 0
    for _ in range(200):
        K = random_complex(rng, max_vertices=10)
        h = build_conn_hom(random_field(K, rng), random_field(K, rng), rng.choice(["z2", "z"]))
        h0_fail += not is_faithful(h).by_dimension[0]
    V, W = six_cycle_pair()
    ok6 = is_optimal(V) and is_optimal(W)
    for ring in ("z2", "z"):
        h, g = build_pair(V, W, ring)
        ok6 &= is_faithful(h).ok and is_faithful(g).ok and is_chain_map(h).ok and is_chain_map(g).ok
        ok6 &= all(np.array_equal(m, np.eye(len(m), dtype=np.int64)) for m in compose(h, g) + compose(g, h))
    dt = time.perf_counter() - t
    record(7, h0_fail == 0 and ok6 and dt < 1, "faithfulness laws",
           f"h0 failures {h0_fail}/200, 6-cycle optimal pair ok: {ok6}, {dt:.2f}s")


def test_criterion_8_identity_homs():
    t = time.perf_counter()
    rng = random.Random(8)
    self_fail = 0
    for _ in range(50):
        K = random_complex(rng, max_vertices=9, max_dim=2)
        V = random_field(K, rng)
        ring = rng.choice(["z2", "z"])
        self_fail += not build_conn_hom(V, V, ring).is_identity()
    pairs = both_id = violations = 0
    while pairs < 50:
        K = random_complex(rng, max_vertices=9, max_dim=2)
        V, W = random_field(K, rng), random_field(K, rng)
        if V == W:
            continue
        pairs += 1
        h, g = build_pair(V, W, "z2")
        if h.is_identity() and g.is_identity():
            both_id += 1
            violations += 1
    dt = time.perf_counter() - t
    record(8, self_fail == 0 and violations == 0 and dt < 10, "identity homs iff equal fields",
           f"self failures {self_fail}/50, distinct pairs with h = g = id {both_id}/{pairs}, {dt:.1f}s")


def test_criterion_9_face_steps():
    t = time.perf_counter()
    corpus = [point(), build_complex([["a", "b"]]), cycle_graph(3), build_complex([["a", "b", "c"]]),
              path_graph(4), cycle_graph(4), cycle_graph(6),
              build_complex([["u1", "u2"], ["u2", "u3"], ["u3", "u4"], ["u4", "u5"], ["u5", "u6"],
                             ["u1", "u6"], ["u5", "u7"], ["u7", "u8"]])]
    steps = mismatches = 0
    for K in corpus:
        M = build_mfc(K)
        fields = {}
        for S in M:
            if len(S) < 2:
                continue
            for j in S:
                T = tuple(x for x in S if x != j)
                for a in (T, S):
                    if a not in fields:
                        fields[a] = M.field_of(a)
                cert = detect_transition(fields[T], fields[S], "z2")
                steps += 1
                mismatches += cert is None or cert.kind != classify_face_step(M, T, S)
    dt = time.perf_counter() - t
    record(9, mismatches == 0 and dt < 60, "face steps are transitions",
           f"{len(corpus)} complexes, {steps} face steps, {mismatches} mismatches, {dt:.1f}s")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
