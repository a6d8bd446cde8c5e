"""Command line front end.

Exit codes: 0 every check passed, 1 a checked property failed, 2 bad input.
Reports are ``key: value`` lines and are byte-for-byte deterministic.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import birth_death as bd
from .connectedness import build_conn_hom, is_chain_map, is_faithful
from .io import ParseError, load_complex, parse_field, parse_field_raw, serialize_field
from .mfc import SizeGuardError, build_mfc
from .morse import (FieldError, GradientField, build_morse_complex, gradient_field_of, morse_homology,
                    simplicial_homology, validate_gradient_field, validate_morse_function)


class InputError(Exception):
    pass


def _matrix_lines(mat: np.ndarray, rows: list[str], cols: list[str]) -> list[str]:
    if not cols:
        return ["  (no columns)"]
    if not rows:
        return ["  (no rows)"]
    width = max(len(s) for s in rows + cols + ["0"]) + 1
    out = [" " * width + "".join(c.rjust(width) for c in cols)]
    for name, row in zip(rows, mat):
        out.append(name.rjust(width) + "".join(str(int(x)).rjust(width) for x in row))
    return out


def _load(args, nfields: int | None = None, min_fields: int = 0):
    K = load_complex(args.complex)
    fields = []
    for path in args.field or []:
        text = Path(path).read_text()
        try:
            fields.append(parse_field(text, K, source=path))
        except FieldError as exc:
            raise InputError(f"{path}: not a gradient field: {exc}") from None
    if nfields is not None and len(fields) != nfields:
        raise InputError(f"expected {nfields} --field arguments, got {len(fields)}")
    if len(fields) < min_fields:
        raise InputError(f"expected at least {min_fields} --field arguments, got {len(fields)}")
    return K, fields


def _hom_kw(args) -> dict:
    return {"mode": args.mode, "truncate": args.truncate}


# -------------------------------------------------------------- subcommands

def cmd_validate(args, out):
    K = load_complex(args.complex)
    out.append(f"complex: {len(K)} simplices, dimension {K.dim}")
    out.append("f-vector: " + " ".join(str(K.count(q)) for q in range(K.dim + 1)))
    ok = True
    for path in args.field or []:
        pairs, values = parse_field_raw(Path(path).read_text(), K, source=path)
        if values:
            violations = validate_morse_function(K, values)
        else:
            violations = validate_gradient_field(K, pairs)
        out.append(f"field: {path}")
        if violations:
            ok = False
            out.append("valid: no")
            out.extend(f"violation: {v}" for v in violations)
            continue
        V = gradient_field_of(K, values) if values else GradientField(K, pairs)
        out.append("valid: yes")
        out.append(f"pairs: {len(V)}")
        out.append("critical counts: " + " ".join(map(str, V.critical_counts())))
    return 0 if ok else 1


def cmd_critical(args, out):
    K, (V,) = _load(args, 1)
    for q in range(K.dim + 1):
        out.append(f"critical {q}: " + " ".join(K.label(s) for s in V.critical(q)))
    return 0


def cmd_boundary(args, out):
    K, fields = _load(args)
    if len(fields) > 1:
        raise InputError("boundary takes at most one --field")
    if fields:
        data = build_morse_complex(fields[0], args.ring)
        for q in range(1, K.dim + 1):
            out.append(f"boundary {q}:")
            out.extend(_matrix_lines(data.matrix(q), data.labels(q - 1), data.labels(q)))
    else:
        from .linalg import reduce
        for q in range(1, K.dim + 1):
            out.append(f"boundary {q}:")
            rows = [K.label(s) for s in K.ids_of_dim(q - 1)]
            cols = [K.label(s) for s in K.ids_of_dim(q)]
            out.extend(_matrix_lines(reduce(K.boundary_matrix(q), args.ring), rows, cols))
    return 0


def cmd_homology(args, out):
    K, fields = _load(args)
    simp = simplicial_homology(K, args.ring)
    for q, h in enumerate(simp):
        out.append(f"simplicial H{q}: {h}")
    ok = True
    for path, V in zip(args.field or [], fields):
        morse = morse_homology(build_morse_complex(V, args.ring))
        out.append(f"field: {path}")
        for q, h in enumerate(morse):
            out.append(f"morse H{q}: {h}")
        same = morse == simp
        ok &= same
        out.append(f"agrees: {'yes' if same else 'no'}")
    return 0 if ok else 1


def _hom_lines(h, out):
    K = h.complex
    for q in range(h.top + 1):
        out.append(f"H{q}:")
        out.extend(_matrix_lines(h.matrix(q), [K.label(s) for s in h.tgt_basis[q]],
                                 [K.label(s) for s in h.src_basis[q]]))
        for s in h.src_basis[q]:
            out.append(f"h{q}({K.label(s)}) = {h.format_image(q, s)}")


def cmd_hom(args, out):
    K, (V1, V2) = _load(args, 2)
    h = build_conn_hom(V1, V2, args.ring, **_hom_kw(args))
    out.append(f"ring: {args.ring}")
    _hom_lines(h, out)
    return 0


def cmd_chainmap(args, out):
    K, (V1, V2) = _load(args, 2)
    h = build_conn_hom(V1, V2, args.ring, **_hom_kw(args))
    report = is_chain_map(h)
    out.append(f"ring: {args.ring}")
    out.extend(report.describe(K).splitlines())
    return 0 if report.ok else 1


def cmd_faithful(args, out):
    K, (V1, V2) = _load(args, 2)
    h = build_conn_hom(V1, V2, args.ring, **_hom_kw(args))
    report = is_faithful(h)
    out.append(f"ring: {args.ring}")
    for q, ok in report.by_dimension.items():
        out.append(f"faithful {q}: {'yes' if ok else 'no'}")
    for q, s, why in report.failures:
        out.append(f"failure: dimension {q}, {K.label(s)}: {why}")
    out.append(f"faithful: {'yes' if report.ok else 'no'}")
    return 0 if report.ok else 1


def cmd_transition(args, out):
    K, (V1, V2) = _load(args, 2)
    an = bd.analyze_transition(V1, V2, args.ring, **_hom_kw(args))
    out.append(f"ring: {args.ring}")
    if an.certificate is None:
        out.append("certified: no")
        out.append(f"reason: {an.reason}")
        for c in an.candidates:
            out.append(f"candidate: {K.label(c.sigma)} {K.label(c.alpha)} k={c.k} fail ({c.failed_check})")
        return 1
    cert = an.certificate
    out.append("certified: yes")
    out.extend(cert.describe().splitlines())
    chain = bd.verify_transition_chain_maps(cert)
    comp = bd.verify_composition(cert)
    out.append(f"chain maps: {'yes' if chain else 'no'}")
    out.append(f"g after h is identity: {'yes' if comp.g_after_h else 'no'}")
    out.append(f"h after g is identity off the pair: {'yes' if comp.h_after_g else 'no'}")
    out.append(f"h after g is identity (strict): {'yes' if comp.h_after_g_strict else 'no'}")
    return 0 if chain and comp.ok else 1


def cmd_cancel(args, out):
    K, (V,) = _load(args, 1)
    if not args.pair:
        raise InputError("cancel needs --pair <sigma> <alpha>")
    try:
        sigma, alpha = (K.resolve(n) for n in args.pair)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    try:
        W = bd.cancel_pair(V, sigma, alpha)
    except bd.CancellationError as exc:
        out.append(f"cancelled: no\nreason: {exc}")
        return 1
    text = serialize_field(W)
    if args.out:
        Path(args.out).write_text(text)
        out.append(f"cancelled: yes\nwritten: {args.out}")
        out.append("critical counts: " + " ".join(map(str, W.critical_counts())))
    else:
        out.append(text.rstrip("\n"))
    return 0


def cmd_sequence(args, out):
    K, fields = _load(args, min_fields=2)
    report = bd.verify_transition_sequence(fields, args.ring)
    out.append(f"ring: {args.ring}")
    for j, step in enumerate(report.steps):
        out.append(f"step {j}: {step}")
    if report.ok:
        out.append("equivalent: yes")
        return 0
    out.append("equivalent: no")
    out.append(f"break: {report.break_index}")
    return 1


def cmd_mfc(args, out):
    K = load_complex(args.complex)
    try:
        M = build_mfc(K, args.max_dim, args.size_guard)
    except SizeGuardError as exc:
        raise InputError(str(exc)) from None
    out.append(f"primitive fields: {len(M.primitives)}")
    out.append("simplices by dimension: " + " ".join(map(str, M.counts())))
    out.append(f"components: {len(M.components())}")
    for (j,) in M.vertices:
        out.append(f"vertex: {M.primitives[j].label(K)}")
    if args.dot:
        Path(args.dot).write_text(M.to_dot())
        out.append(f"dot: {args.dot}")
    return 0


COMMANDS = {
    "validate": (cmd_validate, "check a complex and optional fields or Morse functions"),
    "critical": (cmd_critical, "list critical simplices"),
    "boundary": (cmd_boundary, "print Morse (or simplicial) boundary matrices"),
    "homology": (cmd_homology, "simplicial and Morse homology"),
    "hom": (cmd_hom, "connectedness homomorphism from the first field to the second"),
    "chainmap": (cmd_chainmap, "is the connectedness homomorphism a chain map"),
    "faithful": (cmd_faithful, "faithfulness of the connectedness homomorphism"),
    "transition": (cmd_transition, "detect and certify a birth or death transition"),
    "cancel": (cmd_cancel, "cancel a critical pair joined by a unique gradient path"),
    "sequence": (cmd_sequence, "check a birth-death transition sequence"),
    "mfc": (cmd_mfc, "build the complex of discrete Morse functions"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="morseconn", description="Connectedness of discrete Morse functions.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--complex", required=True, help="complex file")
        p.add_argument("--field", action="append", help="field file (repeat for two fields)")
        p.add_argument("--ring", choices=("z2", "z"), default="z2")
        p.add_argument("--out", help="write the report (or, for cancel, the new field) here")
        if name in ("hom", "chainmap", "faithful", "transition"):
            p.add_argument("--mode", choices=("hybrid", "literal"), default="hybrid")
            p.add_argument("--truncate", action="store_true",
                           help="stop same-dimension paths at the first target-critical simplex")
        if name == "cancel":
            p.add_argument("--pair", nargs=2, metavar=("SIGMA", "ALPHA"))
        if name == "mfc":
            p.add_argument("--dot", help="write the 1-skeleton as DOT")
            p.add_argument("--size-guard", type=int, default=24)
            p.add_argument("--max-dim", type=int)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    func = COMMANDS[args.command][0]
    out: list[str] = []
    try:
        code = func(args, out)
    except (ParseError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc.filename}: {exc.strerror}", file=sys.stderr)
        return 2
    text = "\n".join(out) + "\n"
    if args.out and args.command != "cancel":
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
