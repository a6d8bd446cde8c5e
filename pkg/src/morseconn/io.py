"""Line-oriented text formats for complexes and gradient fields.

Complex file::

    # comment
    v a                 # declare a vertex
    s e1: a b           # named simplex, vertex order is its orientation
    facet: a b c        # close under faces

Field file: either ``pair <face> <coface>`` lines or ``f <simplex> <value>``
lines (a discrete Morse function), never both.  Simplices are referred to
by name or by a comma-separated vertex list such as ``a,b``.
"""
from __future__ import annotations

from pathlib import Path

from .morse import FieldError, GradientField, gradient_field_of
from .simplicial import ComplexError, OrientedComplex, build_complex


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int = 1, source: str = "<input>"):
        super().__init__(f"{source}:{line}:{col}: {message}")
        self.line = line
        self.col = col


def _tokens(line: str) -> list[tuple[str, int]]:
    """Whitespace tokens with 1-based columns, comments stripped."""
    out = []
    i = 0
    n = len(line)
    while i < n:
        if line[i] == "#":
            break
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < n and not line[j].isspace() and line[j] != "#":
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def parse_complex(text: str, source: str = "<input>") -> OrientedComplex:
    vertices: dict[str, int] = {}
    names: dict[str, int] = {}
    explicit: list[tuple[list[str], str | None, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = _tokens(raw)
        if not toks:
            continue
        head, col = toks[0]
        if head == "v":
            if len(toks) != 2:
                raise ParseError("expected 'v <name>'", lineno, col, source)
            name, c = toks[1]
            if name in vertices or name in names:
                raise ParseError(f"duplicate name {name!r}", lineno, c, source)
            vertices[name] = lineno
            names[name] = lineno
        elif head == "s":
            if len(toks) < 4 or not toks[1][0].endswith(":"):
                raise ParseError("expected 's <name>: <v1> <v2> ...'", lineno, col, source)
            name, c = toks[1][0][:-1], toks[1][1]
            if not name:
                raise ParseError("empty simplex name", lineno, c, source)
            if name in names:
                raise ParseError(f"duplicate name {name!r}", lineno, c, source)
            names[name] = lineno
            explicit.append(([t for t, _ in toks[2:]], name, lineno, toks[2][1]))
            _check_declared(toks[2:], vertices, lineno, source)
        elif head == "facet:":
            if len(toks) < 2:
                raise ParseError("facet needs at least one vertex", lineno, col, source)
            explicit.append(([t for t, _ in toks[1:]], None, lineno, toks[1][1]))
            _check_declared(toks[1:], vertices, lineno, source)
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, col, source)
    facets = [[v] for v in vertices]
    labels = {}
    for verts, name, lineno, col in explicit:
        if len(set(verts)) != len(verts):
            raise ParseError("duplicate vertex in simplex", lineno, col, source)
        facets.append(verts)
        if name is not None:
            key = frozenset(verts)
            if key in labels:
                raise ParseError(f"simplex {sorted(key)} named twice", lineno, col, source)
            labels[key] = name
    if not vertices:
        raise ParseError("no vertices declared", 1, 1, source)
    try:
        return build_complex(facets, labels)
    except ComplexError as exc:
        raise ParseError(str(exc), 1, 1, source) from None


def _check_declared(toks, vertices, lineno, source):
    for name, col in toks:
        if name not in vertices:
            raise ParseError(f"undeclared vertex {name!r}", lineno, col, source)


def serialize_complex(K: OrientedComplex) -> str:
    lines = [f"v {s.label}" for s in K if s.dim == 0]
    lines += [f"s {s.label}: {' '.join(s.vertices)}" for s in K if s.dim > 0]
    return "\n".join(lines) + "\n"


def _resolve(K: OrientedComplex, name: str, lineno: int, col: int, source: str) -> int:
    try:
        return K.resolve(name)
    except KeyError:
        raise ParseError(f"unknown simplex {name!r}", lineno, col, source) from None


def parse_field_raw(text: str, K: OrientedComplex, source: str = "<input>"):
    """(pairs, values) exactly as written; nothing beyond codimension is checked."""
    pairs: list[tuple[int, int]] = []
    values: dict[int, float] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = _tokens(raw)
        if not toks:
            continue
        head, col = toks[0]
        if head == "pair":
            if values:
                raise ParseError("'pair' and 'f' lines cannot be mixed", lineno, col, source)
            if len(toks) != 3:
                raise ParseError("expected 'pair <face> <coface>'", lineno, col, source)
            a = _resolve(K, toks[1][0], lineno, toks[1][1], source)
            b = _resolve(K, toks[2][0], lineno, toks[2][1], source)
            if K.incidence(b, a) == 0:
                raise ParseError(
                    f"{toks[1][0]} is not a codimension-1 face of {toks[2][0]}", lineno, toks[1][1], source
                )
            pairs.append((a, b))
        elif head == "f":
            if pairs:
                raise ParseError("'pair' and 'f' lines cannot be mixed", lineno, col, source)
            if len(toks) != 3:
                raise ParseError("expected 'f <simplex> <value>'", lineno, col, source)
            sid = _resolve(K, toks[1][0], lineno, toks[1][1], source)
            if sid in values:
                raise ParseError(f"second value for {toks[1][0]!r}", lineno, toks[1][1], source)
            try:
                values[sid] = float(toks[2][0])
            except ValueError:
                raise ParseError(f"bad number {toks[2][0]!r}", lineno, toks[2][1], source) from None
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, col, source)
    if values:
        missing = [s.label for s in K if s.id not in values]
        if missing:
            raise ParseError(f"function has no value for {missing}", 1, 1, source)
    return pairs, values


def parse_field(text: str, K: OrientedComplex, source: str = "<input>") -> GradientField:
    """Gradient field from pair lines, or induced by a Morse function."""
    pairs, values = parse_field_raw(text, K, source)
    if values:
        return gradient_field_of(K, values)
    return GradientField(K, pairs)


def serialize_field(V: GradientField) -> str:
    K = V.complex
    return "".join(f"pair {K.label(a)} {K.label(b)}\n" for a, b in sorted(V.pairs))


def load_complex(path) -> OrientedComplex:
    path = Path(path)
    return parse_complex(path.read_text(), source=str(path))


def load_field(path, K: OrientedComplex) -> GradientField:
    path = Path(path)
    return parse_field(path.read_text(), K, source=str(path))


__all__ = [
    "ParseError", "FieldError", "parse_complex", "serialize_complex", "parse_field",
    "serialize_field", "parse_field_raw", "load_complex", "load_field",
]
