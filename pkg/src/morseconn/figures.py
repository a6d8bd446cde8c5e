"""Worked examples shipped as data files, with their conventional labels.

Each figure has one complex and two fields (``a`` and ``b``).  ``labels``
maps the conventional names used in the examples (``v1^1`` is the first
critical vertex of the first field, ``e2^2`` the second critical edge of
the second field, and so on) to simplex names in the files.
"""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .io import parse_complex, parse_field
from .morse import GradientField
from .simplicial import OrientedComplex

LABELS = {
    "fig2": {
        "v1^1": "A10", "v1^2": "A15", "e1^1": "A1A2", "e1^2": "A10A11",
        "v2^1": "A10", "e2^1": "A4A5",
    },
    "fig5": {
        "v1^1": "v03", "v1^2": "v10", "e1^1": "v07v08",
        "v2^1": "v03", "v2^2": "v06", "v2^3": "v10", "e2^1": "v07v08", "e2^2": "v05v06",
    },
    "fig6": {
        "v1^1": "u8", "e1^1": "u2u3",
        "v2^1": "u6", "v2^2": "u8", "e2^1": "u1u2", "e2^2": "u5u7",
    },
    "fig7": {},
}


@dataclass(frozen=True)
class Figure:
    name: str
    complex: OrientedComplex
    fields: tuple[GradientField, ...]
    labels: dict

    def id(self, label: str) -> int:
        """Simplex id from a conventional label or a simplex name."""
        return self.complex.resolve(self.labels.get(label, label))


def data_path(filename: str):
    return resources.files(__package__) / "data" / filename


def read_text(filename: str) -> str:
    return data_path(filename).read_text()


def load(name: str) -> Figure:
    if name not in LABELS:
        raise KeyError(f"unknown figure {name!r}; choose from {sorted(LABELS)}")
    K = parse_complex(read_text(f"{name}.cx"), source=f"{name}.cx")
    fields = []
    for suffix in "ab":
        fname = f"{name}{suffix}.gf"
        if data_path(fname).is_file():
            fields.append(parse_field(read_text(fname), K, source=fname))
    return Figure(name, K, tuple(fields), LABELS[name])


__all__ = ["Figure", "LABELS", "load", "data_path", "read_text"]
