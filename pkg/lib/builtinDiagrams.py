"""
Builtin Coxeter diagrams: the standard families plus the named figures
stored under Data/diagrams.

Family names take the form ``FAMILY:PARAM`` (``A:5``, ``I2:7``, ``E:8``);
the exceptional diagrams without a parameter are ``F4``, ``H3`` and ``H4``.
"""

from __future__ import annotations

import logging

from config import DIAGRAMS_DIR
from lib.coxeterDiagram import INFINITY, CoxeterDiagram, Label, parse_diagram, parse_label
from lib.errors import BadRank, UnknownName

logger = logging.getLogger(__name__)

NAMED_FIGURES = ("Y555", "bugaenko8", "lorentz18")


def _path(prefix: str, n: int, labels: dict[int, Label] | None = None) -> list[tuple[str, str, Label]]:
    """Edges of the path prefix1 - ... - prefixN; labels[i] overrides edge i -> i+1."""
    labels = labels or {}
    return [(f"{prefix}{i}", f"{prefix}{i + 1}", labels.get(i, 3)) for i in range(1, n)]


def _vertices(prefix: str, n: int) -> list[str]:
    return [f"{prefix}{i}" for i in range(1, n + 1)]


def type_a(n: int) -> CoxeterDiagram:
    if n < 1:
        raise BadRank(f"A:{n} needs n >= 1")
    return CoxeterDiagram.from_edges(_path("a", n), _vertices("a", n))


def type_b(n: int) -> CoxeterDiagram:
    if n < 2:
        raise BadRank(f"B:{n} needs n >= 2")
    return CoxeterDiagram.from_edges(_path("b", n, {n - 1: 4}), _vertices("b", n))


def type_d(n: int) -> CoxeterDiagram:
    # d1 - ... - d(n-1) with d(n) hung off d(n-2)
    if n < 4:
        raise BadRank(f"D:{n} needs n >= 4")
    edges = _path("d", n - 1) + [(f"d{n - 2}", f"d{n}", 3)]
    return CoxeterDiagram.from_edges(edges, _vertices("d", n))


def type_affine_a(n: int) -> CoxeterDiagram:
    # cycle on n+1 vertices; n = 1 is the infinite dihedral group
    if n < 1:
        raise BadRank(f"affA:{n} needs n >= 1")
    if n == 1:
        return CoxeterDiagram.from_edges([("a1", "a2", INFINITY)])
    edges = _path("a", n + 1) + [(f"a{n + 1}", "a1", 3)]
    return CoxeterDiagram.from_edges(edges, _vertices("a", n + 1))


def type_affine_d(n: int) -> CoxeterDiagram:
    # d1 - ... - d(n-1), with d(n) on d2 and d(n+1) on d(n-2)
    if n < 4:
        raise BadRank(f"affD:{n} needs n >= 4")
    edges = _path("d", n - 1) + [("d2", f"d{n}", 3), (f"d{n - 2}", f"d{n + 1}", 3)]
    return CoxeterDiagram.from_edges(edges, _vertices("d", n + 1))


def type_e(n: int) -> CoxeterDiagram:
    if n not in (6, 7, 8):
        raise BadRank(f"E:{n} is not one of E:6, E:7, E:8")
    edges = _path("e", n - 1) + [("e3", f"e{n}", 3)]
    return CoxeterDiagram.from_edges(edges, _vertices("e", n))


def type_f4() -> CoxeterDiagram:
    return CoxeterDiagram.from_edges(_path("f", 4, {2: 4}), _vertices("f", 4))


def type_h(n: int) -> CoxeterDiagram:
    if n not in (3, 4):
        raise BadRank(f"H{n} is not one of H3, H4")
    return CoxeterDiagram.from_edges(_path("h", n, {1: 5}), _vertices("h", n))


def type_i2(m: Label) -> CoxeterDiagram:
    if m is not INFINITY and m < 3:
        raise BadRank(f"I2:{m} needs m >= 3")
    return CoxeterDiagram.from_edges([("i1", "i2", m)])


def load_figure(name: str) -> CoxeterDiagram:
    path = DIAGRAMS_DIR / f"{name}.cox"
    logger.debug(f"Loading diagram figure from {path}")
    return parse_diagram(path.read_text(encoding="utf-8"))


_FAMILIES = {
    "A": type_a,
    "B": type_b,
    "D": type_d,
    "affA": type_affine_a,
    "affD": type_affine_d,
    "E": type_e,
}


def builtin_names() -> list[str]:
    return ["A:n", "B:n", "D:n", "affA:n", "affD:n", "E:6|7|8", "F4", "H3", "H4", "I2:m", *NAMED_FIGURES]


def builtin_diagram(name: str) -> CoxeterDiagram:
    """Return the builtin diagram called ``name``; see builtin_names()."""
    name = name.strip()
    if name in NAMED_FIGURES:
        return load_figure(name)
    if name == "F4":
        return type_f4()
    if name in ("H3", "H4"):
        return type_h(int(name[1]))

    family, sep, param = name.partition(":")
    if not sep or family not in _FAMILIES and family != "I2":
        raise UnknownName(f"unknown builtin diagram {name!r}; known: {', '.join(builtin_names())}")
    if family == "I2":
        try:
            return type_i2(parse_label(param))
        except ValueError as e:
            raise BadRank(f"I2:{param}: {e}") from e
    try:
        n = int(param)
    except ValueError:
        raise BadRank(f"{name}: rank must be an integer") from None
    return _FAMILIES[family](n)
