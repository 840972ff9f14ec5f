"""
Coxeter diagram value type.

A diagram is an ordered vertex list plus a symmetric label map on unordered
pairs. Only labels >= 3 and INFINITY are stored; every other pair of distinct
vertices is unjoined (label 2). Querying a vertex against itself returns 1.

The module also owns the three wire formats: the line-based diagram file,
Graphviz DOT, and the JSON dictionary used by the CLI and HTTP surface.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Union

import networkx as nx

from lib.errors import (
    BadLabel,
    DiagramError,
    DuplicateEdge,
    EmptyDiagram,
    ParseError,
    SelfEdge,
    UnknownVertex,
)

logger = logging.getLogger(__name__)


class _Infinity:
    """The label of an infinitely joined pair. Neither even nor odd."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

Label = Union[int, _Infinity]


def is_finite(label: Label) -> bool:
    return label is not INFINITY


def is_odd(label: Label) -> bool:
    return label is not INFINITY and label % 2 == 1 and label >= 3


def is_even(label: Label) -> bool:
    """Absent joins (label 2) count as even."""
    return label is not INFINITY and label % 2 == 0


def label_key(label: Label) -> tuple[int, int]:
    """Sort key placing INFINITY after every finite label."""
    return (1, 0) if label is INFINITY else (0, label)


def format_label(label: Label) -> str:
    return str(label)


def parse_label(token: str, line_no: int | None = None) -> Label:
    if token == "inf":
        return INFINITY
    try:
        value = int(token)
    except ValueError:
        raise BadLabel(f"label must be an integer >= 3 or 'inf', got {token!r}", line_no) from None
    if value <= 2:
        raise BadLabel(f"label must be >= 3, got {value}", line_no)
    return value


def _check_name(name: str, line_no: int | None = None) -> None:
    if not name or any(ch.isspace() for ch in name):
        raise ParseError(f"bad vertex name {name!r}", line_no)


@dataclass(frozen=True)
class CoxeterDiagram:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, Label], ...]
    _labels: Mapping[frozenset, Label] = field(init=False, repr=False, compare=False)
    _index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index: dict[str, int] = {}
        for v in self.vertices:
            _check_name(v)
            if v in index:
                raise DiagramError(f"duplicate vertex {v!r}")
            index[v] = len(index)

        labels: dict[frozenset, Label] = {}
        normalized = []
        for u, v, label in self.edges:
            for w in (u, v):
                if w not in index:
                    raise UnknownVertex(w)
            if u == v:
                raise SelfEdge(f"edge joins {u!r} to itself")
            if label is not INFINITY and (not isinstance(label, int) or label <= 2):
                raise BadLabel(f"bad label {label!r} on {u}-{v}")
            key = frozenset((u, v))
            if key in labels and labels[key] != label:
                raise DuplicateEdge(f"conflicting labels {labels[key]} and {label} on {u}-{v}")
            if key in labels:
                continue
            labels[key] = label
            if index[u] > index[v]:
                u, v = v, u
            normalized.append((u, v, label))
        normalized.sort(key=lambda e: (index[e[0]], index[e[1]]))

        object.__setattr__(self, "edges", tuple(normalized))
        object.__setattr__(self, "_labels", labels)
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[str, str, Label]],
        vertices: Iterable[str] = (),
    ) -> "CoxeterDiagram":
        """Build a diagram; vertices not listed explicitly are appended in edge order."""
        edges = list(edges)
        order = list(dict.fromkeys(vertices))
        seen = set(order)
        for u, v, _ in edges:
            for w in (u, v):
                if w not in seen:
                    seen.add(w)
                    order.append(w)
        return cls(tuple(order), tuple(edges))

    # --- queries ---

    @property
    def rank(self) -> int:
        return len(self.vertices)

    def __contains__(self, vertex: str) -> bool:
        return vertex in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self.vertices)

    def index(self, vertex: str) -> int:
        try:
            return self._index[vertex]
        except KeyError:
            raise UnknownVertex(vertex) from None

    def require(self, vertex: str) -> str:
        self.index(vertex)
        return vertex

    def label(self, u: str, v: str) -> Label:
        self.index(u)
        self.index(v)
        if u == v:
            return 1
        return self._labels.get(frozenset((u, v)), 2)

    def neighbors(self, vertex: str) -> list[str]:
        """Joined vertices (label != 2), in diagram order."""
        return [w for w in self.vertices if w != vertex and self.label(vertex, w) != 2]

    def odd_neighbors(self, vertex: str) -> list[str]:
        return [w for w in self.vertices if w != vertex and is_odd(self.label(vertex, w))]

    def odd_edges(self) -> list[tuple[str, str]]:
        return [(u, v) for u, v, label in self.edges if is_odd(label)]

    def degree(self, vertex: str) -> int:
        return len(self.neighbors(vertex))

    def induced(self, vertices: Iterable[str]) -> "CoxeterDiagram":
        keep = set(vertices)
        order = tuple(v for v in self.vertices if v in keep)
        return CoxeterDiagram(order, tuple(e for e in self.edges if e[0] in keep and e[1] in keep))

    def relabeled(self, mapping: Mapping[str, str]) -> "CoxeterDiagram":
        return CoxeterDiagram(
            tuple(mapping[v] for v in self.vertices),
            tuple((mapping[u], mapping[v], label) for u, v, label in self.edges),
        )

    def to_graph(self) -> nx.Graph:
        """networkx view: every vertex, one edge per stored label (attribute ``label``)."""
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        for u, v, label in self.edges:
            graph.add_edge(u, v, label=label)
        return graph

    # --- serialization ---

    def to_text(self) -> str:
        lines = [f"vertex {v}" for v in self.vertices]
        lines += [f"edge {u} {v} {format_label(label)}" for u, v, label in self.edges]
        return "\n".join(lines) + "\n"

    def to_dot(self, name: str = "D") -> str:
        lines = [f"graph {name} {{"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for u, v, label in self.edges:
            attrs = []
            if label is INFINITY:
                attrs += ['label="inf"', "style=dashed"]
            elif label != 3:
                attrs.append(f'label="{label}"')
            suffix = f" [{', '.join(attrs)}]" if attrs else ""
            lines.append(f'  "{u}" -- "{v}"{suffix};')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [
                [u, v, "inf" if label is INFINITY else label] for u, v, label in self.edges
            ],
        }

    @classmethod
    def from_dict(cls, payload: Mapping) -> "CoxeterDiagram":
        try:
            edges = [
                (u, v, parse_label(str(label))) for u, v, label in payload.get("edges", [])
            ]
            return cls.from_edges(edges, payload.get("vertices", []))
        except (TypeError, ValueError) as e:
            if isinstance(e, DiagramError):
                raise
            raise ParseError(f"malformed diagram payload: {e}") from e


def parse_diagram(text: str) -> CoxeterDiagram:
    """
    Parse the line-based diagram format.

    Lines are ``# comment``, ``vertex NAME`` or ``edge NAME1 NAME2 LABEL`` with
    LABEL an integer >= 3 or ``inf``. Edge lines create their vertices.
    """
    order: list[str] = []
    seen: set[str] = set()
    labels: dict[frozenset, Label] = {}
    edges: list[tuple[str, str, Label]] = []

    def add_vertex(name: str, line_no: int) -> None:
        _check_name(name, line_no)
        if name not in seen:
            seen.add(name)
            order.append(name)

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0]
        if keyword == "vertex":
            if len(tokens) != 2:
                raise ParseError("expected 'vertex NAME'", line_no)
            add_vertex(tokens[1], line_no)
        elif keyword == "edge":
            if len(tokens) != 4:
                raise ParseError("expected 'edge NAME1 NAME2 LABEL'", line_no)
            _, u, v, token = tokens
            if u == v:
                raise SelfEdge(f"edge joins {u!r} to itself", line_no)
            label = parse_label(token, line_no)
            add_vertex(u, line_no)
            add_vertex(v, line_no)
            key = frozenset((u, v))
            if key in labels:
                if labels[key] != label:
                    raise DuplicateEdge(
                        f"conflicting labels {labels[key]} and {label} on {u}-{v}", line_no
                    )
                continue
            labels[key] = label
            edges.append((u, v, label))
        else:
            raise ParseError(f"unknown directive {keyword!r}", line_no)

    if not order:
        raise EmptyDiagram("diagram has no vertices")
    diagram = CoxeterDiagram(tuple(order), tuple(edges))
    logger.debug(f"Parsed diagram with {diagram.rank} vertices and {len(diagram.edges)} edges")
    return diagram
