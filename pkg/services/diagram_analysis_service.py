from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Optional

import networkx as nx
from networkx.algorithms import isomorphism

from lib.coxeterDiagram import INFINITY, CoxeterDiagram, label_key

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OddComponent:
    """A component of the odd subdiagram, with its BFS spanning tree and loop basis."""

    base: str
    members: tuple[str, ...]
    odd_edges: tuple[tuple[str, str], ...]
    tree: Mapping[str, Optional[str]]
    loops: tuple[tuple[str, ...], ...]
    cycle_rank: int

    @property
    def is_tree(self) -> bool:
        return self.cycle_rank == 0

    def __contains__(self, vertex: str) -> bool:
        return vertex in self.tree

    def tree_path(self, target: str) -> tuple[str, ...]:
        """The spanning-tree path from base to target, both ends included."""
        if target not in self.tree:
            raise KeyError(target)
        path = [target]
        while self.tree[path[-1]] is not None:
            path.append(self.tree[path[-1]])
        return tuple(reversed(path))


@dataclass(frozen=True)
class SphericalType:
    """
    Finite-type classification of a diagram.

    ``components`` lists the irreducible types (``A3``, ``D5``, ``I2(7)``, ...)
    sorted by name; it is empty and ``order`` is None when the diagram is not
    spherical.
    """

    spherical: bool
    components: tuple[str, ...] = ()
    order: Optional[int] = None

    def __str__(self) -> str:
        if not self.spherical:
            return "not spherical"
        if not self.components:
            return "trivial (order 1)"
        return f"{' x '.join(self.components)} (order {self.order})"


NOT_SPHERICAL = SphericalType(spherical=False)

_EXCEPTIONAL_ORDERS = {"E6": 51840, "E7": 2903040, "E8": 696729600, "F4": 1152, "H3": 120, "H4": 14400}


class DiagramAnalysisService:
    """
    Structural analysis of one Coxeter diagram: the odd subdiagram and its
    components, finite-type recognition, and comparison against other diagrams.
    """

    def __init__(self, diagram: CoxeterDiagram):
        self.diagram = diagram
        self._components: Optional[list[OddComponent]] = None
        self._component_index: dict[str, OddComponent] = {}

    # --- odd components ---

    def odd_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.diagram.vertices)
        graph.add_edges_from(self.diagram.odd_edges())
        return graph

    def odd_components(self) -> list[OddComponent]:
        """One OddComponent per component of the odd subdiagram, rooted at its least vertex."""
        if self._components is not None:
            return self._components

        d = self.diagram
        graph = self.odd_graph()
        components = []
        for member_set in sorted(nx.connected_components(graph), key=lambda c: min(map(d.index, c))):
            base = min(member_set, key=d.index)
            component = self._rooted_component(graph, member_set, base)
            components.append(component)
            for v in component.members:
                self._component_index[v] = component

        logger.info(
            f"Found {len(components)} odd components; cycle ranks {[c.cycle_rank for c in components]}"
        )
        self._components = components
        return components

    def _rooted_component(self, graph: nx.Graph, member_set: set, base: str) -> OddComponent:
        d = self.diagram
        in_order = lambda vertices: sorted(vertices, key=d.index)
        members = tuple(in_order(member_set))
        tree: dict[str, Optional[str]] = {base: None}
        for child, parent in nx.bfs_predecessors(graph, base, sort_neighbors=in_order):
            tree[child] = parent
        odd_edges = tuple((u, v) for u, v in d.odd_edges() if u in member_set)
        cycle_rank = len(odd_edges) - len(members) + 1

        component = OddComponent(base, members, odd_edges, tree, (), cycle_rank)
        loops = tuple(
            component.tree_path(u) + tuple(reversed(component.tree_path(v)))
            for u, v in odd_edges
            if tree[u] != v and tree[v] != u
        )
        return OddComponent(base, members, odd_edges, tree, loops, cycle_rank)

    def component_of(self, vertex: str) -> OddComponent:
        self.diagram.require(vertex)
        self.odd_components()
        return self._component_index[vertex]

    def rooted_at(self, s: str) -> OddComponent:
        """s's odd component with its spanning tree and loops rebuilt from s."""
        component = self.component_of(s)
        if component.base == s:
            return component
        return self._rooted_component(self.odd_graph(), set(component.members), s)

    # --- spherical recognition ---

    def recognize_spherical(self) -> SphericalType:
        d = self.diagram
        graph = d.to_graph()
        names, order = [], 1
        for member_set in sorted(nx.connected_components(graph), key=lambda c: min(map(d.index, c))):
            classified = _classify_irreducible(d.induced(member_set))
            if classified is None:
                return NOT_SPHERICAL
            name, component_order = classified
            names.append(name)
            order *= component_order
        return SphericalType(True, tuple(sorted(names, key=_type_sort_key)), order)

    # --- isomorphism ---

    def isomorphic_to(self, other: CoxeterDiagram) -> tuple[bool, Optional[dict[str, str]]]:
        """
        Label-preserving isomorphism test. Returns (True, witness) with
        witness mapping this diagram's vertices onto ``other``'s, or (False, None).
        """
        d1, d2 = self.diagram, other
        if d1.rank != d2.rank or len(d1.edges) != len(d2.edges):
            return False, None
        if _label_multiset(d1) != _label_multiset(d2):
            return False, None
        g1, g2 = _signed_graph(d1), _signed_graph(d2)
        if Counter(nx.get_node_attributes(g1, "sig").values()) != Counter(
            nx.get_node_attributes(g2, "sig").values()
        ):
            return False, None

        matcher = isomorphism.GraphMatcher(
            g1,
            g2,
            node_match=isomorphism.categorical_node_match("sig", None),
            edge_match=lambda a, b: a["label"] == b["label"],
        )
        if matcher.is_isomorphic():
            return True, dict(matcher.mapping)
        return False, None


def _label_multiset(d: CoxeterDiagram) -> list:
    return sorted((label for _, _, label in d.edges), key=label_key)


def _signed_graph(d: CoxeterDiagram) -> nx.Graph:
    """Graph whose nodes carry the refinement signature: sorted incident labels."""
    graph = d.to_graph()
    for v in d.vertices:
        incident = sorted((d.label(v, w) for w in d.neighbors(v)), key=label_key)
        graph.nodes[v]["sig"] = tuple(label_key(label) for label in incident)
    return graph


def _type_sort_key(name: str) -> tuple:
    letters = name.rstrip("0123456789()").split("(")[0]
    digits = "".join(ch for ch in name if ch.isdigit())
    return (letters, int(digits) if digits else 0, name)


def _classify_irreducible(d: CoxeterDiagram) -> Optional[tuple[str, int]]:
    """Name and order of a connected diagram, or None when it is not spherical."""
    n = d.rank
    labels = [label for _, _, label in d.edges]
    if INFINITY in labels:
        return None
    if n == 1:
        return "A1", 2
    if n == 2:
        m = labels[0]
        name = {3: "A2", 4: "B2"}.get(m, f"I2({m})")
        return name, 2 * m
    if len(d.edges) != n - 1:
        return None

    degrees = {v: d.degree(v) for v in d.vertices}
    if max(degrees.values()) > 3:
        return None
    branch_points = [v for v, k in degrees.items() if k == 3]
    big = [(u, v, label) for u, v, label in d.edges if label > 3]

    if not branch_points:
        if not big:
            return f"A{n}", math.factorial(n + 1)
        if len(big) > 1:
            return None
        u, v, label = big[0]
        at_end = degrees[u] == 1 or degrees[v] == 1
        if label == 4 and at_end:
            return f"B{n}", 2**n * math.factorial(n)
        if label == 4 and n == 4:
            return "F4", _EXCEPTIONAL_ORDERS["F4"]
        if label == 5 and at_end and n in (3, 4):
            return f"H{n}", _EXCEPTIONAL_ORDERS[f"H{n}"]
        return None

    if big or len(branch_points) > 1:
        return None
    centre = branch_points[0]
    arms = sorted(_arm_length(d, centre, w) for w in d.neighbors(centre))
    if arms[0] == 1 and arms[1] == 1:
        return f"D{n}", 2 ** (n - 1) * math.factorial(n)
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        name = f"E{n}"
        return name, _EXCEPTIONAL_ORDERS[name]
    return None


def _arm_length(d: CoxeterDiagram, centre: str, start: str) -> int:
    """Number of vertices on the arm of a tree leaving ``centre`` through ``start``."""
    previous, current, length = centre, start, 1
    while True:
        onward = [w for w in d.neighbors(current) if w != previous]
        if len(onward) != 1:
            return length
        previous, current, length = current, onward[0], length + 1


# --- functional entry points ---


def odd_components(d: CoxeterDiagram) -> list[OddComponent]:
    return DiagramAnalysisService(d).odd_components()


def component_of(d: CoxeterDiagram, vertex: str) -> OddComponent:
    return DiagramAnalysisService(d).component_of(vertex)


def recognize_spherical(d: CoxeterDiagram) -> SphericalType:
    return DiagramAnalysisService(d).recognize_spherical()


def diagrams_isomorphic(d1: CoxeterDiagram, d2: CoxeterDiagram) -> tuple[bool, Optional[dict[str, str]]]:
    return DiagramAnalysisService(d1).isomorphic_to(d2)


def rooted_at(d: CoxeterDiagram, s: str) -> OddComponent:
    return DiagramAnalysisService(d).rooted_at(s)
