from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Union

import networkx as nx
from networkx.utils import UnionFind

from lib.coxeterDiagram import INFINITY, CoxeterDiagram, Label, is_even, is_finite
from lib.errors import ConflictingCertificates, NotSingleEdgeTree, UnsupportedCycles
from services.diagram_analysis_service import DiagramAnalysisService, OddComponent, SphericalType
from services.word_generator_service import GeneratorSet, Word, WordGeneratorService

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Arrow:
    """A facet [tile, target] of a tile, pointing from its type to an evenly joined vertex."""

    tile: str
    target: str

    @property
    def name(self) -> str:
        return f"{self.tile}>{self.target}"

    def reversed(self) -> "Arrow":
        return Arrow(self.target, self.tile)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class ArrowClass:
    """Arrows lying in one facet of the centralizer chamber; one simple generator of W_Omega."""

    representative: Arrow
    members: tuple[Arrow, ...]

    @property
    def id(self) -> str:
        return self.representative.name

    def __contains__(self, arrow: Arrow) -> bool:
        return arrow in self.members


@dataclass(frozen=True)
class UnsupportedDiagram:
    """Stands in for the W_Omega diagram when the odd component has cycles."""

    cycle_rank: int

    def __str__(self) -> str:
        return "UNSUPPORTED-CYCLES"


@dataclass(frozen=True)
class CentralizerResult:
    """
    C_W(s) = <s> x (W_Omega : Gamma_Omega).

    ``domega`` is the Coxeter diagram of W_Omega on arrow-class ids, or an
    UnsupportedDiagram when s's odd component is not a tree; ``class_words``
    and ``spherical_summary`` are only filled in the first case.
    """

    reflection: str
    gamma_rank: int
    gamma_words: tuple[Word, ...]
    domega: Union[CoxeterDiagram, UnsupportedDiagram]
    classes: tuple[ArrowClass, ...] = ()
    class_words: Mapping[str, Word] = field(default_factory=dict)
    spherical_summary: Optional[SphericalType] = None
    generators: Optional[GeneratorSet] = None

    @property
    def diagram_supported(self) -> bool:
        return isinstance(self.domega, CoxeterDiagram)

    def to_dict(self, all_words: bool = False) -> dict:
        payload = {
            "reflection": self.reflection,
            "gamma_rank": self.gamma_rank,
            "gamma_words": [str(w) for w in self.gamma_words],
        }
        if self.diagram_supported:
            payload["domega"] = self.domega.to_dict()
            payload["classes"] = {c.id: [a.name for a in c.members] for c in self.classes}
            payload["class_words"] = {cid: str(w) for cid, w in self.class_words.items()}
            payload["spherical"] = (
                {"types": list(self.spherical_summary.components), "order": self.spherical_summary.order}
                if self.spherical_summary.spherical
                else None
            )
        else:
            payload["domega"] = str(self.domega)
        if all_words and self.generators is not None:
            payload["r_words"] = {a.name: str(w) for a, w in self.generators.r_words.items()}
        return payload


# A certificate: the two arrows it relates and the dihedral label it forces.
Certificate = tuple[str, Arrow, Arrow, Label]


class CentralizerService:
    """
    Arrow bookkeeping for the reflection part W_Omega of a reflection
    centralizer: enumerate arrows, fuse them into classes, and read off the
    Coxeter diagram of W_Omega from the rank-3 certificates.
    """

    def __init__(self, diagram: CoxeterDiagram):
        self.diagram = diagram
        self.analysis = DiagramAnalysisService(diagram)

    def _sort_key(self, arrow: Arrow) -> tuple[int, int]:
        return self.diagram.index(arrow.tile), self.diagram.index(arrow.target)

    # --- arrows ---

    def enumerate_arrows(self, s: str) -> tuple[Arrow, ...]:
        """Every [J, K] with J in s's odd component and J, K evenly joined or unjoined."""
        d = self.diagram
        component = self.analysis.component_of(s)
        return tuple(
            Arrow(j, k)
            for j in component.members
            for k in d.vertices
            if k != j and is_even(d.label(j, k))
        )

    def _tree_component(self, s: str) -> OddComponent:
        component = self.analysis.component_of(s)
        if not component.is_tree:
            raise UnsupportedCycles(s, component.cycle_rank)
        return component

    def fuse_arrow_classes(
        self,
        s: str,
        arrows: Optional[Iterable[Arrow]] = None,
        tails_only: bool = False,
    ) -> tuple[ArrowClass, ...]:
        """
        Close the arrows under the tail-sliding move and, unless ``tails_only``,
        the reversal move through a vertex single-joined to both ends.
        """
        d = self.diagram
        component = self._tree_component(s)
        arrows = tuple(arrows) if arrows is not None else self.enumerate_arrows(s)
        arrow_set = set(arrows)

        classes = UnionFind(arrows)
        for arrow in arrows:
            j, k = arrow.tile, arrow.target
            if d.label(j, k) != 2:
                continue
            for l in d.odd_neighbors(j):
                if l != k and d.label(l, k) == 2:
                    classes.union(arrow, Arrow(l, k))
            if tails_only:
                continue
            for l in d.vertices:
                if d.label(j, l) == 3 and d.label(k, l) == 3:
                    assert k in component, f"reversal of {arrow} left the odd component"
                    classes.union(arrow, arrow.reversed())

        fused = []
        for group in classes.to_sets():
            unknown = group - arrow_set
            assert not unknown, f"moves produced arrows outside the arrow set: {sorted(map(str, unknown))}"
            members = tuple(sorted(group, key=self._sort_key))
            fused.append(ArrowClass(members[0], members))
        fused.sort(key=lambda c: self._sort_key(c.representative))
        logger.info(
            f"Fused {len(arrows)} arrows of {s!r} into {len(fused)} "
            f"{'tail ' if tails_only else ''}classes"
        )
        return tuple(fused)

    # --- dihedral labels ---

    def certificates(self, s: str) -> Iterable[Certificate]:
        """
        Every rank-3 certificate over ordered triples (J, K, L) with J in s's
        odd component. Each yields (rule, arrow, arrow, label).
        """
        d = self.diagram
        component = self._tree_component(s)
        for j in component.members:
            for k, l in itertools.permutations((v for v in d.vertices if v != j), 2):
                jk, jl, kl = d.label(j, k), d.label(j, l), d.label(k, l)
                if jk == 2 and jl == 4 and kl == 3:
                    yield "shared-tile-1", Arrow(j, k), Arrow(j, l), 4
                if is_even(jk) and jk >= 4 and jl == 2 and kl == 2:
                    yield "shared-tile-2", Arrow(j, k), Arrow(j, l), 2
                if jk == 2 and jl == 2 and is_finite(kl):
                    yield "shared-tile-3", Arrow(j, k), Arrow(j, l), kl
                if jk == 4 and jl == 3 and kl == 2:
                    yield "shared-target-4", Arrow(j, k), Arrow(l, k), 2
                if jk == 2 and {jl, kl} == {3, 5}:
                    yield "two-step-7", Arrow(j, k), Arrow(k, j), 2

    def compute_edge_labels(
        self,
        s: str,
        classes: Sequence[ArrowClass],
    ) -> dict[frozenset, Label]:
        """
        Label of every unordered pair of distinct classes, keyed by
        frozenset of class ids. Pairs with no certificate are INFINITY.
        """
        class_of = {arrow: c.id for c in classes for arrow in c.members}
        labels: dict[frozenset, Label] = {}
        witnesses: dict[frozenset, str] = {}

        for rule, first, second, label in self.certificates(s):
            a, b = class_of[first], class_of[second]
            if a == b:
                raise ConflictingCertificates(
                    f"{rule} relates {first} and {second} with label {label}, "
                    f"but both lie in class {a}"
                )
            key = frozenset((a, b))
            if key in labels and labels[key] != label:
                raise ConflictingCertificates(
                    f"classes {a} and {b}: {witnesses[key]} gives {labels[key]}, "
                    f"{rule} via {first}, {second} gives {label}"
                )
            if key not in labels:
                labels[key] = label
                witnesses[key] = f"{rule} via {first}, {second}"
                logger.debug(f"{a} -- {b}: {label} ({witnesses[key]})")

        for first, second in itertools.combinations(classes, 2):
            labels.setdefault(frozenset((first.id, second.id)), INFINITY)
        return labels

    # --- the whole centralizer ---

    def centralizer_diagram(self, s: str) -> CentralizerResult:
        self.diagram.require(s)
        component = self.analysis.component_of(s)
        classes = self.fuse_arrow_classes(s) if component.is_tree else None
        generators = WordGeneratorService(self.diagram, self).generator_set(s, classes)

        if not component.is_tree:
            logger.info(f"Odd component of {s!r} has cycle rank {component.cycle_rank}; skipping W_Omega diagram")
            return CentralizerResult(
                reflection=s,
                gamma_rank=component.cycle_rank,
                gamma_words=generators.gamma_words,
                domega=UnsupportedDiagram(component.cycle_rank),
                generators=generators,
            )

        labels = self.compute_edge_labels(s, classes)
        edges = []
        for first, second in itertools.combinations(classes, 2):
            label = labels[frozenset((first.id, second.id))]
            if label != 2:
                edges.append((first.id, second.id, label))
        domega = CoxeterDiagram.from_edges(edges, [c.id for c in classes])
        class_words = {c.id: generators.r_words[c.representative] for c in classes}
        summary = DiagramAnalysisService(domega).recognize_spherical()
        logger.info(f"W_Omega for {s!r}: {domega.rank} generators, {summary}")

        return CentralizerResult(
            reflection=s,
            gamma_rank=0,
            gamma_words=generators.gamma_words,
            domega=domega,
            classes=classes,
            class_words=class_words,
            spherical_summary=summary,
            generators=generators,
        )

    # --- single-edge trees ---

    def blowup_fast_path(self) -> CoxeterDiagram:
        """
        W_Omega's diagram for a tree of single edges, read off the A3
        subdiagrams: vertex ``x-m-y`` is the path x, m, y.
        """
        d = self.diagram
        graph = d.to_graph()
        if any(label != 3 for _, _, label in d.edges) or not nx.is_tree(graph):
            raise NotSingleEdgeTree("blow-up needs a connected tree whose edges are all labeled 3")

        triples = [
            (x, m, y)
            for m in d.vertices
            for x, y in itertools.combinations(d.neighbors(m), 2)
        ]
        names = [f"{x}-{m}-{y}" for x, m, y in triples]
        edges = []
        for (i, first), (j, second) in itertools.combinations(enumerate(triples), 2):
            label = _hull_label(d, graph, first, second)
            if label != 2:
                edges.append((names[i], names[j], label))
        logger.info(f"Blow-up produced {len(triples)} vertices and {len(edges)} edges")
        return CoxeterDiagram.from_edges(edges, names)


def _hull_label(d: CoxeterDiagram, graph: nx.Graph, first: tuple, second: tuple) -> Label:
    """Label between two A3 paths of a single-edge tree, from the shape of their convex hull."""
    terminals = set(first) | set(second)
    root = first[0]
    hull = set()
    for t in terminals:
        hull.update(nx.shortest_path(graph, root, t))
    sub = graph.subgraph(hull)

    branch = [v for v in sub if sub.degree(v) >= 3]
    def pendant(v: str) -> int:
        return sum(1 for w in sub.neighbors(v) if sub.degree(w) == 1)

    if len(branch) == 1 and sub.degree(branch[0]) == 4 and len(hull) == 5:
        return INFINITY  # star with four leaves
    if all(sub.degree(v) <= 3 for v in sub):
        if len(branch) == 1 and pendant(branch[0]) >= 2:
            return 2
        if len(branch) == 2 and all(pendant(v) == 2 for v in branch):
            return INFINITY
    return d.label(first[1], second[1])


# --- functional entry points ---


def enumerate_arrows(d: CoxeterDiagram, s: str) -> tuple[Arrow, ...]:
    return CentralizerService(d).enumerate_arrows(s)


def fuse_arrow_classes(
    d: CoxeterDiagram, s: str, arrows: Optional[Iterable[Arrow]] = None, tails_only: bool = False
) -> tuple[ArrowClass, ...]:
    return CentralizerService(d).fuse_arrow_classes(s, arrows, tails_only)


def compute_edge_labels(d: CoxeterDiagram, s: str, classes: Sequence[ArrowClass]) -> dict[frozenset, Label]:
    return CentralizerService(d).compute_edge_labels(s, classes)


def centralizer_diagram(d: CoxeterDiagram, s: str) -> CentralizerResult:
    return CentralizerService(d).centralizer_diagram(s)


def blowup_fast_path(d: CoxeterDiagram) -> CoxeterDiagram:
    return CentralizerService(d).blowup_fast_path()
