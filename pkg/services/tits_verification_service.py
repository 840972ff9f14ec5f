from __future__ import annotations

import itertools
import logging
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import torch
from networkx.utils import UnionFind

from config import HASH_GRID, MAX_ORDER, MAX_ROOTS, ORDER_BOUND, TOLERANCE
from lib.coxeterDiagram import INFINITY, CoxeterDiagram
from lib.errors import NotFinite, OrderExceeded, UnknownLetter
from services.diagram_analysis_service import DiagramAnalysisService
from services.word_generator_service import Word

logger = logging.getLogger(__name__)

DTYPE = torch.float64

WordLike = Union[Word, Sequence[str]]

# Permutation of the root list: element[p] is the index of the image of root p.
Element = tuple[int, ...]


def _letters(word: WordLike) -> tuple[str, ...]:
    return word.letters if isinstance(word, Word) else tuple(word)


def _inf_norm(m: torch.Tensor) -> float:
    return torch.linalg.matrix_norm(m, ord=float("inf")).item()


@dataclass(frozen=True)
class ElementOrder:
    """Least k <= bound with m^k = I, or None when the bound was reached first."""

    value: Optional[int]
    bound: int

    @property
    def exceeds_bound(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        return f">{self.bound}" if self.exceeds_bound else str(self.value)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


class TitsRepresentation:
    """
    The standard reflection representation of a Coxeter group.

    The bilinear form has B(i, i) = 1, B(i, j) = -cos(pi / m) for finite m
    (exactly 0 for unjoined pairs) and -1 for infinite labels. Generator i
    acts by v -> v - 2 B(e_i, v) e_i.
    """

    def __init__(self, diagram: CoxeterDiagram, check_tol: float = 1e-12):
        self.diagram = diagram
        self.n = diagram.rank
        self.gram = self._build_gram()
        self.identity = torch.eye(self.n, dtype=DTYPE)
        self.generators = tuple(self._reflection(i) for i in range(self.n))
        self._check(check_tol)

    def _build_gram(self) -> torch.Tensor:
        d = self.diagram
        gram = torch.eye(self.n, dtype=DTYPE)
        for u, v, label in d.edges:
            value = -1.0 if label is INFINITY else -math.cos(math.pi / label)
            i, j = d.index(u), d.index(v)
            gram[i, j] = gram[j, i] = value
        return gram

    def _reflection(self, i: int) -> torch.Tensor:
        sigma = torch.eye(self.n, dtype=DTYPE)
        sigma[i, :] -= 2.0 * self.gram[i, :]
        return sigma

    def _check(self, tol: float) -> None:
        for v, sigma in zip(self.diagram.vertices, self.generators):
            if _inf_norm(sigma @ sigma - self.identity) >= tol:
                raise RuntimeError(f"generator {v} is not an involution")
            if _inf_norm(sigma.T @ self.gram @ sigma - self.gram) >= tol:
                raise RuntimeError(f"generator {v} does not preserve the form")
        for (i, u), (j, v) in itertools.combinations(enumerate(self.diagram.vertices), 2):
            label = self.diagram.label(u, v)
            if label is INFINITY or label > 8:
                continue
            order = element_order(self.generators[i] @ self.generators[j], label, 1e-9)
            if order.value != label:
                raise RuntimeError(f"{u}{v} has order {order}, expected {label}")

    def generator(self, letter: str) -> torch.Tensor:
        if letter not in self.diagram:
            raise UnknownLetter(letter)
        return self.generators[self.diagram.index(letter)]

    def evaluate(self, word: WordLike) -> torch.Tensor:
        """Matrix of sigma_w1 * ... * sigma_wk; the empty word is the identity."""
        matrix = self.identity.clone()
        for letter in _letters(word):
            matrix = matrix @ self.generator(letter)
        return matrix

    def preserves_form(self, matrix: torch.Tensor, tol: float = TOLERANCE) -> bool:
        return _inf_norm(matrix.T @ self.gram @ matrix - self.gram) < tol


def element_order(m: torch.Tensor, bound: int = ORDER_BOUND, tol: float = TOLERANCE) -> ElementOrder:
    if bound < 1:
        raise ValueError("bound must be >= 1")
    identity = torch.eye(m.shape[0], dtype=m.dtype)
    power = m
    for k in range(1, bound + 1):
        if _inf_norm(power - identity) < tol:
            return ElementOrder(k, bound)
        power = power @ m
    return ElementOrder(None, bound)


class BruteForceOracle:
    """
    Enumerates a finite Coxeter group as permutations of its root system and
    answers centralizer questions about one simple reflection.
    """

    def __init__(
        self,
        diagram: CoxeterDiagram,
        s: str,
        max_order: int = MAX_ORDER,
        max_roots: int = MAX_ROOTS,
        grid: float = HASH_GRID,
    ):
        diagram.require(s)
        summary = DiagramAnalysisService(diagram).recognize_spherical()
        if not summary.spherical:
            raise NotFinite("brute force needs a spherical diagram")
        if summary.order > max_order:
            raise OrderExceeded(f"group order {summary.order} exceeds the limit {max_order}")

        self.diagram = diagram
        self.s = s
        self.max_order = max_order
        self.max_roots = max_roots
        self.grid = grid
        self.rep = TitsRepresentation(diagram)

        self.roots, self.perms = self._enumerate_roots()
        self.simple_roots = tuple(range(diagram.rank))
        self.identity: Element = tuple(range(len(self.roots)))
        self.elements = self._enumerate_elements()
        self._s_perm = self.perms[diagram.index(s)]
        self.centralizer = frozenset(g for g in self.elements if self._commutes_with_s(g))
        logger.info(
            f"Brute force on {summary}: {len(self.roots)} roots, "
            f"{self.group_order} elements, centralizer of {s!r} has {self.centralizer_order}"
        )

    def _key(self, vector: Iterable[float]) -> tuple[int, ...]:
        return tuple(round(x / self.grid) for x in vector)

    def _enumerate_roots(self) -> tuple[list[torch.Tensor], tuple[Element, ...]]:
        # the simple roots come first, so root i is e_i
        basis = torch.eye(self.diagram.rank, dtype=DTYPE)
        roots = [basis[i] for i in range(self.diagram.rank)]
        index = {self._key(r.tolist()): i for i, r in enumerate(roots)}
        images: list[dict[int, int]] = [dict() for _ in self.rep.generators]

        frontier = list(range(len(roots)))
        while frontier:
            batch = torch.stack([roots[p] for p in frontier], dim=1)
            next_frontier = []
            for g, sigma in enumerate(self.rep.generators):
                for p, image in zip(frontier, (sigma @ batch).T):
                    key = self._key(image.tolist())
                    if key not in index:
                        if len(roots) >= self.max_roots:
                            raise OrderExceeded(f"root system exceeds {self.max_roots} roots")
                        index[key] = len(roots)
                        roots.append(image.clone())
                        next_frontier.append(index[key])
                    images[g][p] = index[key]
            frontier = next_frontier

        perms = tuple(tuple(image[p] for p in range(len(roots))) for image in images)
        return roots, perms

    @staticmethod
    def _compose(g: Element, h: Element) -> Element:
        """g after h."""
        return tuple(g[p] for p in h)

    def _enumerate_elements(self) -> list[Element]:
        seen = {self.identity}
        elements = [self.identity]
        queue = deque([self.identity])
        while queue:
            g = queue.popleft()
            for perm in self.perms:
                h = self._compose(g, perm)
                if h not in seen:
                    if len(seen) >= self.max_order:
                        raise OrderExceeded(f"group has more than {self.max_order} elements")
                    seen.add(h)
                    elements.append(h)
                    queue.append(h)
        return elements

    def _commutes_with_s(self, g: Element) -> bool:
        return self._compose(g, self._s_perm) == self._compose(self._s_perm, g)

    @property
    def group_order(self) -> int:
        return len(self.elements)

    @property
    def centralizer_order(self) -> int:
        return len(self.centralizer)

    def element_of(self, word: WordLike) -> Element:
        g = self.identity
        for letter in _letters(word):
            if letter not in self.diagram:
                raise UnknownLetter(letter)
            g = self._compose(g, self.perms[self.diagram.index(letter)])
        return g

    def contains(self, word: WordLike) -> bool:
        """Whether the word's element lies in the centralizer of s."""
        return self.element_of(word) in self.centralizer

    def closure(self, words: Iterable[WordLike]) -> frozenset[Element]:
        generators = {self.element_of(w) for w in words}
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            g = queue.popleft()
            for h in generators:
                gh = self._compose(g, h)
                if gh not in seen:
                    seen.add(gh)
                    queue.append(gh)
        return frozenset(seen)

    def closure_equals_centralizer(self, words: Iterable[WordLike]) -> bool:
        return self.closure(words) == self.centralizer

    def reflection_classes(self) -> list[tuple[str, ...]]:
        """Simple generators grouped by conjugacy of their reflections."""
        classes = UnionFind(range(len(self.roots)))
        for perm in self.perms:
            for p, q in enumerate(perm):
                classes.union(p, q)
        negative = {self._key(r.tolist()): p for p, r in enumerate(self.roots)}
        for p, root in enumerate(self.roots):
            classes.union(p, negative[self._key((-root).tolist())])

        grouped: dict[int, list[str]] = {}
        for i, v in enumerate(self.diagram.vertices):
            grouped.setdefault(classes[i], []).append(v)
        return sorted((tuple(vs) for vs in grouped.values()), key=lambda vs: self.diagram.index(vs[0]))

    def matrix_of(self, g: Element) -> torch.Tensor:
        """Column i is the image of the simple root e_i."""
        return torch.stack([self.roots[g[i]] for i in self.simple_roots], dim=1)

    def distinct_matrix_count(self) -> int:
        return len({self._key(self.matrix_of(g).flatten().tolist()) for g in self.elements})


class TitsVerificationService:
    """Numerical checks of the emitted centralizer generators in the Tits representation."""

    def __init__(self, diagram: CoxeterDiagram, tol: float = TOLERANCE, order_bound: int = ORDER_BOUND):
        self.diagram = diagram
        self.tol = tol
        self.order_bound = order_bound
        self.rep = TitsRepresentation(diagram)

    def _close(self, a: torch.Tensor, b: torch.Tensor) -> bool:
        return _inf_norm(a - b) < self.tol

    def verify_generators(self, s: str) -> list[CheckResult]:
        from services.centralizer_service import CentralizerService

        result = CentralizerService(self.diagram).centralizer_diagram(s)
        generators = result.generators
        sigma_s = self.rep.generator(s)
        matrices = {w: self.rep.evaluate(w) for w in generators.all_words()}
        r_matrices = {arrow: matrices[w] for arrow, w in generators.r_words.items()}

        checks = []

        bad = [str(w) for w, m in matrices.items() if not self._close(m @ sigma_s, sigma_s @ m)]
        checks.append(CheckResult("commutes-with-s", not bad, _summary(len(matrices), bad)))

        bad = [a.name for a, m in r_matrices.items() if not self._close(m @ m, self.rep.identity)]
        checks.append(CheckResult("r-word-involution", not bad, _summary(len(r_matrices), bad)))

        expected_trace = self.rep.n - 2
        bad = [a.name for a, m in r_matrices.items() if abs(torch.trace(m).item() - expected_trace) >= self.tol]
        checks.append(CheckResult("r-word-trace", not bad, _summary(len(r_matrices), bad)))

        bad = [str(w) for w, m in matrices.items() if not self.rep.preserves_form(m, self.tol)]
        checks.append(CheckResult("form-preservation", not bad, _summary(len(matrices), bad)))

        if not result.diagram_supported:
            detail = f"skipped, odd component has cycle rank {result.gamma_rank}"
            checks.append(CheckResult("fused-arrow-equality", True, detail))
            checks.append(CheckResult("class-label-orders", True, detail))
            return checks

        bad = []
        for arrow_class in result.classes:
            head = r_matrices[arrow_class.representative]
            bad += [a.name for a in arrow_class.members if not self._close(r_matrices[a], head)]
        checks.append(CheckResult("fused-arrow-equality", not bad, _summary(len(r_matrices), bad)))

        bad = []
        pairs = list(itertools.combinations(result.classes, 2))
        for first, second in pairs:
            label = result.domega.label(first.id, second.id)
            product = matrices[result.class_words[first.id]] @ matrices[result.class_words[second.id]]
            order = element_order(product, self.order_bound, self.tol)
            expected = None if label is INFINITY or label > self.order_bound else label
            if order.value != expected:
                bad.append(f"{first.id}~{second.id} label {label} order {order}")
        checks.append(CheckResult("class-label-orders", not bad, _summary(len(pairs), bad)))

        logger.info(f"Verified generators of {s!r}: {sum(c.passed for c in checks)}/{len(checks)} checks passed")
        return checks


def _summary(total: int, bad: list[str]) -> str:
    if not bad:
        return f"{total} checked"
    shown = ", ".join(bad[:5]) + (", ..." if len(bad) > 5 else "")
    return f"{len(bad)} of {total} failed: {shown}"


# --- functional entry points ---


def build_representation(d: CoxeterDiagram) -> TitsRepresentation:
    return TitsRepresentation(d)


def evaluate_word(rep: TitsRepresentation, w: WordLike) -> torch.Tensor:
    return rep.evaluate(w)


def brute_force_centralizer(d: CoxeterDiagram, s: str, max_order: int = MAX_ORDER) -> BruteForceOracle:
    return BruteForceOracle(d, s, max_order)


def verify_generators(
    d: CoxeterDiagram, s: str, tol: float = TOLERANCE, order_bound: int = ORDER_BOUND
) -> list[CheckResult]:
    return TitsVerificationService(d, tol, order_bound).verify_generators(s)
