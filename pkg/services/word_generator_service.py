from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Mapping, Optional, Sequence

from lib.coxeterDiagram import CoxeterDiagram, is_even, is_odd
from lib.errors import NotEvenJoin, NotOddPath, UnknownLetter
from services.diagram_analysis_service import OddComponent

if TYPE_CHECKING:
    from services.centralizer_service import Arrow, ArrowClass, CentralizerService

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Word:
    """
    A product of simple reflections. (w1, ..., wk) stands for
    sigma_w1 * ... * sigma_wk; the rightmost factor acts on vectors first.
    """

    letters: tuple[str, ...] = ()

    @classmethod
    def parse(cls, text: str, diagram: Optional[CoxeterDiagram] = None) -> "Word":
        letters = tuple(text.split())
        if diagram is not None:
            for letter in letters:
                if letter not in diagram:
                    raise UnknownLetter(letter)
        return cls(letters)

    def inverse(self) -> "Word":
        # every letter is an involution
        return Word(tuple(reversed(self.letters)))

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self) -> str:
        return " ".join(self.letters)


@dataclass(frozen=True)
class GeneratorSet:
    """
    Explicit generators of C_W(s): s itself, one word per fundamental loop
    (generating Gamma_Omega) and one reflection word per arrow of the
    spanning-tree tiles. ``class_map`` is empty when s's odd component has cycles.
    """

    s: str
    component: OddComponent
    gamma_words: tuple[Word, ...]
    r_words: Mapping["Arrow", Word] = field(default_factory=dict)
    class_map: Mapping["Arrow", str] = field(default_factory=dict)

    def all_words(self) -> list[Word]:
        return [Word((self.s,)), *self.gamma_words, *self.r_words.values()]


class WordGeneratorService:
    """Builds the words p_gamma and r_(gamma,u) over one diagram."""

    def __init__(self, diagram: CoxeterDiagram, centralizer: Optional["CentralizerService"] = None):
        self.diagram = diagram
        self._centralizer = centralizer

    @property
    def centralizer(self) -> "CentralizerService":
        if self._centralizer is None:
            from services.centralizer_service import CentralizerService

            self._centralizer = CentralizerService(self.diagram)
        return self._centralizer

    def _check_path(self, gamma: Sequence[str]) -> None:
        if not gamma:
            raise NotOddPath("a path needs at least its start vertex")
        for v in gamma:
            self.diagram.require(v)
        for previous, current in zip(gamma, gamma[1:]):
            label = self.diagram.label(previous, current)
            if not is_odd(label):
                raise NotOddPath(f"{previous}-{current} has label {label}, not an odd finite label")

    def p_gamma(self, gamma: Sequence[str]) -> Word:
        """(t1 t0)^l1 (t2 t1)^l2 ... (tn t(n-1))^ln for the odd path gamma = (t0, ..., tn)."""
        self._check_path(gamma)
        letters: list[str] = []
        for previous, current in zip(gamma, gamma[1:]):
            half = (self.diagram.label(previous, current) - 1) // 2
            letters.extend((current, previous) * half)
        return Word(tuple(letters))

    def r_gamma_u(self, gamma: Sequence[str], u: str) -> Word:
        """p_gamma . u (tn u)^(lambda - 1) . p_gamma^-1, where m(tn, u) = 2 lambda."""
        self._check_path(gamma)
        self.diagram.require(u)
        end = gamma[-1]
        label = self.diagram.label(end, u)
        if u == end or not is_even(label):
            raise NotEvenJoin(f"{end}-{u} has label {label}, not an even join")
        p = self.p_gamma(gamma)
        middle = (u,) + (end, u) * (label // 2 - 1)
        return p + Word(middle) + p.inverse()

    def generator_set(self, s: str, classes: Optional[Sequence["ArrowClass"]] = None) -> GeneratorSet:
        d = self.diagram
        d.require(s)
        component = self.centralizer.analysis.rooted_at(s)

        gamma_words = tuple(self.p_gamma(loop) for loop in component.loops)
        r_words = {
            arrow: self.r_gamma_u(component.tree_path(arrow.tile), arrow.target)
            for arrow in self.centralizer.enumerate_arrows(s)
        }
        class_map = {}
        if component.is_tree:
            if classes is None:
                classes = self.centralizer.fuse_arrow_classes(s, r_words)
            class_map = {arrow: arrow_class.id for arrow_class in classes for arrow in arrow_class.members}
        logger.info(
            f"Generator set for {s!r}: {len(gamma_words)} loop words, {len(r_words)} reflection words"
        )
        return GeneratorSet(s, component, gamma_words, r_words, class_map)


# --- functional entry points ---


def p_gamma(d: CoxeterDiagram, gamma: Sequence[str]) -> Word:
    return WordGeneratorService(d).p_gamma(gamma)


def r_gamma_u(d: CoxeterDiagram, gamma: Sequence[str], u: str) -> Word:
    return WordGeneratorService(d).r_gamma_u(gamma, u)


def generator_set(d: CoxeterDiagram, s: str) -> GeneratorSet:
    return WordGeneratorService(d).generator_set(s)
