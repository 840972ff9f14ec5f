"""
Exception hierarchy shared by the diagram, centralizer, word and
verification services.

Input problems derive from DiagramError (a ValueError), so callers that only
care about "bad input" can catch that. ConflictingCertificates is a
RuntimeError: it means the engine itself is wrong, not the input.
"""


class CoxeterError(Exception):
    """Root of every error raised by this package."""


class DiagramError(CoxeterError, ValueError):
    """The caller handed us something that is not a valid input."""


class ParseError(DiagramError):
    def __init__(self, message: str, line_no: int | None = None):
        super().__init__(f"line {line_no}: {message}" if line_no is not None else message)
        self.line_no = line_no


class DuplicateEdge(ParseError):
    pass


class SelfEdge(ParseError):
    pass


class BadLabel(ParseError):
    pass


class EmptyDiagram(DiagramError):
    pass


class UnknownName(DiagramError):
    pass


class BadRank(DiagramError):
    pass


class UnknownVertex(DiagramError):
    def __init__(self, vertex: str):
        super().__init__(f"unknown vertex: {vertex!r}")
        self.vertex = vertex


class UnknownLetter(DiagramError):
    def __init__(self, letter: str):
        super().__init__(f"word letter is not a generator: {letter!r}")
        self.letter = letter


class NotOddPath(DiagramError):
    pass


class NotEvenJoin(DiagramError):
    pass


class NotSingleEdgeTree(DiagramError):
    pass


class UnsupportedCycles(CoxeterError):
    """The odd component of the reflection has cycles; no diagram is computed."""

    def __init__(self, reflection: str, cycle_rank: int):
        super().__init__(
            f"odd component of {reflection!r} has cycle rank {cycle_rank}; "
            "the centralizer diagram is only computed for tree components"
        )
        self.reflection = reflection
        self.cycle_rank = cycle_rank


class NotFinite(CoxeterError):
    pass


class OrderExceeded(CoxeterError):
    pass


class ConflictingCertificates(CoxeterError, RuntimeError):
    pass
