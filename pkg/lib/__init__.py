"""
Library modules for the Coxeter reflection centralizer toolkit.

This package contains the diagram value type, the builtin diagrams and the
exception hierarchy used throughout the system.
"""

from .coxeterDiagram import (
    INFINITY,
    CoxeterDiagram,
    parse_diagram,
)
from .builtinDiagrams import builtin_diagram

__all__ = [
    'INFINITY',
    'CoxeterDiagram',
    'parse_diagram',
    'builtin_diagram',
]
