"""Bubble-sort star graphs: distances, decycling-set bounds, constructions and certificates."""

from .errors import (
    BSStarError,
    DimensionError,
    ParityError,
    ParseError,
    ResourceError,
    VertexRangeError,
)
from .graph import AdjacencyMode, BubbleSortStarGraph, build
from .perm import Parity, Permutation, Transposition

__all__ = [
    "AdjacencyMode",
    "BSStarError",
    "BubbleSortStarGraph",
    "DimensionError",
    "Parity",
    "ParityError",
    "ParseError",
    "Permutation",
    "ResourceError",
    "Transposition",
    "VertexRangeError",
    "build",
]

__version__ = "0.1.0"
