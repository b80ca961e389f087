"""Periodic parallelogram polyominoes, ordered cyclic forests and necklaces of trees."""

from . import enumerate, forest, geometry, necklace, series
from .geometry import DEFAULT, LITERAL, PP, PPP, Conventions, Degeneracy, HeightRule, Seam

__version__ = "0.1.0"

__all__ = [
    "DEFAULT",
    "LITERAL",
    "PP",
    "PPP",
    "Conventions",
    "Degeneracy",
    "HeightRule",
    "Seam",
    "enumerate",
    "forest",
    "geometry",
    "necklace",
    "series",
]
