"""S-graphs, their flips, and the graded algebras attached to them."""

from .sgraph_core import SGraph, SGraphError, validate, canonical_form, extend, find_orientation
from .flip_engine import forward_flip, backward_flip, exchange_graph, FlipError
from .rgb_algebra import build_rgb, RgbAlgebra

__all__ = [
    "SGraph", "SGraphError", "validate", "canonical_form", "extend", "find_orientation",
    "forward_flip", "backward_flip", "exchange_graph", "FlipError", "build_rgb", "RgbAlgebra",
]
__version__ = "0.1.0"
