"""Crossword layout engine: scoring, placement legality, stochastic search."""

from .generator import (
    CrosswordLayout,
    GeneratorConfig,
    StopReason,
    generate,
    generate_parallel,
)
from .grid import Direction, Grid, LayoutScore, Placement, score_layout
from .placement import legal_placements
from .verify import verify_layout

__all__ = [
    "CrosswordLayout",
    "Direction",
    "GeneratorConfig",
    "Grid",
    "LayoutScore",
    "Placement",
    "StopReason",
    "generate",
    "generate_parallel",
    "legal_placements",
    "score_layout",
    "verify_layout",
]
