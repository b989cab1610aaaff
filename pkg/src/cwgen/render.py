"""Puzzle artifacts from a layout: terminal text, SVG, and puzzle JSON.

Right-to-left display is handled by explicit column mirroring (internal
column c renders at display column cols-1-c) rather than relying on
terminal bidi behaviour, so output is deterministic everywhere. Clue
numbering scans cells top row first and right-to-left within a row (i.e.
ascending internal column, which *displays* right-to-left); a cell that
starts both an across and a down word gets one shared number.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping
from xml.sax.saxutils import escape

from .errors import InvalidLayout, MissingClue
from .layout import CrosswordLayout, Direction, Placement
from .layout.verify import verify_layout
from .models import ClueAnswerPair

EMPTY_GLYPH = "■"
BLANK_GLYPH = "_"

CELL = 40
MARGIN = 10


@dataclass
class Numbering:
    number_by_cell: dict[tuple[int, int], int]
    across: list[tuple[int, Placement]]
    down: list[tuple[int, Placement]]


def number_clues(layout: CrosswordLayout) -> Numbering:
    """Assign clue numbers in display scan order; shared starts share."""
    violations = verify_layout(layout)
    if violations:
        raise InvalidLayout("; ".join(violations))

    across_starts = {
        (p.row, p.col): p for p in layout.placements if p.direction is Direction.ACROSS
    }
    down_starts = {
        (p.row, p.col): p for p in layout.placements if p.direction is Direction.DOWN
    }
    numbering = Numbering({}, [], [])
    next_number = 1
    for r in range(layout.grid.rows):
        for c in range(layout.grid.cols):
            cell = (r, c)
            is_across = cell in across_starts
            is_down = cell in down_starts
            if not (is_across or is_down):
                continue
            numbering.number_by_cell[cell] = next_number
            if is_across:
                numbering.across.append((next_number, across_starts[cell]))
            if is_down:
                numbering.down.append((next_number, down_starts[cell]))
            next_number += 1
    return numbering


def render_text(layout: CrosswordLayout, reveal: bool = False) -> str:
    """One line per row, columns emitted rightmost-internal first."""
    grid = layout.grid
    lines = []
    for r in range(grid.rows):
        glyphs = []
        for c in range(grid.cols - 1, -1, -1):
            letter = grid.cells[r][c]
            if not letter:
                glyphs.append(EMPTY_GLYPH)
            else:
                glyphs.append(letter if reveal else BLANK_GLYPH)
        lines.append(" ".join(glyphs))
    return "\n".join(lines) + "\n"


def export_svg(
    layout: CrosswordLayout, numbering: Numbering, reveal: bool = False
) -> str:
    """SVG 1.1 document; cells mirrored so the grid reads right-to-left."""
    grid = layout.grid
    width = grid.cols * CELL + 2 * MARGIN
    height = grid.rows * CELL + 2 * MARGIN
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    for r in range(grid.rows):
        for c in range(grid.cols):
            x = MARGIN + (grid.cols - 1 - c) * CELL
            y = MARGIN + r * CELL
            letter = grid.cells[r][c]
            fill = "#ffffff" if letter else "#1f2430"
            parts.append(
                f'<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" '
                f'fill="{fill}" stroke="#333333"/>'
            )
            number = numbering.number_by_cell.get((r, c))
            if number is not None:
                parts.append(
                    f'<text class="num" x="{x + CELL - 3}" y="{y + 12}" '
                    f'text-anchor="end" font-size="10" fill="#555555">{number}</text>'
                )
            if letter and reveal:
                parts.append(
                    f'<text class="letter" x="{x + CELL // 2}" y="{y + 28}" '
                    f'text-anchor="middle" font-size="20">{escape(letter)}</text>'
                )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def export_puzzle_json(
    layout: CrosswordLayout,
    pairs: Mapping[str, ClueAnswerPair],
    numbering: Numbering,
) -> dict:
    """The JSON bundle the review UI consumes.

    `grid` masks letters ("." = letter cell, "#" = block); `solution`
    carries them. Raises MissingClue when a placement's pair is absent.
    """
    def entries(rows: list[tuple[int, Placement]]) -> list[dict]:
        out = []
        for number, placement in rows:
            pair = pairs.get(placement.answer_id)
            if pair is None:
                raise MissingClue(placement.answer_id)
            out.append(
                {
                    "num": number,
                    "clue": pair.clue,
                    "answer_id": placement.answer_id,
                    "len": len(placement.letters),
                    "row": placement.row,
                    "col": placement.col,
                }
            )
        return out

    grid = layout.grid
    return {
        "rows": grid.rows,
        "cols": grid.cols,
        "grid": [
            ["." if cell else "#" for cell in row] for row in grid.cells
        ],
        "numbers": [
            {"row": r, "col": c, "num": n}
            for (r, c), n in sorted(
                numbering.number_by_cell.items(), key=lambda item: item[1]
            )
        ],
        "across": entries(numbering.across),
        "down": entries(numbering.down),
        "solution": [
            [cell if cell else "#" for cell in row] for row in grid.cells
        ],
        "score": layout.score.to_json(),
        "stop_reason": layout.stop_reason.value,
    }
