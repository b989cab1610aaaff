"""Legal placement enumeration under crossword soundness rules.

A placement is legal when it fits in bounds, agrees with every occupied
cell it crosses, shares at least one cell with the existing layout (unless
the grid is empty), and creates no accidental letter runs: the cells just
before and after the word along its axis are empty, every newly filled
cell has empty perpendicular neighbours, and crossings only ever reuse
cells filled by perpendicular words.
"""

from __future__ import annotations

from typing import Sequence

from ..errors import WordTooLong, WordTooShort
from .grid import Direction, Grid, Placement


def legal_placements(
    letters: Sequence[str],
    grid: Grid,
    answer_id: str = "?",
    *,
    require_crossing: bool | None = None,
) -> list[Placement]:
    """All legal placements of *letters*, across candidates first, then
    down, each in row-major order of the start cell.

    `require_crossing` defaults to "grid non-empty"; the first word of a
    layout is exempt from the sharing rule.
    """
    word = tuple(letters)
    length = len(word)
    if length < 2:
        raise WordTooShort(f"word of length {length} cannot be placed")
    if length > max(grid.rows, grid.cols):
        raise WordTooLong(
            f"word of length {length} exceeds both grid dimensions "
            f"({grid.rows}x{grid.cols})"
        )
    if require_crossing is None:
        require_crossing = grid.filled > 0

    out: list[Placement] = []
    for direction in (Direction.ACROSS, Direction.DOWN):
        span_rows = grid.rows if direction is Direction.ACROSS else grid.rows - length + 1
        span_cols = grid.cols - length + 1 if direction is Direction.ACROSS else grid.cols
        for row in range(span_rows):
            for col in range(span_cols):
                if _fits(word, grid, row, col, direction, require_crossing):
                    out.append(Placement(answer_id, word, row, col, direction))
    return out


def crossing_count(placement: Placement, grid: Grid) -> int:
    """Cells of *placement* that are already filled."""
    return sum(1 for r, c in placement.cells() if grid.cells[r][c])


def _fits(
    word: tuple[str, ...],
    grid: Grid,
    row: int,
    col: int,
    direction: Direction,
    require_crossing: bool,
) -> bool:
    cells = grid.cells
    length = len(word)
    across = direction is Direction.ACROSS

    # Boundary cells along the word's own axis must be empty.
    if across:
        if col > 0 and cells[row][col - 1]:
            return False
        if col + length < grid.cols and cells[row][col + length]:
            return False
    else:
        if row > 0 and cells[row - 1][col]:
            return False
        if row + length < grid.rows and cells[row + length][col]:
            return False

    same_cover = grid.across_cover if across else grid.down_cover
    crossings = 0
    for i in range(length):
        r, c = (row, col + i) if across else (row + i, col)
        existing = cells[r][c]
        if existing:
            # Reused cells must match and must belong to perpendicular
            # words only; same-direction overlap would merge two words
            # into one unsound run.
            if existing != word[i] or same_cover[r][c]:
                return False
            crossings += 1
        else:
            # A newly filled cell may not touch perpendicular neighbours,
            # or it would extend some other word into a ghost run.
            if across:
                if (r > 0 and cells[r - 1][c]) or (r + 1 < grid.rows and cells[r + 1][c]):
                    return False
            else:
                if (c > 0 and cells[r][c - 1]) or (c + 1 < grid.cols and cells[r][c + 1]):
                    return False

    if require_crossing and crossings == 0:
        return False
    # Unreachable on sound grids (an all-crossing word would mean the run
    # already existed); guards against degenerate input states.
    if crossings == length:
        return False
    return True
