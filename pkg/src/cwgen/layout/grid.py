"""Grid state, placements, and the layout scoring formula.

The score of a layout is (FW + 0.5*LL) * FR * LR where FW is the number
of placed words, LL the number of cells shared by intersecting words, FR
the filled-cell count over the area of the smallest covering rectangle,
and LR the ratio of linked to filled cells. A layout with no
intersections scores exactly zero.

Coordinates are 0-based (row, col) with across meaning increasing column
index; right-to-left display is purely a renderer concern.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

from ..errors import InconsistentState

LL_WEIGHT = 0.5


class Direction(str, Enum):
    ACROSS = "across"
    DOWN = "down"


@dataclass(frozen=True)
class Placement:
    answer_id: str
    letters: tuple[str, ...]
    row: int
    col: int
    direction: Direction

    def __len__(self) -> int:
        return len(self.letters)

    def cells(self) -> list[tuple[int, int]]:
        if self.direction is Direction.ACROSS:
            return [(self.row, self.col + i) for i in range(len(self.letters))]
        return [(self.row + i, self.col) for i in range(len(self.letters))]

    def to_json(self) -> dict:
        return {
            "answer_id": self.answer_id,
            "row": self.row,
            "col": self.col,
            "dir": self.direction.value,
        }


@dataclass(frozen=True)
class LayoutScore:
    fw: int
    ll: int
    fr: float
    lr: float
    score: float

    @classmethod
    def zero(cls) -> "LayoutScore":
        return cls(0, 0, 0.0, 0.0, 0.0)

    @classmethod
    def from_counts(
        cls, fw: int, ll: int, filled: int, bbox_area: int
    ) -> "LayoutScore":
        if filled == 0:
            return cls(fw, ll, 0.0, 0.0, 0.0)
        fr = filled / bbox_area
        lr = ll / filled
        return cls(fw, ll, fr, lr, compose_score(fw, ll, fr, lr))

    def to_json(self) -> dict:
        return {
            "fw": self.fw,
            "ll": self.ll,
            "fr": self.fr,
            "lr": self.lr,
            "score": self.score,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "LayoutScore":
        return cls(doc["fw"], doc["ll"], doc["fr"], doc["lr"], doc["score"])


def compose_score(fw: int, ll: int, fr: float, lr: float) -> float:
    return (fw + LL_WEIGHT * ll) * fr * lr


class Grid:
    """Mutable cell matrix with per-direction coverage bookkeeping.

    Tracks filled-cell count, linked-cell count, and the bounding box of
    filled cells incrementally so candidate scoring stays cheap.
    """

    def __init__(self, rows: int, cols: int) -> None:
        if rows <= 0 or cols <= 0:
            raise ValueError("grid dimensions must be positive")
        self.rows = rows
        self.cols = cols
        self.cells: list[list[str]] = [[""] * cols for _ in range(rows)]
        self.across_cover: list[list[int]] = [[0] * cols for _ in range(rows)]
        self.down_cover: list[list[int]] = [[0] * cols for _ in range(rows)]
        self.filled = 0
        self.linked = 0
        self._bbox: Optional[tuple[int, int, int, int]] = None  # rmin, rmax, cmin, cmax

    def letter(self, row: int, col: int) -> str:
        return self.cells[row][col]

    def is_empty(self, row: int, col: int) -> bool:
        return self.cells[row][col] == ""

    def cover(self, row: int, col: int) -> int:
        return self.across_cover[row][col] + self.down_cover[row][col]

    @property
    def bbox(self) -> Optional[tuple[int, int, int, int]]:
        return self._bbox

    def bbox_area(self) -> int:
        if self._bbox is None:
            return 0
        rmin, rmax, cmin, cmax = self._bbox
        return (rmax - rmin + 1) * (cmax - cmin + 1)

    def place(self, placement: Placement) -> None:
        cover = (
            self.across_cover
            if placement.direction is Direction.ACROSS
            else self.down_cover
        )
        for (r, c), letter in zip(placement.cells(), placement.letters):
            existing = self.cells[r][c]
            if existing and existing != letter:
                raise InconsistentState(
                    f"cell ({r},{c}) holds {existing!r}, placement wants {letter!r}"
                )
            before = self.cover(r, c)
            if before == 0:
                self.filled += 1
                self.cells[r][c] = letter
                self._grow_bbox(r, c)
            elif before == 1:
                self.linked += 1
            cover[r][c] += 1

    def remove(self, placement: Placement) -> None:
        cover = (
            self.across_cover
            if placement.direction is Direction.ACROSS
            else self.down_cover
        )
        for r, c in placement.cells():
            cover[r][c] -= 1
            after = self.cover(r, c)
            if after == 0:
                self.cells[r][c] = ""
                self.filled -= 1
            elif after == 1:
                self.linked -= 1
        self._recompute_bbox()

    def clear(self) -> None:
        for r in range(self.rows):
            for c in range(self.cols):
                self.cells[r][c] = ""
                self.across_cover[r][c] = 0
                self.down_cover[r][c] = 0
        self.filled = 0
        self.linked = 0
        self._bbox = None

    def score(self, fw: int) -> LayoutScore:
        return LayoutScore.from_counts(fw, self.linked, self.filled, self.bbox_area())

    def _grow_bbox(self, r: int, c: int) -> None:
        if self._bbox is None:
            self._bbox = (r, r, c, c)
        else:
            rmin, rmax, cmin, cmax = self._bbox
            self._bbox = (min(rmin, r), max(rmax, r), min(cmin, c), max(cmax, c))

    def _recompute_bbox(self) -> None:
        self._bbox = None
        for r in range(self.rows):
            row = self.cells[r]
            for c in range(self.cols):
                if row[c]:
                    self._grow_bbox(r, c)

    @classmethod
    def from_placements(
        cls, rows: int, cols: int, placements: Iterable[Placement]
    ) -> "Grid":
        grid = cls(rows, cols)
        for placement in placements:
            grid.place(placement)
        return grid


def score_layout(grid: Grid, placements: Sequence[Placement]) -> LayoutScore:
    """Recompute the score from scratch; the authoritative path.

    Raises InconsistentState when a placement letter disagrees with its
    grid cell.
    """
    coverage: Counter[tuple[int, int]] = Counter()
    letters: dict[tuple[int, int], str] = {}
    for placement in placements:
        for (r, c), letter in zip(placement.cells(), placement.letters):
            if not (0 <= r < grid.rows and 0 <= c < grid.cols):
                raise InconsistentState(f"cell ({r},{c}) out of bounds")
            if grid.cells[r][c] != letter:
                raise InconsistentState(
                    f"cell ({r},{c}) holds {grid.cells[r][c]!r}, "
                    f"placement {placement.answer_id!r} says {letter!r}"
                )
            if letters.get((r, c), letter) != letter:
                raise InconsistentState(f"conflicting letters at ({r},{c})")
            letters[(r, c)] = letter
            coverage[(r, c)] += 1

    if not coverage:
        return LayoutScore.zero()
    filled = len(coverage)
    ll = sum(1 for count in coverage.values() if count >= 2)
    rows = [r for r, _ in coverage]
    cols = [c for _, c in coverage]
    area = (max(rows) - min(rows) + 1) * (max(cols) - min(cols) + 1)
    return LayoutScore.from_counts(len(placements), ll, filled, area)
