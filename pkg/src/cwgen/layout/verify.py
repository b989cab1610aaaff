"""Independent layout checker used by tests, the CLI, and the service.

Violations come back as data (a list of human-readable strings), never as
exceptions, so callers can report all problems at once. An empty list
means the layout is valid: in bounds, letter-consistent, sound (every
maximal run of two or more cells is exactly one placement), connected,
and carrying a score that matches recomputation.
"""

from __future__ import annotations

from .generator import CrosswordLayout
from .grid import Direction, Placement, score_layout

SCORE_TOLERANCE = 1e-12


def verify_layout(layout: CrosswordLayout) -> list[str]:
    violations: list[str] = []
    grid = layout.grid
    placements = layout.placements

    ids = [p.answer_id for p in placements]
    if len(set(ids)) != len(ids):
        violations.append("duplicate answer_id among placements")

    covered: dict[tuple[int, int], str] = {}
    for p in placements:
        if len(p.letters) < 2:
            violations.append(f"placement {p.answer_id}: shorter than 2 letters")
            continue
        cells = p.cells()
        out_of_bounds = [
            (r, c)
            for r, c in cells
            if not (0 <= r < grid.rows and 0 <= c < grid.cols)
        ]
        if out_of_bounds:
            violations.append(
                f"placement {p.answer_id}: cell {out_of_bounds[0]} out of bounds"
            )
            continue
        for (r, c), letter in zip(cells, p.letters):
            if grid.cells[r][c] != letter:
                violations.append(
                    f"placement {p.answer_id}: cell ({r},{c}) holds "
                    f"{grid.cells[r][c]!r}, expected {letter!r}"
                )
            covered[(r, c)] = letter

    if violations:
        return violations

    for r in range(grid.rows):
        for c in range(grid.cols):
            if grid.cells[r][c] and (r, c) not in covered:
                violations.append(f"letter cell ({r},{c}) not covered by any placement")
            if not grid.cells[r][c] and (r, c) in covered:
                violations.append(f"placement covers empty cell ({r},{c})")

    violations.extend(_soundness(layout))
    violations.extend(_connectivity(placements))

    try:
        recomputed = score_layout(grid, placements)
    except Exception as exc:  # inconsistencies already reported above
        violations.append(f"score recomputation failed: {exc}")
        return violations
    stored = layout.score
    if (stored.fw, stored.ll) != (recomputed.fw, recomputed.ll):
        violations.append(
            f"score mismatch: stored fw/ll {stored.fw}/{stored.ll}, "
            f"recomputed {recomputed.fw}/{recomputed.ll}"
        )
    for name, got, want in (
        ("fr", stored.fr, recomputed.fr),
        ("lr", stored.lr, recomputed.lr),
        ("score", stored.score, recomputed.score),
    ):
        if abs(got - want) > SCORE_TOLERANCE:
            violations.append(f"score mismatch: stored {name}={got}, recomputed {want}")

    return violations


def _runs(cells: list[list[str]], direction: Direction) -> list[tuple[int, int, tuple[str, ...]]]:
    """Maximal runs of >=2 letter cells as (row, col, letters) start tuples."""
    rows, cols = len(cells), len(cells[0])
    runs = []
    if direction is Direction.ACROSS:
        for r in range(rows):
            c = 0
            while c < cols:
                if cells[r][c] and (c == 0 or not cells[r][c - 1]):
                    end = c
                    while end < cols and cells[r][end]:
                        end += 1
                    if end - c >= 2:
                        runs.append((r, c, tuple(cells[r][c:end])))
                    c = end
                else:
                    c += 1
    else:
        for c in range(cols):
            r = 0
            while r < rows:
                if cells[r][c] and (r == 0 or not cells[r - 1][c]):
                    end = r
                    while end < rows and cells[end][c]:
                        end += 1
                    if end - r >= 2:
                        runs.append((r, c, tuple(cells[i][c] for i in range(r, end))))
                    r = end
                else:
                    r += 1
    return runs


def _soundness(layout: CrosswordLayout) -> list[str]:
    """Every maximal run of >=2 cells must be exactly one placement, and
    vice versa."""
    violations = []
    for direction in (Direction.ACROSS, Direction.DOWN):
        runs = {
            (r, c, letters): None
            for r, c, letters in _runs(layout.grid.cells, direction)
        }
        words = {}
        for p in layout.placements:
            if p.direction is direction:
                key = (p.row, p.col, p.letters)
                if key in words:
                    violations.append(
                        f"duplicate {direction.value} placement at ({p.row},{p.col})"
                    )
                words[key] = p.answer_id
        for key in runs:
            if key not in words:
                violations.append(
                    f"ghost {direction.value} run at ({key[0]},{key[1]}): "
                    f"{''.join(key[2])!r} matches no placement"
                )
        for key, answer_id in words.items():
            if key not in runs:
                violations.append(
                    f"placement {answer_id} is not a maximal {direction.value} run"
                )
    return violations


def _connectivity(placements: list[Placement]) -> list[str]:
    if len(placements) <= 1:
        return []
    parent = list(range(len(placements)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    cell_owner: dict[tuple[int, int], int] = {}
    for idx, p in enumerate(placements):
        for cell in p.cells():
            if cell in cell_owner:
                ra, rb = find(cell_owner[cell]), find(idx)
                if ra != rb:
                    parent[ra] = rb
            else:
                cell_owner[cell] = idx
    roots = {find(i) for i in range(len(placements))}
    if len(roots) > 1:
        return [f"layout splits into {len(roots)} disconnected components"]
    return []
