"""Stochastic layout search: seeded add/remove/reset with score greedily
steering each addition.

One search run: a first answer lands at a random central-band position,
then answers picked by weighted sampling (preferred answers weigh more)
are added at the legal position that maximizes the resulting score, ties
broken randomly. When `stall_limit` consecutive samples fail to place, the
most recent `remove_batch` placements come off; if that still does not
unblock, the grid is cleared (counting one rebuild) and the search
restarts. The best-scoring layout ever seen is tracked throughout, and the
first satisfied stopping criterion ends the run.

Determinism: all randomness flows through one `random.Random(seed)`
(CPython's Mersenne Twister, stable across platforms), so a fixed
(config, answers, seed) triple reproduces the result bit for bit.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import AbstractSet, Optional, Sequence

from .. import arabic
from ..errors import InsufficientAnswers, NoLayoutFound
from ..models import ClueAnswerPair
from .grid import Direction, Grid, LayoutScore, Placement, score_layout
from .placement import crossing_count, legal_placements


class StopReason(str, Enum):
    MIN_ANSWERS_MET = "min_answers_met"
    FILL_RATIO_MET = "fill_ratio_met"
    REBUILD_LIMIT = "rebuild_limit"
    TIME_LIMIT = "time_limit"


@dataclass(frozen=True)
class GeneratorConfig:
    rows: int
    cols: int
    min_answers: int
    min_fill_ratio: float = 1.0
    max_rebuilds: int = 10
    max_duration: float = 30.0
    seed: int = 0
    preferred_weight: float = 3.0
    stall_limit: int = 50
    remove_batch: int = 1

    def __post_init__(self) -> None:
        if self.rows <= 0 or self.cols <= 0:
            raise ValueError("grid dimensions must be positive")
        if self.min_answers < 2:
            raise ValueError("min_answers must be at least 2")
        if not 0.0 <= self.min_fill_ratio <= 1.0:
            raise ValueError("min_fill_ratio must be in [0, 1]")
        if self.max_rebuilds < 1 or self.stall_limit < 1 or self.remove_batch < 1:
            raise ValueError("limits must be positive")
        if self.max_duration <= 0:
            raise ValueError("max_duration must be positive")
        if self.preferred_weight < 1:
            raise ValueError("preferred_weight must be >= 1")


@dataclass
class CrosswordLayout:
    grid: Grid
    placements: list[Placement]
    score: LayoutScore
    stop_reason: StopReason

    def to_json(self) -> dict:
        return {
            "rows": self.grid.rows,
            "cols": self.grid.cols,
            "cells": [
                [cell if cell else "#" for cell in row] for row in self.grid.cells
            ],
            "placements": [p.to_json() for p in self.placements],
            "score": self.score.to_json(),
            "stop_reason": self.stop_reason.value,
        }

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False, indent=2) + "\n"

    @classmethod
    def from_json(cls, doc: dict) -> "CrosswordLayout":
        rows, cols = doc["rows"], doc["cols"]
        cells = [
            ["" if cell == "#" else cell for cell in row] for row in doc["cells"]
        ]
        placements = []
        for pdoc in doc["placements"]:
            direction = Direction(pdoc["dir"])
            letters = _walk_run(cells, pdoc["row"], pdoc["col"], direction)
            placements.append(
                Placement(pdoc["answer_id"], letters, pdoc["row"], pdoc["col"], direction)
            )
        grid = Grid.from_placements(rows, cols, placements)
        return cls(
            grid=grid,
            placements=placements,
            score=LayoutScore.from_json(doc["score"]),
            stop_reason=StopReason(doc["stop_reason"]),
        )


def _walk_run(
    cells: list[list[str]], row: int, col: int, direction: Direction
) -> tuple[str, ...]:
    """Letters of the maximal run starting at (row, col); placements are
    serialized without letters because sound grids make runs unambiguous."""
    letters: list[str] = []
    r, c = row, col
    while 0 <= r < len(cells) and 0 <= c < len(cells[0]) and cells[r][c]:
        letters.append(cells[r][c])
        if direction is Direction.ACROSS:
            c += 1
        else:
            r += 1
    return tuple(letters)


@dataclass(frozen=True)
class _Word:
    answer_id: str
    letters: tuple[str, ...]
    weight: float


@dataclass
class _Best:
    placements: tuple[Placement, ...] = ()
    score: float = -1.0

    def consider(self, placements: Sequence[Placement], score: float) -> None:
        if score > self.score:
            self.placements = tuple(placements)
            self.score = score


def build_word_pool(
    answers: Sequence[ClueAnswerPair], preferred: AbstractSet[str], weight: float
) -> list[_Word]:
    """Deduplicate by letter sequence (first occurrence wins); single-letter
    answers are unplaceable and silently dropped."""
    pool: list[_Word] = []
    seen: set[tuple[str, ...]] = set()
    for pair in answers:
        letters = tuple(arabic.answer_letters(pair.answer))
        if len(letters) < 2 or letters in seen:
            continue
        seen.add(letters)
        pool.append(
            _Word(pair.id, letters, weight if pair.id in preferred else 1.0)
        )
    return pool


def generate(
    config: GeneratorConfig,
    answers: Sequence[ClueAnswerPair],
    preferred: AbstractSet[str] = frozenset(),
) -> CrosswordLayout:
    """Run one seeded search and return its layout.

    Target criteria (min answers, fill ratio) return the layout that just
    satisfied them; give-up criteria (rebuild limit, time budget) return
    the best-scoring layout seen anywhere in the run.
    """
    pool = build_word_pool(answers, preferred, config.preferred_weight)
    if len(pool) < config.min_answers:
        raise InsufficientAnswers(
            f"{len(pool)} distinct placeable answers, need {config.min_answers}"
        )
    max_len = max(config.rows, config.cols)
    placeable = [w for w in pool if len(w.letters) <= max_len]
    if not placeable:
        raise NoLayoutFound("every answer is longer than both grid dimensions")

    rng = random.Random(config.seed)
    grid = Grid(config.rows, config.cols)
    placed: list[Placement] = []
    best = _Best()
    area = config.rows * config.cols
    rebuilds = 0
    stall_counter = 0
    # Stall rounds count stall events since the word count last exceeded
    # its high-water mark; the first round removes recent placements, any
    # further one clears the grid. `failed` caches words with no legal
    # position on the current grid and empties on every mutation.
    stall_round = 0
    progress_mark = 0
    failed: set[str] = set()
    start = time.monotonic()

    def unplaced() -> list[_Word]:
        placed_ids = {p.answer_id for p in placed}
        return [w for w in placeable if w.answer_id not in placed_ids]

    def finish(reason: StopReason, placements: Sequence[Placement]) -> CrosswordLayout:
        final = Grid.from_placements(config.rows, config.cols, placements)
        return CrosswordLayout(
            grid=final,
            placements=list(placements),
            score=score_layout(final, placements),
            stop_reason=reason,
        )

    def add_best_placement(word: _Word) -> bool:
        candidates = legal_placements(word.letters, grid, word.answer_id)
        if not candidates:
            return False
        fw_after = len(placed) + 1
        best_score = None
        best_candidates: list[Placement] = []
        for candidate in candidates:
            crossings = crossing_count(candidate, grid)
            ll_after = grid.linked + crossings
            filled_after = grid.filled + len(candidate) - crossings
            bbox_after = _union_bbox(grid.bbox, candidate)
            score_after = LayoutScore.from_counts(
                fw_after, ll_after, filled_after, _area(bbox_after)
            ).score
            if best_score is None or score_after > best_score:
                best_score = score_after
                best_candidates = [candidate]
            elif score_after == best_score:
                best_candidates.append(candidate)
        chosen = best_candidates[0] if len(best_candidates) == 1 else rng.choice(best_candidates)
        grid.place(chosen)
        placed.append(chosen)
        return True

    def place_first_word() -> None:
        word = _sample(rng, unplaced())
        candidates = legal_placements(word.letters, grid, word.answer_id)
        banded = [c for c in candidates if _in_central_band(c, config)]
        chosen = rng.choice(banded or candidates)
        grid.place(chosen)
        placed.append(chosen)

    def target_reached() -> Optional[StopReason]:
        """Target criteria, in precedence order; only an add can change them."""
        if len(placed) >= config.min_answers:
            return StopReason.MIN_ANSWERS_MET
        if grid.filled / area >= config.min_fill_ratio:
            return StopReason.FILL_RATIO_MET
        return None

    while True:
        # Give-up criteria run every iteration.
        if rebuilds > config.max_rebuilds:
            return finish(StopReason.REBUILD_LIMIT, best.placements)
        if time.monotonic() - start >= config.max_duration:
            return finish(StopReason.TIME_LIMIT, best.placements)

        if not placed:
            place_first_word()
            failed.clear()
            added = True
        else:
            candidates = [w for w in unplaced() if w.answer_id not in failed]
            if candidates:
                word = _sample(rng, candidates)
                added = add_best_placement(word)
                if added:
                    failed.clear()
                else:
                    failed.add(word.answer_id)
            else:
                added = False
                stall_counter = config.stall_limit  # nothing left to try

        if added:
            stall_counter = 0
            best.consider(placed, grid.score(len(placed)).score)
            if len(placed) > progress_mark:
                progress_mark = len(placed)
                stall_round = 0
            reason = target_reached()
            if reason is not None:
                return finish(reason, placed)
            continue

        stall_counter += 1
        if stall_counter >= config.stall_limit:
            stall_counter = 0
            stall_round += 1
            failed.clear()
            if stall_round >= 2 or len(placed) <= 1:
                grid.clear()
                placed.clear()
                rebuilds += 1
                progress_mark = 0
                stall_round = 0
            else:
                for _ in range(min(config.remove_batch, len(placed) - 1)):
                    grid.remove(placed.pop())


def _sample(rng: random.Random, words: Sequence[_Word]) -> _Word:
    return rng.choices(words, weights=[w.weight for w in words], k=1)[0]


def _in_central_band(placement: Placement, config: GeneratorConfig) -> bool:
    row_lo, row_hi = config.rows // 3, config.rows - config.rows // 3
    col_lo, col_hi = config.cols // 3, config.cols - config.cols // 3
    return row_lo <= placement.row < row_hi and col_lo <= placement.col < col_hi


def _union_bbox(
    bbox: Optional[tuple[int, int, int, int]], placement: Placement
) -> tuple[int, int, int, int]:
    cells = placement.cells()
    rmin = min(r for r, _ in cells)
    rmax = max(r for r, _ in cells)
    cmin = min(c for _, c in cells)
    cmax = max(c for _, c in cells)
    if bbox is None:
        return (rmin, rmax, cmin, cmax)
    return (
        min(bbox[0], rmin),
        max(bbox[1], rmax),
        min(bbox[2], cmin),
        max(bbox[3], cmax),
    )


def _area(bbox: tuple[int, int, int, int]) -> int:
    return (bbox[1] - bbox[0] + 1) * (bbox[3] - bbox[2] + 1)


# --- parallel restarts ---

def _search_worker(
    args: tuple[GeneratorConfig, list[ClueAnswerPair], frozenset[str]]
) -> dict:
    config, answers, preferred = args
    return generate(config, answers, preferred).to_json()


def generate_parallel(
    config: GeneratorConfig,
    answers: Sequence[ClueAnswerPair],
    preferred: AbstractSet[str] = frozenset(),
    jobs: int = 1,
) -> CrosswordLayout:
    """Run `jobs` independent searches with derived seeds (seed, seed+1, ...)
    and return the best by (score desc, derived-seed asc), deterministic
    regardless of completion order."""
    if jobs < 1:
        raise ValueError("jobs must be positive")
    if jobs == 1:
        return generate(config, answers, preferred)
    configs = [
        GeneratorConfig(
            rows=config.rows,
            cols=config.cols,
            min_answers=config.min_answers,
            min_fill_ratio=config.min_fill_ratio,
            max_rebuilds=config.max_rebuilds,
            max_duration=config.max_duration,
            seed=config.seed + i,
            preferred_weight=config.preferred_weight,
            stall_limit=config.stall_limit,
            remove_batch=config.remove_batch,
        )
        for i in range(jobs)
    ]
    payloads = [(cfg, list(answers), frozenset(preferred)) for cfg in configs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_search_worker, payloads))
    layouts = [CrosswordLayout.from_json(doc) for doc in results]
    best_idx = max(range(jobs), key=lambda i: (layouts[i].score.score, -i))
    return layouts[best_idx]
