"""Independent brute-force oracles for the layout engine tests.

Everything here recomputes soundness, connectivity, and scores from first
principles on a sparse cell map, sharing no code with the engine under
test. Layouts are represented as pose sets (word_index, direction, row,
col) in translation-canonical form so the enumerator explores relative
configurations once and checks grid fit by bounding box.
"""

from __future__ import annotations

from itertools import groupby

Word = tuple[str, ...]
Pose = tuple[int, str, int, int]  # (word index, "A"|"D", row, col)


def pose_cells(pose: Pose, words: list[Word]) -> list[tuple[int, int, str]]:
    idx, direction, row, col = pose
    if direction == "A":
        return [(row, col + i, ch) for i, ch in enumerate(words[idx])]
    return [(row + i, col, ch) for i, ch in enumerate(words[idx])]


def build_cells(poses: frozenset[Pose], words: list[Word]) -> dict[tuple[int, int], str] | None:
    """Sparse letter map, or None on any letter conflict."""
    cells: dict[tuple[int, int], str] = {}
    for pose in poses:
        for r, c, ch in pose_cells(pose, words):
            if cells.get((r, c), ch) != ch:
                return None
            cells[(r, c)] = ch
    return cells


def _maximal_runs(cells: dict[tuple[int, int], str], horizontal: bool):
    """Maximal runs of >=2 contiguous cells as (start_r, start_c, letters)."""
    runs = []
    if horizontal:
        keys = sorted(cells, key=lambda rc: (rc[0], rc[1]))
        for row, group in groupby(keys, key=lambda rc: rc[0]):
            chain: list[tuple[int, int]] = []
            for rc in group:
                if chain and rc[1] != chain[-1][1] + 1:
                    if len(chain) >= 2:
                        runs.append((chain[0][0], chain[0][1], tuple(cells[x] for x in chain)))
                    chain = []
                chain.append(rc)
            if len(chain) >= 2:
                runs.append((chain[0][0], chain[0][1], tuple(cells[x] for x in chain)))
    else:
        keys = sorted(cells, key=lambda rc: (rc[1], rc[0]))
        for col, group in groupby(keys, key=lambda rc: rc[1]):
            chain = []
            for rc in group:
                if chain and rc[0] != chain[-1][0] + 1:
                    if len(chain) >= 2:
                        runs.append((chain[0][0], chain[0][1], tuple(cells[x] for x in chain)))
                    chain = []
                chain.append(rc)
            if len(chain) >= 2:
                runs.append((chain[0][0], chain[0][1], tuple(cells[x] for x in chain)))
    return runs


def sound_and_connected(poses: frozenset[Pose], words: list[Word]) -> bool:
    """Full independent check: letters agree, no same-direction overlap,
    every maximal run of >=2 is exactly one placed word and vice versa,
    and the words form one connected component via shared cells."""
    if not poses:
        return False
    cells = build_cells(poses, words)
    if cells is None:
        return False

    for direction, horizontal in (("A", True), ("D", False)):
        placed = {}
        seen_cells: set[tuple[int, int]] = set()
        for pose in poses:
            if pose[1] != direction:
                continue
            pts = [(r, c) for r, c, _ in pose_cells(pose, words)]
            if any(p in seen_cells for p in pts):
                return False  # same-direction overlap merges words
            seen_cells.update(pts)
            placed[(pose[2], pose[3], words[pose[0]])] = True
        runs = {(r, c, letters) for r, c, letters in _maximal_runs(cells, horizontal)}
        if runs != set(placed):
            return False

    # Connectivity via shared cells.
    pose_list = sorted(poses)
    if len(pose_list) > 1:
        cell_sets = [
            {(r, c) for r, c, _ in pose_cells(p, words)} for p in pose_list
        ]
        reached = {0}
        frontier = [0]
        while frontier:
            i = frontier.pop()
            for j in range(len(pose_list)):
                if j not in reached and cell_sets[i] & cell_sets[j]:
                    reached.add(j)
                    frontier.append(j)
        if len(reached) != len(pose_list):
            return False
    return True


def oracle_score(poses: frozenset[Pose], words: list[Word]) -> float:
    """(FW + 0.5*LL) * FR * LR computed straight from the cell map."""
    cover: dict[tuple[int, int], int] = {}
    for pose in poses:
        for r, c, _ in pose_cells(pose, words):
            cover[(r, c)] = cover.get((r, c), 0) + 1
    if not cover:
        return 0.0
    filled = len(cover)
    ll = sum(1 for n in cover.values() if n >= 2)
    rs = [r for r, _ in cover]
    cs = [c for _, c in cover]
    area = (max(rs) - min(rs) + 1) * (max(cs) - min(cs) + 1)
    return (len(poses) + 0.5 * ll) * (filled / area) * (ll / filled)


def canonical(poses: frozenset[Pose]) -> frozenset[Pose]:
    rmin = min(p[2] for p in poses)
    cmin = min(p[3] for p in poses)
    return frozenset((i, d, r - rmin, c - cmin) for i, d, r, c in poses)


def bbox_dims(poses: frozenset[Pose], words: list[Word]) -> tuple[int, int]:
    rows_used: list[int] = []
    cols_used: list[int] = []
    for pose in poses:
        for r, c, _ in pose_cells(pose, words):
            rows_used.append(r)
            cols_used.append(c)
    return (
        max(rows_used) - min(rows_used) + 1,
        max(cols_used) - min(cols_used) + 1,
    )


def enumerate_layouts(
    words: list[Word], rows: int, cols: int
) -> set[frozenset[Pose]]:
    """Every sound connected layout (any nonempty word subset, each word at
    most once) that fits an `rows` x `cols` grid, translation-canonical."""
    found: set[frozenset[Pose]] = set()
    frontier: list[frozenset[Pose]] = []
    for idx in range(len(words)):
        for direction in ("A", "D"):
            state = canonical(frozenset({(idx, direction, 0, 0)}))
            if state not in found and _fits_grid(state, words, rows, cols):
                found.add(state)
                frontier.append(state)

    while frontier:
        state = frontier.pop()
        used = {p[0] for p in state}
        cells = build_cells(state, words)
        assert cells is not None
        for idx in range(len(words)):
            if idx in used:
                continue
            word = words[idx]
            for (r, c), letter in cells.items():
                for i, ch in enumerate(word):
                    if ch != letter:
                        continue
                    for direction, pose in (
                        ("A", (idx, "A", r, c - i)),
                        ("D", (idx, "D", r - i, c)),
                    ):
                        candidate = canonical(state | {pose})
                        if candidate in found:
                            continue
                        if not sound_and_connected(candidate, words):
                            continue
                        if not _fits_grid(candidate, words, rows, cols):
                            continue
                        found.add(candidate)
                        frontier.append(candidate)
    return found


def _fits_grid(
    poses: frozenset[Pose], words: list[Word], rows: int, cols: int
) -> bool:
    height, width = bbox_dims(poses, words)
    return height <= rows and width <= cols
