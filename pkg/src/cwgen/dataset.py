"""Load, preprocess, and summarize clue-answer datasets.

The canonical interchange format is JSONL ({"clue", "answer", "source"?}
per line); CSV with a `clue,answer[,source]` header is also accepted.
Dirty records are skipped and reported, never fatal.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from . import arabic
from .models import ClueAnswerPair, PairStatus

FORMATS = ("jsonl", "csv")


@dataclass
class LoadReport:
    """What happened during a load: kept count plus per-line skip reasons."""

    loaded: int = 0
    skipped: list[tuple[int, str]] = field(default_factory=list)

    @property
    def skipped_count(self) -> int:
        return len(self.skipped)

    def to_json(self) -> dict:
        return {
            "loaded": self.loaded,
            "skipped": self.skipped_count,
            "details": [{"line": ln, "reason": r} for ln, r in self.skipped],
        }


@dataclass
class BucketCounts:
    all_pairs: int = 0
    unique_answers: int = 0
    unique_pairs: int = 0


@dataclass
class DatasetStats:
    total_pairs: int
    unique_answers: int
    unique_pairs: int
    length_histogram: dict[int, BucketCounts]

    def to_json(self) -> dict:
        return {
            "total_pairs": self.total_pairs,
            "unique_answers": self.unique_answers,
            "unique_pairs": self.unique_pairs,
            "length_histogram": {
                str(length): {
                    "all_pairs": b.all_pairs,
                    "unique_answers": b.unique_answers,
                    "unique_pairs": b.unique_pairs,
                }
                for length, b in sorted(self.length_histogram.items())
            },
        }


def _pair_from_fields(
    pair_id: str, clue: str, answer: str, source: str
) -> ClueAnswerPair | None:
    """Normalized pair, or None when either side normalizes to empty."""
    clue_n = arabic.normalize(clue)
    answer_n = arabic.normalize(answer)
    if not clue_n or not answer_n:
        return None
    return ClueAnswerPair(pair_id, clue_n, answer_n, source, PairStatus.CANDIDATE)


def load_pairs(
    path: str | Path, fmt: str = "jsonl", source: str = "dataset"
) -> tuple[list[ClueAnswerPair], LoadReport]:
    """Read pairs from *path*, normalizing clue and answer on the way in.

    Records that are malformed or that normalize to empty are skipped and
    listed in the report with their 1-based line number.
    """
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    text = Path(path).read_text(encoding="utf-8")
    return parse_pairs(text, fmt=fmt, source=source)


def parse_pairs(
    text: str, fmt: str = "jsonl", source: str = "dataset"
) -> tuple[list[ClueAnswerPair], LoadReport]:
    pairs: list[ClueAnswerPair] = []
    report = LoadReport()

    def admit(
        line_no: int,
        clue: str,
        answer: str,
        rec_source: str,
        pair_id: str | None = None,
    ) -> None:
        # Records carrying their own id keep it; fresh ids otherwise.
        pair = _pair_from_fields(
            pair_id or f"{source}-{len(pairs) + 1:05d}", clue, answer, rec_source
        )
        if pair is None:
            report.skipped.append((line_no, "empty clue or answer after normalization"))
        else:
            pairs.append(pair)

    if fmt == "jsonl":
        # LF-separated records; splitlines() would also split on U+2028
        # and similar characters that may appear raw inside JSON strings.
        for line_no, line in enumerate(text.split("\n"), start=1):
            if not line.strip():
                continue
            try:
                doc = json.loads(line)
            except json.JSONDecodeError as exc:
                report.skipped.append((line_no, f"invalid JSON: {exc.msg}"))
                continue
            if not isinstance(doc, dict) or "clue" not in doc or "answer" not in doc:
                report.skipped.append((line_no, "missing clue or answer field"))
                continue
            admit(
                line_no,
                str(doc["clue"]),
                str(doc["answer"]),
                str(doc.get("source", source)),
                pair_id=str(doc["id"]) if "id" in doc else None,
            )
    else:
        reader = csv.reader(io.StringIO(text))
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:2]] != ["clue", "answer"]:
            report.skipped.append((1, "missing or invalid CSV header"))
            return pairs, report
        has_source = len(header) >= 3 and header[2].strip() == "source"
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) < 2:
                report.skipped.append((line_no, "fewer than two fields"))
                continue
            rec_source = row[2] if has_source and len(row) >= 3 and row[2] else source
            admit(line_no, row[0], row[1], rec_source)

    report.loaded = len(pairs)
    return pairs, report


def save_pairs(path: str | Path, pairs: Iterable[ClueAnswerPair]) -> None:
    """Write pairs as canonical JSONL (UTF-8, LF)."""
    lines = [
        json.dumps(p.to_json(), ensure_ascii=False) + "\n" for p in pairs
    ]
    Path(path).write_text("".join(lines), encoding="utf-8", newline="\n")


def preprocess(
    pairs: Sequence[ClueAnswerPair],
    markers: Sequence[str] = arabic.DEFAULT_REVERSAL_MARKERS,
) -> list[ClueAnswerPair]:
    """Collapse exact (clue, answer) duplicates and drop reversal-marker clues.

    Survivors keep first-occurrence order. Idempotent.
    """
    seen: set[tuple[str, str]] = set()
    out: list[ClueAnswerPair] = []
    for pair in pairs:
        if pair.key in seen:
            continue
        seen.add(pair.key)
        if arabic.contains_reversal_marker(pair.clue, markers):
            continue
        out.append(pair)
    return out


def compute_stats(pairs: Sequence[ClueAnswerPair]) -> DatasetStats:
    """Answer-length histogram with all-pairs / unique-answer / unique-pair counts."""
    histogram: dict[int, BucketCounts] = {}
    answers_by_len: dict[int, set[str]] = {}
    pairs_by_len: dict[int, set[tuple[str, str]]] = {}
    all_answers: set[str] = set()
    all_pairs: set[tuple[str, str]] = set()

    for pair in pairs:
        length = len(pair.letters())
        bucket = histogram.setdefault(length, BucketCounts())
        bucket.all_pairs += 1
        answers_by_len.setdefault(length, set()).add(pair.answer)
        pairs_by_len.setdefault(length, set()).add(pair.key)
        all_answers.add(pair.answer)
        all_pairs.add(pair.key)

    for length, bucket in histogram.items():
        bucket.unique_answers = len(answers_by_len[length])
        bucket.unique_pairs = len(pairs_by_len[length])

    return DatasetStats(
        total_pairs=len(pairs),
        unique_answers=len(all_answers),
        unique_pairs=len(all_pairs),
        length_histogram=histogram,
    )
