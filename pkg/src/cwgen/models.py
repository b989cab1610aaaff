"""Shared domain records: clue-answer pairs, review status, validation reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Optional

from . import arabic
from .errors import EmptyAnswer


class PairStatus(str, Enum):
    CANDIDATE = "candidate"
    ACCEPTED = "accepted"
    REJECTED = "rejected"


class RejectReason(str, Enum):
    TOO_MANY_WORDS = "too_many_words"
    CLUE_CONTAINS_ANSWER = "clue_contains_answer"
    NOT_GROUNDED = "not_grounded"
    PARSE_FAILURE = "parse_failure"
    CLASSIFIER_REJECT = "classifier_reject"


@dataclass
class ClueAnswerPair:
    """One clue/answer record; the unit flowing through both pipelines.

    `clue` and `answer` are stored normalized. Direct construction is
    trusted (internal callers may build rejection placeholders); use
    `from_raw` for anything read from the outside world.
    """

    id: str
    clue: str
    answer: str
    source: str
    status: PairStatus = PairStatus.CANDIDATE
    origin_doc: Optional[str] = None

    @classmethod
    def from_raw(
        cls,
        pair_id: str,
        clue: str,
        answer: str,
        source: str,
        status: PairStatus = PairStatus.CANDIDATE,
        origin_doc: Optional[str] = None,
    ) -> "ClueAnswerPair":
        """Normalize and validate; raises EmptyAnswer if either side empties out."""
        clue_n = arabic.normalize(clue)
        answer_n = arabic.normalize(answer)
        if not clue_n or not answer_n:
            raise EmptyAnswer(
                f"pair {pair_id!r}: clue or answer empty after normalization"
            )
        return cls(pair_id, clue_n, answer_n, source, status, origin_doc)

    @property
    def key(self) -> tuple[str, str]:
        """Exact-duplicate identity: (clue, answer) post-normalization."""
        return (self.clue, self.answer)

    def letters(self) -> list[str]:
        return arabic.answer_letters(self.answer)

    def to_json(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "id": self.id,
            "clue": self.clue,
            "answer": self.answer,
            "source": self.source,
            "status": self.status.value,
        }
        if self.origin_doc is not None:
            doc["origin_doc"] = self.origin_doc
        return doc

    @classmethod
    def from_json(cls, doc: dict[str, Any], default_id: str = "") -> "ClueAnswerPair":
        return cls(
            id=str(doc.get("id", default_id)),
            clue=doc["clue"],
            answer=doc["answer"],
            source=str(doc.get("source", "")),
            status=PairStatus(doc.get("status", "candidate")),
            origin_doc=doc.get("origin_doc"),
        )


@dataclass
class RejectedPair:
    pair: ClueAnswerPair
    reason: RejectReason

    def to_json(self) -> dict[str, Any]:
        return {"pair": self.pair.to_json(), "reason": self.reason.value}


@dataclass
class ValidationReport:
    """Outcome of a validation stage; counts always reconcile."""

    input_count: int
    passed: list[ClueAnswerPair] = field(default_factory=list)
    rejected: list[RejectedPair] = field(default_factory=list)

    @classmethod
    def build(
        cls,
        passed: Iterable[ClueAnswerPair],
        rejected: Iterable[RejectedPair],
    ) -> "ValidationReport":
        p, r = list(passed), list(rejected)
        return cls(input_count=len(p) + len(r), passed=p, rejected=r)

    @classmethod
    def concat(cls, reports: Iterable["ValidationReport"]) -> "ValidationReport":
        merged = cls(0)
        for rep in reports:
            merged.input_count += rep.input_count
            merged.passed.extend(rep.passed)
            merged.rejected.extend(rep.rejected)
        return merged

    @property
    def conserved(self) -> bool:
        return self.input_count == len(self.passed) + len(self.rejected)

    def summary(self) -> dict[str, Any]:
        reasons: dict[str, int] = {}
        for rej in self.rejected:
            reasons[rej.reason.value] = reasons.get(rej.reason.value, 0) + 1
        return {
            "input_count": self.input_count,
            "passed": len(self.passed),
            "rejected": len(self.rejected),
            "reasons": reasons,
        }


@dataclass
class ClassifierVerdict:
    """Binary acceptability judgment for a path (b) pair."""

    acceptable: bool
    confidence: float
    classifier_id: str
    flagged: bool = False

    def to_json(self) -> dict[str, Any]:
        return {
            "acceptable": self.acceptable,
            "confidence": self.confidence,
            "classifier_id": self.classifier_id,
        }


def pairs_to_jsonl(pairs: Iterable[ClueAnswerPair]) -> str:
    """One JSON object per line, LF endings, UTF-8-safe."""
    return "".join(
        json.dumps(p.to_json(), ensure_ascii=False) + "\n" for p in pairs
    )
