"""Keyword pipeline: given answers -> generated clues -> acceptability filter.

Clue generation targets an already-hosted completion endpoint (the prompt
is the answer plus a fixed separator, mirroring an answer->clue fine-tune
format). Filtering runs either against a remote judge or a purely local
heuristic baseline so the pipeline works offline. The heuristic rules act
as a floor in both modes: nothing they reject is ever accepted.
"""

from __future__ import annotations

from typing import Optional, Sequence

from . import arabic
from .errors import AnswerTooLong, CwgenError, EmptyInput
from .gateway import Gateway, user_request
from .models import (
    ClassifierVerdict,
    ClueAnswerPair,
    PairStatus,
    RejectedPair,
    RejectReason,
    ValidationReport,
)

DEFAULT_CLUE_MODEL = "cwgen-clue-ft"
DEFAULT_JUDGE_MODEL = "gpt-4"
DEFAULT_SEPARATOR = " ->"

HEURISTIC_ID = "heuristic-v1"
MAX_CLUE_WORDS = 8

JUDGE_PROMPT = """You are reviewing crossword clue-answer pairs.
A pair is acceptable when the clue is coherent and relevant to the answer, \
unambiguous and specific, grammatical, factually correct, based on general \
knowledge, and does not contain the answer itself.

Answer: {answer}
Clue: {clue}

Reply with exactly one word: acceptable or unacceptable."""


def generate_clue(
    answer: str,
    model: str,
    gateway: Gateway,
    *,
    separator: str = DEFAULT_SEPARATOR,
    pair_id: str = "b1",
) -> ClueAnswerPair:
    """Clue for *answer* from the configured generation endpoint."""
    answer_n = arabic.normalize(answer)
    if not answer_n:
        raise EmptyInput("answer is empty after normalization")
    if arabic.word_count(answer_n) > 3:
        raise AnswerTooLong(f"answer {answer_n!r} has more than three words")
    response = gateway.complete(user_request(model, f"{answer_n}{separator}"))
    clue = arabic.normalize(response.content)
    return ClueAnswerPair(
        id=pair_id,
        clue=clue,
        answer=answer_n,
        source="path_b",
        status=PairStatus.CANDIDATE,
    )


def heuristic_classify(pair: ClueAnswerPair) -> ClassifierVerdict:
    """Offline baseline: hard structural rules, confidence always 1.0."""
    acceptable = (
        bool(pair.clue)
        and pair.clue != pair.answer
        and not arabic.contains_whole_word(pair.clue, pair.answer)
        and arabic.word_count(pair.clue) <= MAX_CLUE_WORDS
        and arabic.has_arabic_letter(pair.clue)
    )
    return ClassifierVerdict(acceptable, 1.0, HEURISTIC_ID)


def remote_classify(
    pair: ClueAnswerPair,
    gateway: Gateway,
    *,
    model: str = DEFAULT_JUDGE_MODEL,
) -> ClassifierVerdict:
    """Model judgment constrained by the heuristic floor.

    An unparseable verdict counts as not acceptable (confidence 0.5,
    flagged) rather than erroring out.
    """
    prompt = JUDGE_PROMPT.format(answer=pair.answer, clue=pair.clue)
    response = gateway.complete(user_request(model, prompt))
    text = response.content.strip().lower()
    if "unacceptable" in text or "غير مقبول" in text:
        verdict = ClassifierVerdict(False, 1.0, f"remote:{model}")
    elif "acceptable" in text or "مقبول" in text:
        verdict = ClassifierVerdict(True, 1.0, f"remote:{model}")
    else:
        return ClassifierVerdict(False, 0.5, f"remote:{model}", flagged=True)
    if verdict.acceptable and not heuristic_classify(pair).acceptable:
        return ClassifierVerdict(False, verdict.confidence, verdict.classifier_id)
    return verdict


def classify(
    pair: ClueAnswerPair,
    classifier: str = "heuristic",
    gateway: Optional[Gateway] = None,
    *,
    model: str = DEFAULT_JUDGE_MODEL,
) -> ClassifierVerdict:
    if classifier == "heuristic":
        return heuristic_classify(pair)
    if classifier == "remote":
        if gateway is None:
            raise ValueError("remote classification needs a gateway")
        return remote_classify(pair, gateway, model=model)
    raise ValueError(f"unknown classifier {classifier!r}")


def run_path_b(
    answers: Sequence[str],
    model: str,
    classifier: str,
    gateway: Gateway,
    *,
    judge_model: str = DEFAULT_JUDGE_MODEL,
    separator: str = DEFAULT_SEPARATOR,
) -> tuple[ValidationReport, list[tuple[ClueAnswerPair, ClassifierVerdict]]]:
    """Generate then classify per answer; failures never stop the batch.

    Returns the report plus (pair, verdict) rows for every pair that got
    as far as classification, in input order.
    """
    if not answers:
        raise EmptyInput("no answers given")
    passed: list[ClueAnswerPair] = []
    rejected: list[RejectedPair] = []
    verdicts: list[tuple[ClueAnswerPair, ClassifierVerdict]] = []
    for i, answer in enumerate(answers, start=1):
        pair_id = f"b{i}"
        try:
            pair = generate_clue(
                answer, model, gateway, separator=separator, pair_id=pair_id
            )
        except AnswerTooLong:
            placeholder = ClueAnswerPair(
                pair_id, "", arabic.normalize(answer), "path_b", PairStatus.REJECTED
            )
            rejected.append(RejectedPair(placeholder, RejectReason.TOO_MANY_WORDS))
            continue
        except CwgenError:
            placeholder = ClueAnswerPair(
                pair_id, "", arabic.normalize(answer), "path_b", PairStatus.REJECTED
            )
            rejected.append(RejectedPair(placeholder, RejectReason.PARSE_FAILURE))
            continue
        try:
            verdict = classify(pair, classifier, gateway, model=judge_model)
        except CwgenError:
            rejected.append(RejectedPair(pair, RejectReason.PARSE_FAILURE))
            continue
        verdicts.append((pair, verdict))
        if verdict.acceptable:
            passed.append(pair)
        else:
            rejected.append(RejectedPair(pair, RejectReason.CLASSIFIER_REJECT))
    return ValidationReport.build(passed, rejected), verdicts
