"""Text pipeline: educational text -> validated clue-answer pairs.

Stages: paragraph segmentation, keyword extraction, clue generation, then
two-stage validation (deterministic local filters, then a model-based
groundedness check). All model output parsing is line-oriented and
tolerant: unmatched lines are ignored rather than fatal, so partial yield
beats hard failure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import arabic
from .errors import EmptyDocument, GatewayError, ParseFailure
from .gateway import Gateway, user_request
from .models import ClueAnswerPair, PairStatus, RejectedPair, RejectReason, ValidationReport
from .prompts import Lang, PromptTemplate, TemplateName, load_all

DEFAULT_MODEL = "gpt-4"

# A paragraph larger than this is rejected outright instead of silently
# truncated to fit a model context.
MAX_PARAGRAPH_CHARS = 8000

_KEYWORD_LINE = re.compile(r"^[-*\s]*(?:Keywords|الكلمات المفتاحية)\s*:\s*(.+)$", re.IGNORECASE)
_BLOCK_KEYWORD = re.compile(r"^[-*\s]*(?:Keyword|الكلمة المفتاحية)\s*:\s*(.*)$", re.IGNORECASE)
_BLOCK_CLUE = re.compile(r"^[-*\s]*(?:Clue|اللغز)\s*:\s*(.*)$", re.IGNORECASE)
_ITEM_SEP = re.compile(r"[,،]")
_TRUE_TOKEN = re.compile(r"\b(?:true)\b|صحيح", re.IGNORECASE)
_FALSE_TOKEN = re.compile(r"\b(?:false)\b|خطأ", re.IGNORECASE)


@dataclass
class SourceDocument:
    id: str
    paragraphs: list[str]


@dataclass
class KeywordSet:
    paragraph_id: str
    keywords: list[str]


class ParagraphTooLong(ParseFailure):
    """Paragraph exceeds the configured model-context budget."""


def segment(text: str, doc_id: str = "doc") -> SourceDocument:
    """Split on blank lines, normalize each paragraph, drop empties."""
    paragraphs = [
        arabic.normalize(chunk) for chunk in re.split(r"\n\s*\n", text)
    ]
    paragraphs = [p for p in paragraphs if p]
    if not paragraphs:
        raise EmptyDocument("no paragraph survives segmentation")
    return SourceDocument(id=doc_id, paragraphs=paragraphs)


# --- model-output parsers ---

def parse_keyword_line(content: str) -> list[str]:
    """Items of the first keyword line, normalized; ParseFailure if absent."""
    for line in content.splitlines():
        match = _KEYWORD_LINE.match(line.strip())
        if match:
            items = [arabic.normalize(item) for item in _ITEM_SEP.split(match.group(1))]
            return [item for item in items if item]
    raise ParseFailure("no keyword line found in model output")


def parse_clue_blocks(content: str) -> list[tuple[str, str]]:
    """(keyword, clue) pairs from repeated labeled blocks, either order.

    A pair is emitted whenever both labels have been seen since the last
    emission; garbled fragments in between are skipped.
    """
    pairs: list[tuple[str, str]] = []
    keyword: Optional[str] = None
    clue: Optional[str] = None
    for raw_line in content.splitlines():
        line = raw_line.strip()
        kw_match = _BLOCK_KEYWORD.match(line)
        # The keyword label also matches the clue regex prefix in neither
        # language, so order of checks is safe.
        if kw_match:
            keyword = arabic.normalize(kw_match.group(1))
        else:
            clue_match = _BLOCK_CLUE.match(line)
            if clue_match:
                clue = arabic.normalize(clue_match.group(1))
        if keyword and clue:
            pairs.append((keyword, clue))
            keyword = None
            clue = None
    return pairs


def parse_verdicts(content: str) -> list[Optional[bool]]:
    """Per-line boolean verdicts, in order; a line yields at most one.

    Verdict tokens are True/False or their Arabic equivalents; the last
    token on a line wins (lines are `clue: verdict` shaped).
    """
    verdicts: list[Optional[bool]] = []
    for line in content.splitlines():
        true_pos = [m.start() for m in _TRUE_TOKEN.finditer(line)]
        false_pos = [m.start() for m in _FALSE_TOKEN.finditer(line)]
        if not true_pos and not false_pos:
            continue
        last_true = true_pos[-1] if true_pos else -1
        last_false = false_pos[-1] if false_pos else -1
        verdicts.append(last_true > last_false)
    return verdicts


# --- pipeline operations ---

def extract_keywords(
    paragraph: str,
    template: PromptTemplate,
    gateway: Gateway,
    *,
    paragraph_id: str = "p1",
    model: str = DEFAULT_MODEL,
) -> KeywordSet:
    """Ask the model for keywords; keep items of at most two words."""
    assert template.name is TemplateName.KEYWORD_EXTRACT
    response = gateway.complete(user_request(model, template.render(text=paragraph)))
    items = parse_keyword_line(response.content)
    keywords = [kw for kw in items if arabic.word_count(kw) <= 2]
    return KeywordSet(paragraph_id=paragraph_id, keywords=keywords)


def generate_clues(
    paragraph: str,
    keywords: KeywordSet,
    template: PromptTemplate,
    gateway: Gateway,
    *,
    id_prefix: str = "a1",
    model: str = DEFAULT_MODEL,
) -> list[ClueAnswerPair]:
    """One candidate pair per well-formed keyword/clue block in the response."""
    assert template.name is TemplateName.CLUE_GENERATE
    if not keywords.keywords:
        raise ValueError("keyword set is empty")
    prompt = template.render(
        text=paragraph, keywords="، ".join(keywords.keywords)
    )
    response = gateway.complete(user_request(model, prompt))
    blocks = parse_clue_blocks(response.content)
    if not blocks:
        raise ParseFailure("no keyword/clue block parsed from model output")
    known = set(keywords.keywords)
    pairs = []
    for answer, clue in blocks:
        # Answers must trace back to the extractor or the paragraph; a
        # drifting model must not smuggle in invented answers.
        if answer not in known and not arabic.contains_whole_word(paragraph, answer):
            continue
        pairs.append(
            ClueAnswerPair(
                id=f"{id_prefix}-{len(pairs) + 1}",
                clue=clue,
                answer=answer,
                source="path_a",
                status=PairStatus.CANDIDATE,
                origin_doc=keywords.paragraph_id,
            )
        )
    if not pairs:
        raise ParseFailure("no block carried a traceable answer")
    return pairs


def validate(
    pairs: Sequence[ClueAnswerPair],
    paragraph: str,
    template: PromptTemplate,
    gateway: Gateway,
    *,
    model: str = DEFAULT_MODEL,
) -> ValidationReport:
    """Two-stage filter; first failing stage wins, in stage order.

    Stage 1 (local, deterministic): answers over three words; clues that
    leak their answer as a whole word. Stage 2 (model): per-clue
    groundedness verdicts against the source paragraph.
    """
    assert template.name is TemplateName.GROUNDEDNESS_CHECK
    rejected: list[RejectedPair] = []
    survivors: list[ClueAnswerPair] = []
    for pair in pairs:
        if arabic.word_count(pair.answer) > 3:
            rejected.append(RejectedPair(pair, RejectReason.TOO_MANY_WORDS))
        elif arabic.contains_whole_word(pair.clue, pair.answer):
            rejected.append(RejectedPair(pair, RejectReason.CLUE_CONTAINS_ANSWER))
        else:
            survivors.append(pair)

    passed: list[ClueAnswerPair] = []
    if survivors:
        prompt = template.render(
            text=paragraph, clues="\n".join(p.clue for p in survivors)
        )
        response = gateway.complete(user_request(model, prompt))
        verdicts = parse_verdicts(response.content)
        for i, pair in enumerate(survivors):
            verdict = verdicts[i] if i < len(verdicts) else None
            if verdict is True:
                passed.append(pair)
            elif verdict is False:
                rejected.append(RejectedPair(pair, RejectReason.NOT_GROUNDED))
            else:
                rejected.append(RejectedPair(pair, RejectReason.PARSE_FAILURE))
    return ValidationReport.build(passed, rejected)


@dataclass
class PathAResult:
    report: ValidationReport
    keyword_sets: list[KeywordSet] = field(default_factory=list)


def run_path_a(
    text: str,
    language: Lang,
    gateway: Gateway,
    *,
    model: str = DEFAULT_MODEL,
    doc_id: str = "doc",
    max_paragraph_chars: int = MAX_PARAGRAPH_CHARS,
) -> ValidationReport:
    """Full text pipeline over every paragraph; reports concatenated.

    Pair ids are unique across paragraphs. With a replay transcript this
    is bit-for-bit deterministic.
    """
    templates = load_all(language)
    document = segment(text, doc_id=doc_id)
    reports: list[ValidationReport] = []
    for idx, paragraph in enumerate(document.paragraphs, start=1):
        if len(paragraph) > max_paragraph_chars:
            raise ParagraphTooLong(
                f"paragraph {idx} has {len(paragraph)} chars "
                f"(limit {max_paragraph_chars})"
            )
        paragraph_id = f"{doc_id}:p{idx}"
        try:
            keywords = extract_keywords(
                paragraph,
                templates[TemplateName.KEYWORD_EXTRACT],
                gateway,
                paragraph_id=paragraph_id,
                model=model,
            )
            if not keywords.keywords:
                reports.append(ValidationReport.build([], []))
                continue
            pairs = generate_clues(
                paragraph,
                keywords,
                templates[TemplateName.CLUE_GENERATE],
                gateway,
                id_prefix=f"a{idx}",
                model=model,
            )
            reports.append(
                validate(
                    pairs,
                    paragraph,
                    templates[TemplateName.GROUNDEDNESS_CHECK],
                    gateway,
                    model=model,
                )
            )
        except ParseFailure as exc:
            raise ParseFailure(f"paragraph {idx}: {exc}") from exc
        except GatewayError as exc:
            raise GatewayError(f"paragraph {idx}: {exc}") from exc
    return ValidationReport.concat(reports)
