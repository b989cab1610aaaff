"""Arabic text utilities: normalization, word counting, letter extraction.

Everything here is pure and stateless. Normalization strips tashkeel and
tatweel but never folds letter forms (hamza/alef variants stay distinct):
crossword answers are exact letter sequences, and folding would corrupt
grid intersections.
"""

from __future__ import annotations

import re
import unicodedata
from collections.abc import Sequence

from .errors import EmptyAnswer

# Tashkeel marks U+064B..U+065F plus the superscript alef U+0670, and the
# tatweel elongation character U+0640. Nothing else is touched.
_REMOVED = re.compile("[ً-ٰٟـ]")
_WS = re.compile(r"\s+")

# Tokens that flag reversed/scrambled print-crossword answers. Configurable:
# callers may pass their own list.
DEFAULT_REVERSAL_MARKERS: tuple[str, ...] = ("معكوسة", "مقلوبة", "مبعثرة")


def normalize(raw: str) -> str:
    """Return *raw* NFC-composed, diacritic- and tatweel-free, with
    whitespace runs collapsed to single spaces and ends trimmed.

    Total function: empty input yields the empty string. Idempotent.
    """
    # NFC first so decomposed letter+mark sequences (e.g. alef + maddah)
    # compose into real letters before the mark sweep.
    text = unicodedata.normalize("NFC", raw)
    text = _REMOVED.sub("", text)
    return _WS.sub(" ", text).strip()


def word_count(text: str) -> int:
    """Number of maximal non-whitespace runs in *text*."""
    return len(text.split())


def answer_letters(answer: str) -> list[str]:
    """The grid letters of *answer*: its Unicode scalars minus whitespace.

    Raises EmptyAnswer when nothing is left. Post-normalization Arabic
    carries no combining marks, so scalars are the right granularity.
    """
    letters = [ch for ch in answer if not ch.isspace()]
    if not letters:
        raise EmptyAnswer(f"answer {answer!r} has no letters")
    return letters


def contains_reversal_marker(
    clue: str, markers: Sequence[str] = DEFAULT_REVERSAL_MARKERS
) -> bool:
    """True iff any marker occurs in *clue* as a whole word.

    Multi-word markers match as contiguous word sequences.
    """
    words = clue.split()
    for marker in markers:
        mwords = marker.split()
        if not mwords:
            continue
        n = len(mwords)
        if any(words[i : i + n] == mwords for i in range(len(words) - n + 1)):
            return True
    return False


def contains_whole_word(text: str, needle: str) -> bool:
    """True iff *needle*'s word sequence appears contiguously in *text*."""
    return contains_reversal_marker(text, [needle]) if needle.strip() else False


def has_arabic_letter(text: str) -> bool:
    """True iff *text* contains at least one Arabic-block letter."""
    return any(
        "؀" <= ch <= "ۿ" and unicodedata.category(ch).startswith("L")
        for ch in text
    )
