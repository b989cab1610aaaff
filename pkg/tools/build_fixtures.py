#!/usr/bin/env python3
"""Regenerate the committed replay-transcript fixtures.

Builds the recorded responses for the atom-paragraph pipeline run and the
golden output it must reproduce. Run from the repo root:

    python3 tools/build_fixtures.py
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from cwgen import arabic, dataset  # noqa: E402
from cwgen.gateway import CompletionResponse, Gateway, Transcript, user_request  # noqa: E402
from cwgen.pipeline_text import run_path_a  # noqa: E402
from cwgen.prompts import Lang, TemplateName, load_all  # noqa: E402

FIXTURES = ROOT / "tests" / "fixtures"
MODEL = "gpt-4"

ATOM_PAIRS: list[tuple[str, str]] = [
    ("الذرة", "أصغر جزء من العنصر الكيميائي يمكن الوصول إليه"),
    ("العنصر الكيميائي", "يتكون من الذرات ويحتفظ بالخصائص الكيميائية"),
    ("الخصائص الكيميائية", "يحتفظ بها العنصر الكيميائي"),
    ("الإلكترونات", "تدور حول النواة في الذرة"),
    ("النواة", "تتكون من البروتونات والنيوترونات في الذرة"),
    ("البروتونات", "تتواجد في النواة وتحمل شحنة موجبة"),
    ("النيوترونات", "تتواجد في النواة ولا تحمل شحنة"),
    ("العناصر", "تتكون من الذرات وتختلف بحسب عدد البروتونات في النواة"),
    ("النظائر", "صور مختلفة للعنصر نفسه"),
    ("تفاعل كيميائي", "يمكن أن يخوضه العنصر بحسب خصائصه الكيميائية"),
]


def main() -> None:
    raw = (FIXTURES / "atom_paragraph.txt").read_text(encoding="utf-8")
    paragraph = arabic.normalize(raw)
    templates = load_all(Lang.AR)

    keyword_response = "الكلمات المفتاحية: " + "، ".join(a for a, _ in ATOM_PAIRS)
    clue_response = "\n\n".join(
        f"الكلمة المفتاحية: {answer}\nاللغز: {clue}" for answer, clue in ATOM_PAIRS
    )
    verdict_response = "\n".join(f"{clue}: صحيح" for _, clue in ATOM_PAIRS)

    transcript = Transcript()
    kw_prompt = templates[TemplateName.KEYWORD_EXTRACT].render(text=paragraph)
    transcript.record(user_request(MODEL, kw_prompt), CompletionResponse(keyword_response))
    clue_prompt = templates[TemplateName.CLUE_GENERATE].render(
        text=paragraph, keywords="، ".join(a for a, _ in ATOM_PAIRS)
    )
    transcript.record(user_request(MODEL, clue_prompt), CompletionResponse(clue_response))
    ground_prompt = templates[TemplateName.GROUNDEDNESS_CHECK].render(
        text=paragraph, clues="\n".join(c for _, c in ATOM_PAIRS)
    )
    transcript.record(user_request(MODEL, ground_prompt), CompletionResponse(verdict_response))

    transcript.save(FIXTURES / "atom_transcript.jsonl")

    report = run_path_a(raw, Lang.AR, Gateway.replay(transcript), model=MODEL)
    assert report.conserved, "report counts must reconcile"
    assert len(report.passed) == len(ATOM_PAIRS), (
        f"expected {len(ATOM_PAIRS)} passed pairs, got {len(report.passed)}: "
        f"{[r.reason for r in report.rejected]}"
    )
    dataset.save_pairs(FIXTURES / "atom_pairs_golden.jsonl", report.passed)
    print(f"wrote {len(report.passed)}-pair golden file and 3-entry transcript")


if __name__ == "__main__":
    main()
