from __future__ import annotations

from pathlib import Path

import pytest

from cwgen.gateway import CompletionResponse, Gateway, Transcript, user_request

FIXTURES = Path(__file__).parent / "fixtures"


def replay_gateway(entries: dict[str, str], model: str = "gpt-4") -> Gateway:
    """Gateway answering canned content keyed by exact prompt text."""
    transcript = Transcript()
    for prompt, content in entries.items():
        transcript.record(user_request(model, prompt), CompletionResponse(content))
    return Gateway.replay(transcript)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def atom_paragraph() -> str:
    return (FIXTURES / "atom_paragraph.txt").read_text(encoding="utf-8")


@pytest.fixture
def atom_gateway() -> Gateway:
    return Gateway.replay(Transcript.load(FIXTURES / "atom_transcript.jsonl"))
