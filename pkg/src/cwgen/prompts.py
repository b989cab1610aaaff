"""Prompt template registry.

Templates live as UTF-8 resource files with `{placeholder}` slots and ship
in English and Arabic variants. Each template name has a fixed placeholder
contract, checked at load time.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from importlib import resources


class TemplateName(str, Enum):
    KEYWORD_EXTRACT = "keyword_extract"
    CLUE_GENERATE = "clue_generate"
    GROUNDEDNESS_CHECK = "groundedness_check"


class Lang(str, Enum):
    EN = "en"
    AR = "ar"


REQUIRED_PLACEHOLDERS: dict[TemplateName, frozenset[str]] = {
    TemplateName.KEYWORD_EXTRACT: frozenset({"text"}),
    TemplateName.CLUE_GENERATE: frozenset({"text", "keywords"}),
    TemplateName.GROUNDEDNESS_CHECK: frozenset({"text", "clues"}),
}

_PLACEHOLDER = re.compile(r"\{(\w+)\}")


@dataclass(frozen=True)
class PromptTemplate:
    name: TemplateName
    language: Lang
    body: str

    def __post_init__(self) -> None:
        found = set(_PLACEHOLDER.findall(self.body))
        missing = REQUIRED_PLACEHOLDERS[self.name] - found
        if missing:
            raise ValueError(
                f"template {self.name.value}/{self.language.value} "
                f"missing placeholders: {sorted(missing)}"
            )

    def render(self, **values: str) -> str:
        return self.body.format(**values)


def load_template(name: TemplateName, language: Lang) -> PromptTemplate:
    filename = f"{name.value}_{language.value}.txt"
    body = (
        resources.files("cwgen.templates").joinpath(filename).read_text(encoding="utf-8")
    )
    return PromptTemplate(name=name, language=language, body=body)


def load_all(language: Lang) -> dict[TemplateName, PromptTemplate]:
    return {name: load_template(name, language) for name in TemplateName}
