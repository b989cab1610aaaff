"""Exception hierarchy shared by every cwgen module."""

from __future__ import annotations


class CwgenError(Exception):
    """Base class for all toolkit errors."""


# --- text / dataset ---

class EmptyAnswer(CwgenError):
    """Answer is empty once whitespace is stripped."""


class EmptyDocument(CwgenError):
    """No paragraph survives segmentation."""


class EmptyInput(CwgenError):
    """An operation that needs at least one item received none."""


class MalformedRecord(CwgenError):
    """A dataset record could not be parsed (carries the line number)."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


# --- gateway ---

class GatewayError(CwgenError):
    """Base class for model-gateway failures."""


class MissingCredential(GatewayError):
    """Live mode requested without an API key."""


class TransportError(GatewayError):
    """HTTP call failed after all retries."""


class ReplayMiss(GatewayError):
    """Replay mode has no transcript entry for this request."""

    def __init__(self, fingerprint: str):
        super().__init__(f"no transcript entry for fingerprint {fingerprint}")
        self.fingerprint = fingerprint


class MalformedUpstreamResponse(GatewayError):
    """Upstream returned JSON that is not a chat completion."""


# --- pipelines ---

class ParseFailure(CwgenError):
    """Model output did not contain the expected structure."""


class AnswerTooLong(CwgenError):
    """Answer exceeds the three-word limit for clue generation."""


# --- layout engine ---

class LayoutError(CwgenError):
    """Base class for grid layout errors."""


class WordTooShort(LayoutError):
    """Words of fewer than two letters cannot be placed."""


class WordTooLong(LayoutError):
    """Word does not fit in either grid dimension."""


class InsufficientAnswers(LayoutError):
    """Fewer distinct placeable answers than the configured minimum."""


class NoLayoutFound(LayoutError):
    """Not even a single first placement is legal."""


class InconsistentState(LayoutError):
    """A placement's letters disagree with the grid cells."""


# --- rendering ---

class InvalidLayout(CwgenError):
    """Layout failed verification before rendering."""


class MissingClue(CwgenError):
    """A placement references a pair that was not supplied."""

    def __init__(self, answer_id: str):
        super().__init__(f"no clue supplied for answer {answer_id!r}")
        self.answer_id = answer_id
