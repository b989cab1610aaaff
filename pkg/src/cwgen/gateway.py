"""Chat-completion gateway with retry/backoff and record/replay.

Live mode speaks the OpenAI-compatible chat-completions JSON shape against
a configurable base URL. Replay mode answers from a transcript keyed by a
stable request fingerprint, so every pipeline runs offline and
deterministically. Record mode is live mode that also writes the
transcript used for later replays.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import time
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Callable, Optional

import httpx

from .errors import (
    MalformedUpstreamResponse,
    MissingCredential,
    ReplayMiss,
    TransportError,
)

ENV_API_BASE = "CWGEN_API_BASE"
ENV_API_KEY = "CWGEN_API_KEY"
DEFAULT_API_BASE = "https://api.openai.com/v1"

RETRYABLE_STATUS = {429, 500, 502, 503, 504}


class Role(str, Enum):
    SYSTEM = "system"
    USER = "user"
    ASSISTANT = "assistant"


class FinishReason(str, Enum):
    STOP = "stop"
    LENGTH = "length"
    ERROR = "error"


@dataclass(frozen=True)
class ChatMessage:
    role: Role
    content: str

    def to_json(self) -> dict[str, str]:
        return {"role": self.role.value, "content": self.content}


@dataclass(frozen=True)
class CompletionRequest:
    model: str
    messages: tuple[ChatMessage, ...]
    temperature: float = 0.0
    max_output_tokens: int = 1024

    def __post_init__(self) -> None:
        if not self.messages:
            raise ValueError("messages must be non-empty")
        non_system = [m for m in self.messages if m.role is not Role.SYSTEM]
        if non_system and non_system[0].role is not Role.USER:
            raise ValueError("first non-system message must be from the user")
        if not 0.0 <= self.temperature <= 2.0:
            raise ValueError("temperature must be in [0, 2]")
        if self.max_output_tokens <= 0:
            raise ValueError("max_output_tokens must be positive")


@dataclass(frozen=True)
class CompletionResponse:
    content: str
    finish_reason: FinishReason = FinishReason.STOP
    usage: Optional[dict[str, int]] = None

    def to_json(self) -> dict:
        doc: dict = {"content": self.content, "finish_reason": self.finish_reason.value}
        if self.usage is not None:
            doc["usage"] = self.usage
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "CompletionResponse":
        return cls(
            content=doc["content"],
            finish_reason=FinishReason(doc.get("finish_reason", "stop")),
            usage=doc.get("usage"),
        )


def user_request(model: str, content: str, temperature: float = 0.0) -> CompletionRequest:
    """Single-user-message request, the shape every pipeline call uses."""
    return CompletionRequest(
        model=model,
        messages=(ChatMessage(Role.USER, content),),
        temperature=temperature,
    )


def fingerprint(req: CompletionRequest) -> str:
    """Stable 256-bit hex digest of (model, messages, temperature).

    max_output_tokens is deliberately excluded so token-limit tuning does
    not invalidate recorded transcripts.
    """
    canonical = json.dumps(
        {
            "model": req.model,
            "messages": [m.to_json() for m in req.messages],
            "temperature": req.temperature,
        },
        ensure_ascii=True,
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


class Transcript:
    """Fingerprint -> response map with a JSONL file round-trip.

    Writes are serialized through a lock (single-writer contract);
    lookups are plain dict reads.
    """

    def __init__(self) -> None:
        self.entries: dict[str, CompletionResponse] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Transcript) and self.entries == other.entries

    def record(self, req: CompletionRequest, resp: CompletionResponse) -> None:
        with self._lock:
            self.entries[fingerprint(req)] = resp

    def record_fingerprint(self, fp: str, resp: CompletionResponse) -> None:
        with self._lock:
            self.entries[fp] = resp

    def lookup(self, req: CompletionRequest) -> CompletionResponse:
        fp = fingerprint(req)
        try:
            return self.entries[fp]
        except KeyError:
            raise ReplayMiss(fp) from None

    def save(self, path: str | Path) -> None:
        lines = [
            json.dumps(
                {"fingerprint": fp, "response": resp.to_json()},
                ensure_ascii=False,
            )
            + "\n"
            for fp, resp in self.entries.items()
        ]
        Path(path).write_text("".join(lines), encoding="utf-8", newline="\n")

    @classmethod
    def load(cls, path: str | Path) -> "Transcript":
        transcript = cls()
        # Split on LF only: splitlines() would also break on U+2028 and
        # friends, which are legal raw inside JSON strings.
        for line in Path(path).read_text(encoding="utf-8").split("\n"):
            if not line.strip():
                continue
            doc = json.loads(line)
            transcript.entries[doc["fingerprint"]] = CompletionResponse.from_json(
                doc["response"]
            )
        return transcript


@dataclass
class RetryPolicy:
    max_retries: int = 3
    base_delay: float = 0.5
    max_delay: float = 30.0

    def delay(self, attempt: int) -> float:
        """Nondecreasing exponential backoff for retry number *attempt* (0-based)."""
        return min(self.base_delay * (2**attempt), self.max_delay)


class Gateway:
    """Shared completion interface; construct via `live`, `replay`, or `record`."""

    def __init__(
        self,
        *,
        base_url: Optional[str] = None,
        api_key: Optional[str] = None,
        transcript: Optional[Transcript] = None,
        mode: str = "live",
        retry: Optional[RetryPolicy] = None,
        client: Optional[httpx.Client] = None,
        sleep: Callable[[float], None] = time.sleep,
    ) -> None:
        self.mode = mode
        self.base_url = (base_url or DEFAULT_API_BASE).rstrip("/")
        self.api_key = api_key
        self.transcript = transcript
        self.retry = retry or RetryPolicy()
        self._client = client
        self._sleep = sleep
        self.calls = 0
        self.attempts = 0

    # --- constructors ---

    @classmethod
    def live(
        cls,
        base_url: Optional[str] = None,
        api_key: Optional[str] = None,
        retry: Optional[RetryPolicy] = None,
        client: Optional[httpx.Client] = None,
        sleep: Callable[[float], None] = time.sleep,
    ) -> "Gateway":
        return cls(
            base_url=base_url or os.environ.get(ENV_API_BASE),
            api_key=api_key if api_key is not None else os.environ.get(ENV_API_KEY),
            mode="live",
            retry=retry,
            client=client,
            sleep=sleep,
        )

    @classmethod
    def replay(cls, transcript: Transcript) -> "Gateway":
        return cls(transcript=transcript, mode="replay")

    @classmethod
    def record(
        cls,
        transcript: Transcript,
        base_url: Optional[str] = None,
        api_key: Optional[str] = None,
        client: Optional[httpx.Client] = None,
    ) -> "Gateway":
        gw = cls.live(base_url=base_url, api_key=api_key, client=client)
        gw.mode = "record"
        gw.transcript = transcript
        return gw

    @classmethod
    def from_env(cls, transcript_path: Optional[str | Path] = None) -> "Gateway":
        """Replay when a transcript is given, else live from the environment."""
        if transcript_path is not None:
            return cls.replay(Transcript.load(transcript_path))
        return cls.live()

    # --- the one operation ---

    def complete(self, req: CompletionRequest) -> CompletionResponse:
        self.calls += 1
        if self.mode == "replay":
            assert self.transcript is not None
            return self.transcript.lookup(req)

        resp = self._complete_live(req)
        if self.mode == "record" and self.transcript is not None:
            self.transcript.record(req, resp)
        return resp

    def _complete_live(self, req: CompletionRequest) -> CompletionResponse:
        if not self.api_key:
            raise MissingCredential(
                f"live mode needs an API key ({ENV_API_KEY} or explicit api_key)"
            )
        payload = {
            "model": req.model,
            "messages": [m.to_json() for m in req.messages],
            "temperature": req.temperature,
            "max_tokens": req.max_output_tokens,
        }
        headers = {"Authorization": f"Bearer {self.api_key}"}
        url = f"{self.base_url}/chat/completions"
        client = self._client or _default_client()

        last_error: str = "no attempt made"
        for attempt in range(self.retry.max_retries + 1):
            self.attempts += 1
            try:
                response = client.post(url, json=payload, headers=headers)
            except httpx.HTTPError as exc:
                last_error = f"transport failure: {exc}"
            else:
                if response.status_code == 200:
                    return _parse_upstream(response.json())
                last_error = f"HTTP {response.status_code}"
                if response.status_code not in RETRYABLE_STATUS:
                    raise TransportError(f"{last_error} (not retryable)")
            if attempt < self.retry.max_retries:
                self._sleep(self.retry.delay(attempt))
        raise TransportError(
            f"{last_error} after {self.retry.max_retries + 1} attempts"
        )


_shared_client: Optional[httpx.Client] = None


def _default_client() -> httpx.Client:
    global _shared_client
    if _shared_client is None:
        _shared_client = httpx.Client(timeout=60.0)
    return _shared_client


def _parse_upstream(doc: dict) -> CompletionResponse:
    try:
        choice = doc["choices"][0]
        content = choice["message"]["content"]
    except (KeyError, IndexError, TypeError) as exc:
        raise MalformedUpstreamResponse(f"unexpected payload shape: {exc}") from exc
    raw_reason = choice.get("finish_reason", "stop")
    finish = FinishReason.LENGTH if raw_reason == "length" else FinishReason.STOP
    usage = doc.get("usage")
    if usage is not None:
        usage = {k: v for k, v in usage.items() if isinstance(v, int)}
    return CompletionResponse(content=content, finish_reason=finish, usage=usage)
