"""Chat-completion backends: a live HTTP client and a deterministic replay stand-in."""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

import requests


@dataclass(frozen=True)
class DecodingConfig:
    temperature: float = 0.0
    max_tokens: int | None = None


@dataclass(frozen=True)
class BackendIdentity:
    model: str
    context_tokens: int = 8192


class LlmBackend(Protocol):
    identity: BackendIdentity

    def send(self, prompt: str, decoding: DecodingConfig) -> str: ...


def prompt_key(prompt: str) -> str:
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()


class ReplayMiss(KeyError):
    pass


class ReplayBackend:
    """Returns canned replies keyed by prompt hash; the test/audit backend.

    Transcript file format: {"model": ..., "context_tokens": ...,
    "replies": {sha256(prompt): reply}}.
    """

    def __init__(self, replies: dict[str, str], identity: BackendIdentity | None = None):
        self.replies = dict(replies)
        self.identity = identity or BackendIdentity(model="replay", context_tokens=8192)
        self.calls: list[str] = []

    @classmethod
    def from_file(cls, path: str | Path) -> "ReplayBackend":
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        identity = BackendIdentity(
            model=doc.get("model", "replay"),
            context_tokens=int(doc.get("context_tokens", 8192)),
        )
        return cls(doc.get("replies", {}), identity)

    def to_file(self, path: str | Path) -> None:
        doc = {
            "model": self.identity.model,
            "context_tokens": self.identity.context_tokens,
            "replies": self.replies,
        }
        Path(path).write_text(json.dumps(doc, ensure_ascii=False, indent=2), encoding="utf-8")

    def record(self, prompt: str, reply: str) -> None:
        self.replies[prompt_key(prompt)] = reply

    def send(self, prompt: str, decoding: DecodingConfig) -> str:
        key = prompt_key(prompt)
        self.calls.append(key)
        if key not in self.replies:
            raise ReplayMiss(f"no canned reply for prompt hash {key[:12]}…")
        return self.replies[key]


class ChatHttpBackend:
    """OpenAI-style chat-completions client; endpoint and model via env or args.

    POST {base}/chat/completions with a single user message; the reply is the
    first choice's message content.
    """

    def __init__(
        self,
        base_url: str,
        model: str,
        api_key: str | None = None,
        context_tokens: int = 8192,
        timeout: float = 120.0,
        session: requests.Session | None = None,
    ):
        self.base_url = base_url.rstrip("/")
        self.api_key = api_key
        self.timeout = timeout
        self.identity = BackendIdentity(model=model, context_tokens=context_tokens)
        self._session = session or requests.Session()

    @classmethod
    def from_env(cls) -> "ChatHttpBackend":
        base = os.environ.get("CITEWEAVE_LLM_BASE_URL", "")
        model = os.environ.get("CITEWEAVE_LLM_MODEL", "")
        if not base or not model:
            raise RuntimeError("CITEWEAVE_LLM_BASE_URL and CITEWEAVE_LLM_MODEL must be set")
        return cls(
            base_url=base,
            model=model,
            api_key=os.environ.get("CITEWEAVE_LLM_API_KEY") or None,
            context_tokens=int(os.environ.get("CITEWEAVE_LLM_CONTEXT_TOKENS", "8192")),
        )

    def send(self, prompt: str, decoding: DecodingConfig) -> str:
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        body = {
            "model": self.identity.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": decoding.temperature,
        }
        if decoding.max_tokens is not None:
            body["max_tokens"] = decoding.max_tokens
        resp = self._session.post(
            f"{self.base_url}/chat/completions", json=body, headers=headers, timeout=self.timeout
        )
        resp.raise_for_status()
        payload = resp.json()
        return payload["choices"][0]["message"]["content"]
