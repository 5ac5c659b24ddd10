"""Chat-completions client with caching, retries, and deterministic mocks.

The wire format is the familiar one: POST {base_url}/v1/chat/completions with
a single user message, bearer token from OPENAI_API_KEY. Responses are cached
append-only in a JSONL file keyed by sha256(model_name NUL prompt), and the
cache is consulted before the network, so a rerun after an abort costs no
requests. Transient failures (429, 5xx, timeouts) retry with exponential
backoff and equal jitter: delay = base * 2^attempt * (0.5 + 0.5*U), which
stays inside the exponential envelope and never decreases between attempts.
Auth failures never retry.

Mocks substitute for the endpoint in tests and offline runs: an oracle that
answers with the query's true label, a scripted response queue, and a
threshold rule applied to one feature parsed back out of the final question.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import re
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import requests

from .data import Dataset
from .errors import AuthError, ProtocolError, TransportError, ValidationError
from .prompts import PromptSpec, assemble_prompt, render_instance, sample_examples
from .schema import FeatureSchema

_RETRYABLE_STATUS = frozenset({429, 500, 502, 503, 504})
_LABEL_RE = re.compile(r"(?<![0-9])([01])(?![0-9])")
_QUERY_LINE_RE = re.compile(r"^<Inputs>: (.+)$", re.MULTILINE)


@dataclass(frozen=True)
class LlmConfig:
    base_url: str = "https://api.openai.com"
    model_name: str = "gpt-3.5-turbo"
    temperature: float = 0.0
    max_retries: int = 5
    backoff_base: float = 1.0
    timeout: float = 30.0
    max_in_flight: int = 8

    def __post_init__(self):
        if self.temperature < 0:
            raise ValidationError("temperature must be >= 0")
        if self.max_retries < 0:
            raise ValidationError("max_retries must be >= 0")
        if self.max_in_flight < 1:
            raise ValidationError("max_in_flight must be >= 1")


@dataclass(frozen=True)
class CompletionRecord:
    prompt_hash: str
    model_name: str
    raw_response: str
    timestamp: float
    attempt_count: int


@dataclass(frozen=True)
class Verdict:
    label: int | None  # 0, 1, or None when unparseable
    raw: str

    @property
    def unparseable(self) -> bool:
        return self.label is None


@dataclass(frozen=True)
class PredictionRecord:
    index: int
    verdict: Verdict
    prompt_hash: str


def prompt_hash(prompt_text: str, model_name: str) -> str:
    h = hashlib.sha256()
    h.update(model_name.encode("utf-8"))
    h.update(b"\x00")
    h.update(prompt_text.encode("utf-8"))
    return h.hexdigest()


class JsonlCache:
    """Append-only completion store; the whole file is indexed on open."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._by_hash: dict[str, CompletionRecord] = {}
        if self.path.exists():
            for line in self.path.read_text().splitlines():
                if not line.strip():
                    continue
                doc = json.loads(line)
                rec = CompletionRecord(
                    prompt_hash=doc["prompt_hash"],
                    model_name=doc["model_name"],
                    raw_response=doc["raw_response"],
                    timestamp=doc["timestamp"],
                    attempt_count=doc["attempt_count"],
                )
                self._by_hash[rec.prompt_hash] = rec  # later lines win

    def __len__(self) -> int:
        return len(self._by_hash)

    def get(self, key: str) -> CompletionRecord | None:
        with self._lock:
            return self._by_hash.get(key)

    def put(self, rec: CompletionRecord):
        doc = {
            "prompt_hash": rec.prompt_hash,
            "model_name": rec.model_name,
            "raw_response": rec.raw_response,
            "timestamp": rec.timestamp,
            "attempt_count": rec.attempt_count,
        }
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a") as fh:
                fh.write(json.dumps(doc) + "\n")
            self._by_hash[rec.prompt_hash] = rec


def complete(
    prompt_text: str,
    cfg: LlmConfig,
    cache: JsonlCache | None = None,
    sleeper=time.sleep,
    jitter_rng: random.Random | None = None,
    api_key: str | None = None,
) -> CompletionRecord:
    """One completion, cache first. Raises AuthError (401/403, missing key),
    TransportError (retries exhausted or non-retryable HTTP), ProtocolError
    (body not in chat-completions shape)."""
    key = prompt_hash(prompt_text, cfg.model_name)
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit

    token = api_key if api_key is not None else os.environ.get("OPENAI_API_KEY", "")
    if not token:
        raise AuthError("no API key: set OPENAI_API_KEY")
    jitter_rng = jitter_rng or random.Random()

    url = cfg.base_url.rstrip("/") + "/v1/chat/completions"
    body = {
        "model": cfg.model_name,
        "messages": [{"role": "user", "content": prompt_text}],
        "temperature": cfg.temperature,
    }
    headers = {"Authorization": f"Bearer {token}"}

    last_failure = "no attempt made"
    for attempt in range(cfg.max_retries + 1):
        if attempt > 0:
            envelope = cfg.backoff_base * 2 ** (attempt - 1)
            sleeper(envelope * (0.5 + 0.5 * jitter_rng.random()))
        try:
            resp = requests.post(url, json=body, headers=headers, timeout=cfg.timeout)
        except (requests.Timeout, requests.ConnectionError) as exc:
            last_failure = f"{type(exc).__name__}: {exc}"
            continue
        if resp.status_code in (401, 403):
            raise AuthError(f"HTTP {resp.status_code} from {url}")
        if resp.status_code in _RETRYABLE_STATUS:
            last_failure = f"HTTP {resp.status_code}"
            continue
        if resp.status_code != 200:
            raise TransportError(f"HTTP {resp.status_code} from {url} (not retryable)")
        try:
            content = resp.json()["choices"][0]["message"]["content"]
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise ProtocolError(f"response body not in chat-completions shape: {exc}") from exc
        rec = CompletionRecord(
            prompt_hash=key,
            model_name=cfg.model_name,
            raw_response=str(content),
            timestamp=time.time(),
            attempt_count=attempt + 1,
        )
        if cache is not None:
            cache.put(rec)
        return rec
    raise TransportError(f"gave up after {cfg.max_retries + 1} attempts; last failure: {last_failure}")


# --- mocks ---------------------------------------------------------------


def query_line(prompt_text: str) -> str:
    """The content of the final question's <Inputs> line."""
    m = _QUERY_LINE_RE.search(prompt_text)
    if m is None:
        raise ValidationError("prompt has no final <Inputs> line")
    return m.group(1)


def _query_values(prompt_text: str) -> dict[str, float]:
    pairs = {}
    for chunk in query_line(prompt_text).split(", "):
        name, _, value = chunk.partition(": ")
        pairs[name] = float(value)
    return pairs


class OracleMock:
    """Answers every prompt with the true label of its query instance."""

    def __init__(self, answers: dict[str, int]):
        self.answers = dict(answers)

    @classmethod
    def for_dataset(cls, ds: Dataset, schema: FeatureSchema, float_style: bool = False) -> "OracleMock":
        answers = {
            render_instance(ds.matrix[i], schema, float_style=float_style): int(ds.targets[i])
            for i in range(ds.n_rows)
        }
        return cls(answers)

    def respond(self, prompt_text: str) -> str:
        line = query_line(prompt_text)
        if line not in self.answers:
            raise ValidationError("oracle has no answer for this query line")
        return str(self.answers[line])


class ScriptedMock:
    """Returns queued responses in order; draining the queue is an error."""

    def __init__(self, responses: list[str]):
        self.queue = list(responses)
        self._lock = threading.Lock()

    def respond(self, prompt_text: str) -> str:
        with self._lock:
            if not self.queue:
                raise ValidationError("scripted mock queue exhausted")
            return self.queue.pop(0)


class RuleMock:
    """'1' iff the named feature in the final question is >= threshold."""

    def __init__(self, feature: str, threshold: float):
        self.feature = feature
        self.threshold = threshold

    def respond(self, prompt_text: str) -> str:
        values = _query_values(prompt_text)
        if self.feature not in values:
            raise ValidationError(f"feature {self.feature!r} not in the final question")
        return "1" if values[self.feature] >= self.threshold else "0"


MockPolicy = OracleMock | ScriptedMock | RuleMock


def mock_complete(prompt_text: str, mock: MockPolicy) -> str:
    return mock.respond(prompt_text)


# --- parsing and batching ------------------------------------------------


def parse_label(raw: str) -> Verdict:
    """First standalone 0/1 digit wins; none found -> unparseable."""
    m = _LABEL_RE.search(raw)
    if m is None:
        return Verdict(label=None, raw=raw)
    return Verdict(label=int(m.group(1)), raw=raw)


def classify_batch(
    test: Dataset,
    spec: PromptSpec,
    backend: LlmConfig | OracleMock | ScriptedMock | RuleMock,
    schema: FeatureSchema,
    train: Dataset | None = None,
    cache: JsonlCache | None = None,
    sleeper=time.sleep,
    api_key: str | None = None,
) -> list[PredictionRecord]:
    """One verdict per test row, in row order.

    Prompts share one draw of in-context examples (from train, per spec.seed)
    and differ only in the final question. Real configs fan out over a bounded
    worker pool; mocks run sequentially so scripted queues stay ordered.
    """
    if spec.n_ex > 0 and train is None:
        raise ValidationError("in-context examples requested but no train split given")
    examples = sample_examples(train, spec.n_ex, spec.seed) if spec.n_ex else []
    prompts = [
        assemble_prompt(schema, spec, examples, test.matrix[i]).text for i in range(test.n_rows)
    ]

    if isinstance(backend, LlmConfig):

        def run(args: tuple[int, str]) -> PredictionRecord:
            i, text = args
            rec = complete(text, backend, cache=cache, sleeper=sleeper, api_key=api_key)
            return PredictionRecord(i, parse_label(rec.raw_response), rec.prompt_hash)

        with ThreadPoolExecutor(max_workers=backend.max_in_flight) as pool:
            return list(pool.map(run, enumerate(prompts)))  # map keeps input order

    out = []
    for i, text in enumerate(prompts):
        raw = mock_complete(text, backend)
        out.append(PredictionRecord(i, parse_label(raw), prompt_hash(text, "mock")))
    return out
