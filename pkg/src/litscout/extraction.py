"""Per-paper method extraction through a pluggable LLM completion backend.

The prompt template carries a single ``{document}`` placeholder; the
document is the paper's title plus abstract. Backends share one surface
(submit prompt, get completion text) with live, replay and recording
implementations, so extraction over a fixed fixture set is deterministic.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Protocol

import httpx

from .errors import (
    AuthError,
    ConfigurationError,
    FixtureCollisionError,
    FixtureMissError,
    RateLimitError,
    TemplateError,
    TransportError,
)
from .scopus import Curation, PaperRecord
from .textnorm import strip_bullet

LLM_KEY_ENV = "LITSCOUT_LLM_KEY"
PLACEHOLDER = "{document}"

DEFAULT_PROMPT_ID = "initial"
# the substituted document stays wrapped in literal braces: ###{<text>}###
DEFAULT_TEMPLATE_TEXT = (
    "Extract the names of the artificial intelligence approaches used from "
    "the following text. ###{{document}}### \nA:"
)


@dataclass(frozen=True)
class PromptTemplate:
    id: str = DEFAULT_PROMPT_ID
    template_text: str = DEFAULT_TEMPLATE_TEXT
    temperature: float = 0.0
    max_tokens: int = 256


@dataclass
class ExtractionResult:
    eid: str
    prompt_id: str
    raw_completion: str
    methods: list[str]
    backend_tag: str


def render_prompt(template: PromptTemplate, paper: PaperRecord) -> str:
    """Substitute the paper's title+abstract into the template."""
    count = template.template_text.count(PLACEHOLDER)
    if count != 1:
        raise TemplateError(
            f"template {template.id!r} must contain {PLACEHOLDER} exactly once, found {count}"
        )
    document = paper.title.strip()
    if paper.abstract:
        document = f"{document}. {paper.abstract.strip()}"
    return template.template_text.replace(PLACEHOLDER, document, 1)


def _split_outside_parens(text: str) -> list[str]:
    # a comma is protected only inside a parenthesized group that closes;
    # a stray "(" never protects the rest of the line
    protected = [False] * len(text)
    stack: list[int] = []
    for i, ch in enumerate(text):
        if ch == "(":
            stack.append(i)
        elif ch == ")" and stack:
            start = stack.pop()
            for k in range(start, i):
                protected[k] = True
    parts: list[str] = []
    current: list[str] = []
    for i, ch in enumerate(text):
        if ch == "," and not protected[i]:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return parts


def _drop_unmatched_parens(s: str) -> str:
    stack: list[int] = []
    matched: set[int] = set()
    for i, ch in enumerate(s):
        if ch == "(":
            stack.append(i)
        elif ch == ")" and stack:
            matched.add(stack.pop())
            matched.add(i)
    return "".join(ch for i, ch in enumerate(s) if ch not in "()" or i in matched)


def _clean_token(token: str) -> str:
    # iterate to a fixed point: removing a stray paren can expose a
    # bullet, stripping a bullet can expose a trailing period, ...
    while True:
        cleaned = strip_bullet(token.strip()).strip()
        cleaned = _drop_unmatched_parens(cleaned).strip()
        while cleaned.endswith("."):
            cleaned = cleaned[:-1].rstrip()
        if cleaned == token:
            return cleaned
        token = cleaned


def parse_completion(raw: str) -> list[str]:
    """Turn raw completion text into a clean, de-duplicated method list.

    Splits on newlines and on commas outside matched parentheses; strips
    bullets, numbering, stray parentheses, surrounding whitespace and
    trailing periods. Idempotent on its own comma-joined output.
    """
    items: list[str] = []
    for line in raw.splitlines():
        for chunk in _split_outside_parens(line):
            name = _clean_token(chunk)
            if name:
                items.append(name)
    seen: set[str] = set()
    out: list[str] = []
    for name in items:
        key = name.casefold()
        if key not in seen:
            seen.add(key)
            out.append(name)
    return out


class CompletionBackend(Protocol):
    tag: str

    def complete(self, prompt_id: str, prompt: str, template: PromptTemplate) -> str: ...


def completion_key(prompt_id: str, rendered_prompt: str) -> str:
    digest = hashlib.sha256()
    digest.update(prompt_id.encode("utf-8"))
    digest.update(b"\x00")
    digest.update(rendered_prompt.encode("utf-8"))
    return digest.hexdigest()[:16]


class ReplayBackend:
    """Serves recorded completions keyed by hash of (prompt_id, prompt)."""

    def __init__(self, fixtures_dir: str | Path, tag: str = "replay"):
        self.root = Path(fixtures_dir)
        self.tag = tag

    def complete(self, prompt_id: str, prompt: str, template: PromptTemplate) -> str:
        path = self.root / f"{completion_key(prompt_id, prompt)}.json"
        if not path.exists():
            raise FixtureMissError(
                f"no completion fixture for prompt {prompt_id!r} ({path.name})"
            )
        return json.loads(path.read_text(encoding="utf-8"))["completion"]

    def record(self, prompt_id: str, prompt: str, completion: str) -> Path:
        path = self.root / f"{completion_key(prompt_id, prompt)}.json"
        doc = {
            "schema_version": 1,
            "prompt_id": prompt_id,
            "prompt": prompt,
            "completion": completion,
        }
        encoded = json.dumps(doc, indent=2, ensure_ascii=False, sort_keys=True) + "\n"
        if path.exists():
            if path.read_text(encoding="utf-8") != encoded:
                raise FixtureCollisionError(
                    f"completion fixture {path.name} exists with different content"
                )
            return path
        self.root.mkdir(parents=True, exist_ok=True)
        path.write_text(encoded, encoding="utf-8")
        return path


class LiveBackend:
    """HTTPS completion endpoint client (text-completion contract).

    Shares the search client's discipline: token-bucket rate limiting and
    bounded retries with backoff.
    """

    def __init__(
        self,
        api_key: str | None = None,
        model: str = "gpt-3.5-turbo-instruct",
        endpoint: str = "https://api.openai.com/v1/completions",
        max_attempts: int = 3,
        rate_per_second: float = 3.0,
        transport: httpx.BaseTransport | None = None,
        record_dir: str | Path | None = None,
        clock=None,
    ):
        import time

        from .scopus import TokenBucket

        self.api_key = api_key or os.environ.get(LLM_KEY_ENV)
        if not self.api_key:
            raise ConfigurationError(f"no {LLM_KEY_ENV} key configured")
        self.model = model
        self.endpoint = endpoint
        self.max_attempts = max_attempts
        self.tag = model
        self.recorder = ReplayBackend(record_dir) if record_dir else None
        self._bucket = TokenBucket(rate_per_second, burst=2)
        self._clock = clock or time
        self._client = httpx.Client(transport=transport, timeout=60.0)

    def complete(self, prompt_id: str, prompt: str, template: PromptTemplate) -> str:
        body = {
            "model": self.model,
            "prompt": prompt,
            "temperature": template.temperature,
            "max_tokens": template.max_tokens,
        }
        last: Exception | None = None
        for attempt in range(1, self.max_attempts + 1):
            self._bucket.acquire()
            try:
                resp = self._client.post(
                    self.endpoint,
                    json=body,
                    headers={"Authorization": f"Bearer {self.api_key}"},
                )
            except httpx.HTTPError as exc:
                last = exc
                if attempt < self.max_attempts:
                    self._clock.sleep(0.2 * 2 ** (attempt - 1))
                continue
            if resp.status_code in (401, 403):
                raise AuthError(f"completion endpoint rejected credentials ({resp.status_code})")
            if resp.status_code == 429:
                retry_after = float(resp.headers.get("Retry-After", "1"))
                last = RateLimitError("rate limited", retry_after=retry_after)
                if attempt < self.max_attempts:
                    self._clock.sleep(min(retry_after, 5.0))
                continue
            if resp.status_code >= 500:
                last = TransportError(f"server error {resp.status_code}", attempts=attempt)
                if attempt < self.max_attempts:
                    self._clock.sleep(0.2 * 2 ** (attempt - 1))
                continue
            text = resp.json()["choices"][0]["text"]
            if self.recorder is not None:
                self.recorder.record(prompt_id, prompt, text)
            return text
        raise TransportError(
            f"completion failed after {self.max_attempts} attempts: {last}",
            attempts=self.max_attempts,
        )


@dataclass
class ExtractionBatch:
    results: list[ExtractionResult]
    errors: dict[str, Exception] = field(default_factory=dict)


def extract_methods(
    pool: list[PaperRecord],
    template: PromptTemplate,
    backend: CompletionBackend,
    max_workers: int = 4,
) -> ExtractionBatch:
    """Extract method names for every included paper in the pool.

    Excluded papers and papers marked included_general are skipped (they
    don't name methods in title/abstract). Backend failures are collected
    per paper without aborting the batch; result order follows input order
    regardless of completion order.
    """
    targets = [
        p
        for p in pool
        if p.curation in (Curation.INCLUDED, Curation.UNREVIEWED)
    ]
    results: dict[str, ExtractionResult] = {}
    errors: dict[str, Exception] = {}
    lock = threading.Lock()

    def run_one(paper: PaperRecord) -> None:
        try:
            prompt = render_prompt(template, paper)
            completion = backend.complete(template.id, prompt, template)
            result = ExtractionResult(
                eid=paper.eid,
                prompt_id=template.id,
                raw_completion=completion,
                methods=parse_completion(completion),
                backend_tag=backend.tag,
            )
            with lock:
                results[paper.eid] = result
        except Exception as exc:  # noqa: BLE001 - collected per item
            with lock:
                errors[paper.eid] = exc

    if max_workers <= 1 or len(targets) <= 1:
        for paper in targets:
            run_one(paper)
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=max_workers) as pool_exec:
            list(pool_exec.map(run_one, targets))

    ordered = [results[p.eid] for p in targets if p.eid in results]
    return ExtractionBatch(results=ordered, errors=errors)
