"""Literature-database search client with record/replay fixtures.

Live mode talks to the search API over HTTPS (key via
``LITSCOUT_SCOPUS_KEY``), paginates with start/count, rate-limits with a
token bucket and retries transient failures. Replay mode serves canonical
fixture documents keyed by a stable hash of the exact query text, so a
fixed fixture set makes ``search`` a pure function of the query.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import time
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import httpx

from .errors import (
    AuthError,
    ConfigurationError,
    FixtureCollisionError,
    FixtureMissError,
    MalformedResponseError,
    RateLimitError,
    TransportError,
)
from .keywords import QueryString

SEARCH_URL = "https://api.elsevier.com/content/search/scopus"
API_KEY_ENV = "LITSCOUT_SCOPUS_KEY"
FIXTURES_ENV = "LITSCOUT_FIXTURES"
DEFAULT_LIMIT = 2000
PAGE_SIZE = 25
FIXTURE_SCHEMA_VERSION = 1


class Curation(str, Enum):
    UNREVIEWED = "unreviewed"
    INCLUDED = "included"
    EXCLUDED = "excluded"
    INCLUDED_GENERAL = "included_general"


@dataclass
class PaperRecord:
    eid: str
    title: str
    year: int
    citation_count: int = 0
    doi: str | None = None
    abstract: str | None = None
    author_keywords: list[str] = field(default_factory=list)
    index_terms: list[str] = field(default_factory=list)
    doc_type: str = ""
    curation: Curation = Curation.UNREVIEWED
    curation_note: str = ""


@dataclass
class QueryResult:
    query: QueryString
    fetched_at: str
    total_found: int
    records: list[PaperRecord]


def _split_keywords(raw: str | None) -> list[str]:
    if not raw:
        return []
    return [part.strip() for part in raw.split("|") if part.strip()]


def parse_entry(entry: dict) -> PaperRecord:
    """Map one search-results entry onto a PaperRecord.

    Raises MalformedResponseError when eid or a parseable cover-date year
    is missing; callers skip and report such entries.
    """
    eid = (entry.get("eid") or "").strip()
    if not eid:
        raise MalformedResponseError("entry without eid", excerpt=json.dumps(entry)[:200])
    cover_date = str(entry.get("prism:coverDate") or "")
    if len(cover_date) < 4 or not cover_date[:4].isdigit():
        raise MalformedResponseError(
            f"entry {eid}: unparseable cover date {cover_date!r}",
            excerpt=json.dumps(entry)[:200],
        )
    title = str(entry.get("dc:title") or "").strip()
    abstract = entry.get("dc:description")
    if abstract is not None:
        abstract = str(abstract).strip() or None
    try:
        citations = int(entry.get("citedby-count") or 0)
    except (TypeError, ValueError):
        citations = 0
    return PaperRecord(
        eid=eid,
        doi=(entry.get("prism:doi") or None),
        title=title,
        abstract=abstract,
        author_keywords=_split_keywords(entry.get("authkeywords")),
        index_terms=_split_keywords(entry.get("idxterms")),
        year=int(cover_date[:4]),
        citation_count=max(citations, 0),
        doc_type=str(entry.get("subtype") or ""),
    )


def parse_response(payload: dict) -> tuple[int, list[PaperRecord], list[str]]:
    """Parse a search-results document into (total, records, skip reports)."""
    try:
        results = payload["search-results"]
        total = int(results.get("opensearch:totalResults", 0))
        entries = results.get("entry", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedResponseError(
            f"not a search-results document: {exc}", excerpt=json.dumps(payload)[:300]
        ) from None
    records: list[PaperRecord] = []
    skipped: list[str] = []
    for entry in entries:
        try:
            records.append(parse_entry(entry))
        except MalformedResponseError as exc:
            skipped.append(exc.message)
    return total, records, skipped


def query_key(query_text: str) -> str:
    """Stable fixture key; canonicalization is the exact query text."""
    return hashlib.sha256(query_text.encode("utf-8")).hexdigest()[:16]


class FixtureStore:
    """Directory of canonical response documents, one per query hash.

    Writes are serialized; a write that collides with an existing fixture
    holding different content is a corruption signal and fails hard.
    """

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self._write_lock = threading.Lock()

    def path_for(self, query_text: str) -> Path:
        return self.root / f"{query_key(query_text)}.json"

    def load(self, query_text: str) -> dict:
        path = self.path_for(query_text)
        if not path.exists():
            raise FixtureMissError(f"no fixture for query: {query_text!r} ({path.name})")
        return json.loads(path.read_text(encoding="utf-8"))

    def save(self, query_text: str, document: dict) -> Path:
        doc = dict(document)
        doc.setdefault("schema_version", FIXTURE_SCHEMA_VERSION)
        doc["query"] = query_text
        encoded = json.dumps(doc, indent=2, ensure_ascii=False, sort_keys=True) + "\n"
        with self._write_lock:
            path = self.path_for(query_text)
            if path.exists():
                existing = path.read_text(encoding="utf-8")
                if existing != encoded:
                    raise FixtureCollisionError(
                        f"fixture {path.name} already exists with different content"
                    )
                return path
            self.root.mkdir(parents=True, exist_ok=True)
            path.write_text(encoded, encoding="utf-8")
        return path


class TokenBucket:
    """Simple token-bucket rate limiter, thread-safe."""

    def __init__(self, rate_per_second: float, burst: int = 1):
        self.rate = max(rate_per_second, 0.001)
        self.capacity = max(burst, 1)
        self._tokens = float(self.capacity)
        self._last = time.monotonic()
        self._lock = threading.Lock()

    def acquire(self) -> None:
        while True:
            with self._lock:
                now = time.monotonic()
                self._tokens = min(self.capacity, self._tokens + (now - self._last) * self.rate)
                self._last = now
                if self._tokens >= 1:
                    self._tokens -= 1
                    return
                wait = (1 - self._tokens) / self.rate
            time.sleep(wait)


class ScopusClient:
    """Search client; exactly one of api_key / fixtures_dir selects the mode.

    ``record_dir`` combines live fetching with fixture recording.
    """

    def __init__(
        self,
        api_key: str | None = None,
        fixtures_dir: str | Path | None = None,
        record_dir: str | Path | None = None,
        rate_per_second: float = 3.0,
        max_attempts: int = 3,
        transport: httpx.BaseTransport | None = None,
        view: str | None = "COMPLETE",
        clock=time,
    ):
        if fixtures_dir is None and api_key is None:
            api_key = os.environ.get(API_KEY_ENV)
            env_fixtures = os.environ.get(FIXTURES_ENV)
            if api_key is None and env_fixtures:
                fixtures_dir = env_fixtures
        if fixtures_dir is None and not api_key:
            raise ConfigurationError(
                f"no {API_KEY_ENV} key and no fixture directory configured"
            )
        self.replay_store = FixtureStore(fixtures_dir) if fixtures_dir else None
        self.record_store = FixtureStore(record_dir) if record_dir else None
        self.api_key = api_key
        self.max_attempts = max_attempts
        self.view = view
        self._bucket = TokenBucket(rate_per_second, burst=2)
        self._clock = clock
        self._client = httpx.Client(transport=transport, timeout=30.0)

    # -- live plumbing -------------------------------------------------

    def _get_page(self, query_text: str, start: int, count: int) -> dict:
        params = {"query": query_text, "start": str(start), "count": str(count)}
        if self.view:
            params["view"] = self.view
        last_error: Exception | None = None
        for attempt in range(1, self.max_attempts + 1):
            self._bucket.acquire()
            try:
                resp = self._client.get(
                    SEARCH_URL, params=params, headers={"X-ELS-APIKey": self.api_key or ""}
                )
            except httpx.HTTPError as exc:
                last_error = exc
                if attempt < self.max_attempts:
                    self._clock.sleep(0.2 * 2 ** (attempt - 1))
                continue
            if resp.status_code in (401, 403):
                raise AuthError(f"search API rejected credentials ({resp.status_code})")
            if resp.status_code == 429:
                retry_after = float(resp.headers.get("Retry-After", "1"))
                if attempt < self.max_attempts:
                    self._clock.sleep(min(retry_after, 5.0))
                    last_error = RateLimitError("rate limited", retry_after=retry_after)
                    continue
                raise RateLimitError("rate limited by search API", retry_after=retry_after)
            if resp.status_code >= 500:
                last_error = TransportError(f"server error {resp.status_code}", attempts=attempt)
                if attempt < self.max_attempts:
                    self._clock.sleep(0.2 * 2 ** (attempt - 1))
                continue
            try:
                return resp.json()
            except ValueError:
                raise MalformedResponseError(
                    "response is not JSON", excerpt=resp.text[:300]
                ) from None
        raise TransportError(
            f"search request failed after {self.max_attempts} attempts: {last_error}",
            attempts=self.max_attempts,
        )

    def _search_live(self, query: QueryString, limit: int) -> tuple[int, list[PaperRecord], dict]:
        records: list[PaperRecord] = []
        seen: set[str] = set()
        entries: list[dict] = []
        start = 0
        total = 0
        while True:
            page = self._get_page(query.text, start, PAGE_SIZE)
            total, page_records, _skipped = parse_response(page)
            raw_entries = page.get("search-results", {}).get("entry", [])
            for rec, raw in zip(page_records, raw_entries):
                if rec.eid in seen:
                    continue
                seen.add(rec.eid)
                records.append(rec)
                entries.append(raw)
                if len(records) >= limit:
                    break
            start += PAGE_SIZE
            if len(records) >= min(total, limit) or not raw_entries:
                break
        document = {
            "schema_version": FIXTURE_SCHEMA_VERSION,
            "fetched_at": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
            "response": {
                "search-results": {
                    "opensearch:totalResults": str(total),
                    "entry": entries,
                }
            },
        }
        return total, records, document

    # -- public API ----------------------------------------------------

    def search(self, query: QueryString, limit: int | None = None) -> QueryResult:
        if not query.text.strip():
            raise ConfigurationError("empty query")
        limit = DEFAULT_LIMIT if limit is None else limit
        if self.replay_store is not None:
            document = self.replay_store.load(query.text)
            total, records, _ = parse_response(document["response"])
            fetched_at = document.get("fetched_at", "1970-01-01T00:00:00Z")
        else:
            total, records, document = self._search_live(query, limit)
            fetched_at = document["fetched_at"]
            if self.record_store is not None:
                self.record_store.save(query.text, document)
        # normalize + cap; dedupe preserves first occurrence
        seen: set[str] = set()
        unique: list[PaperRecord] = []
        for rec in records:
            if rec.eid not in seen:
                seen.add(rec.eid)
                unique.append(rec)
            if len(unique) >= limit:
                break
        return QueryResult(query=query, fetched_at=fetched_at, total_found=total, records=unique)

    def close(self) -> None:
        self._client.close()
