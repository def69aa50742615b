"""Client for an academic-graph metadata API; assembles PaperBundles from paper ids.

The provider is configurable. It must expose, relative to a base URL:

    GET /paper/{id}      -> {"paperId", "title", "abstract",
                             "sections": {"introduction", "related_work", "conclusion"},
                             "relatedWorkReferences": [ref_id, ...]}
    GET /paper/{ref_id}  -> {"paperId", "title", "abstract", "authors", "year", "url"}

``relatedWorkReferences`` lists, in reference-list order, the works cited in the
related-work section; local citation ids 1..n are assigned in that order.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import requests

from .corpus import CitationEntry, PaperBundle, mask_citations


class IngestError(Exception):
    pass


class NotFound(IngestError):
    pass


class RateLimited(IngestError):
    pass


class MissingSection(IngestError):
    def __init__(self, paper_id: str, section: str):
        self.section = section
        super().__init__(f"paper {paper_id} lacks a non-empty {section} section")


@dataclass
class ApiConfig:
    base_url: str
    api_key: str | None = None
    timeout: float = 15.0
    max_retries: int = 4          # retries after the first attempt
    backoff_start: float = 1.0    # seconds; doubles per retry
    max_in_flight: int = 4

    @classmethod
    def from_env(cls) -> "ApiConfig":
        base = os.environ.get("CITEWEAVE_API_BASE_URL", "")
        if not base:
            raise IngestError("CITEWEAVE_API_BASE_URL is not set")
        return cls(
            base_url=base,
            api_key=os.environ.get("CITEWEAVE_API_KEY") or None,
            timeout=float(os.environ.get("CITEWEAVE_API_TIMEOUT", "15")),
        )


@dataclass
class IngestResult:
    bundle: PaperBundle
    warnings: list[str] = field(default_factory=list)


def _requests_transport(url: str, params: dict, headers: dict, timeout: float):
    resp = requests.get(url, params=params, headers=headers, timeout=timeout)
    try:
        payload = resp.json()
    except ValueError:
        payload = {}
    return resp.status_code, payload


class AcademicApiClient:
    """Thin GET client with bounded retry/backoff; transport injectable for tests."""

    def __init__(self, config: ApiConfig, transport=None, sleep=time.sleep):
        self.config = config
        self._transport = transport or _requests_transport
        self._sleep = sleep

    def _headers(self) -> dict:
        headers = {"Accept": "application/json"}
        if self.config.api_key:
            headers["x-api-key"] = self.config.api_key
        return headers

    def get_json(self, path: str, params: dict | None = None) -> dict:
        url = self.config.base_url.rstrip("/") + path
        delay = self.config.backoff_start
        attempts = self.config.max_retries + 1
        for attempt in range(attempts):
            status, payload = self._transport(url, params or {}, self._headers(), self.config.timeout)
            if status == 200:
                return payload
            if status == 404:
                raise NotFound(f"{path}: not found")
            if status == 429 or status >= 500:
                if attempt + 1 < attempts:
                    self._sleep(delay)
                    delay *= 2
                    continue
                if status == 429:
                    raise RateLimited(f"{path}: still rate-limited after {self.config.max_retries} retries")
            raise IngestError(f"{path}: unexpected status {status}")
        raise IngestError(f"{path}: unreachable")  # pragma: no cover

    def _fetch_reference(self, local_id: int, ref_id: str) -> tuple[CitationEntry, list[str]]:
        warnings: list[str] = []
        try:
            doc = self.get_json(f"/paper/{ref_id}")
        except NotFound:
            warnings.append(f"PartialCitation: reference {ref_id} (citation {local_id}) not found; metadata empty")
            return CitationEntry(id=local_id, title=f"[unresolved reference {ref_id}]"), warnings
        title = (doc.get("title") or "").strip()
        if not title:
            title = f"[untitled reference {ref_id}]"
            warnings.append(f"PartialCitation: reference {ref_id} (citation {local_id}) has no title")
        abstract = (doc.get("abstract") or "").strip()
        if not abstract:
            warnings.append(f"PartialCitation: reference {ref_id} (citation {local_id}) has no abstract")
        authors = doc.get("authors") or []
        names = [a["name"] if isinstance(a, dict) else str(a) for a in authors]
        entry = CitationEntry(
            id=local_id,
            title=title,
            abstract=abstract,
            authors=names,
            year=int(doc.get("year") or 0),
            url=str(doc.get("url") or ""),
        )
        return entry, warnings

    def fetch_paper(self, paper_id: str) -> IngestResult:
        """Fetch a paper and its related-work citations; returns a masked bundle.

        In-text citations in the abstract, introduction, and conclusion are
        replaced with the mask token; the original related-work text (when the
        provider has it) is kept verbatim.
        """
        if not paper_id:
            raise IngestError("paper_id must be non-empty")
        doc = self.get_json(f"/paper/{paper_id}")
        sections = doc.get("sections") or {}
        parts = {
            "abstract": (doc.get("abstract") or "").strip(),
            "introduction": (sections.get("introduction") or "").strip(),
            "conclusion": (sections.get("conclusion") or "").strip(),
        }
        for name, text in parts.items():
            if not text:
                raise MissingSection(paper_id, name)
        related_work = sections.get("related_work")

        ref_ids = [str(r) for r in (doc.get("relatedWorkReferences") or [])]
        warnings: list[str] = []
        entries: list[CitationEntry] = []
        if ref_ids:
            with ThreadPoolExecutor(max_workers=self.config.max_in_flight) as pool:
                results = list(pool.map(self._fetch_reference, range(1, len(ref_ids) + 1), ref_ids))
            for entry, entry_warnings in results:
                entries.append(entry)
                warnings.extend(entry_warnings)

        bundle = PaperBundle(
            paper_id=str(doc.get("paperId") or paper_id),
            title=(doc.get("title") or "").strip(),
            abstract=mask_citations(parts["abstract"])[0],
            introduction=mask_citations(parts["introduction"])[0],
            related_work=related_work if related_work else None,
            conclusion=mask_citations(parts["conclusion"])[0],
            citations=entries,
        )
        return IngestResult(bundle=bundle, warnings=warnings)
