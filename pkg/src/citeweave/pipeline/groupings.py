"""Citation grouping data model plus strict parsing of model replies.

The interchange JSON keys group indices as strings and citation ids as
strings ({"1": {"group_name": ..., "cited_papers": [{"id": "3", ...}]}});
in memory both are integers.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field


class GroupingError(Exception):
    pass


class SchemaError(GroupingError):
    """Reply violates the stage schema; ``path`` is the JSON path of the first violation."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class UnknownCitation(GroupingError):
    def __init__(self, ids: set[int]):
        self.ids = set(ids)
        super().__init__(f"grouping cites unknown ids {sorted(ids)}")


class CoverageGap(GroupingError):
    def __init__(self, uncovered: set[int]):
        self.uncovered = set(uncovered)
        super().__init__(f"citations not placed in any group: {sorted(uncovered)}")


@dataclass
class CitedPaperRef:
    id: int
    title: str
    citation_rationale: str | None = None
    span: str | None = None


@dataclass
class CitationGroup:
    index: int
    group_name: str
    group_rationale: str
    cited_papers: list[CitedPaperRef] = field(default_factory=list)

    def cited_ids(self) -> set[int]:
        return {p.id for p in self.cited_papers}


@dataclass
class GroupingSet:
    groups: dict[int, CitationGroup] = field(default_factory=dict)
    corpus_ids: set[int] = field(default_factory=set)

    def covered_ids(self) -> set[int]:
        ids: set[int] = set()
        for group in self.groups.values():
            ids |= group.cited_ids()
        return ids

    def coverage_gap(self) -> set[int]:
        return self.corpus_ids - self.covered_ids()


def _coerce_int(value, path: str) -> int:
    if isinstance(value, bool):
        raise SchemaError(path, f"expected an integer id, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and value.strip().isdigit():
        return int(value.strip())
    raise SchemaError(path, f"expected an integer id, got {value!r}")


def _require_str(obj: dict, key: str, path: str, allow_empty: bool = False) -> str:
    if key not in obj:
        raise SchemaError(f"{path}.{key}", f"missing required key {key!r}")
    value = obj[key]
    if not isinstance(value, str):
        raise SchemaError(f"{path}.{key}", f"expected a string, got {type(value).__name__}")
    if not allow_empty and not value.strip():
        raise SchemaError(f"{path}.{key}", "must be non-empty")
    return value


_FENCE_RE = re.compile(r"^```[a-zA-Z]*\s*$", re.MULTILINE)


def extract_json_object(raw: str) -> dict:
    """Pull the JSON object out of a reply that may carry prose or code fences."""
    cleaned = _FENCE_RE.sub("", raw)
    start = cleaned.find("{")
    end = cleaned.rfind("}")
    if start == -1 or end == -1 or end < start:
        raise SchemaError("$", "reply contains no JSON object")
    try:
        doc = json.loads(cleaned[start : end + 1])
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"reply is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("$", "top level must be a JSON object")
    return doc


def parse_grouping(
    raw: str,
    corpus_ids: set[int],
    stage: str = "1a",
    enforce_coverage: bool = True,
) -> GroupingSet:
    """Validate a grouping reply against the stage schema and invariants.

    Stage "1b" additionally requires citation_rationale and span per paper.
    Raises SchemaError / UnknownCitation / CoverageGap; span-vs-abstract
    checking is a separate, warning-level pass (see validate_spans).
    """
    if stage not in ("1a", "1b"):
        raise ValueError(f"unknown stage {stage!r}")
    doc = extract_json_object(raw)
    if not doc:
        raise SchemaError("$", "no citation groups in reply")

    grouping = GroupingSet(corpus_ids=set(corpus_ids))
    unknown: set[int] = set()
    for key in doc:
        path = f"$.{key}"
        index = _coerce_int(key, path)
        body = doc[key]
        if not isinstance(body, dict):
            raise SchemaError(path, "group must be an object")
        name = _require_str(body, "group_name", path)
        rationale = _require_str(body, "group_rationale", path, allow_empty=True)
        if "cited_papers" not in body:
            raise SchemaError(f"{path}.cited_papers", "missing required key 'cited_papers'")
        papers_doc = body["cited_papers"]
        if not isinstance(papers_doc, list) or not papers_doc:
            raise SchemaError(f"{path}.cited_papers", "must be a non-empty list")
        papers: list[CitedPaperRef] = []
        for i, entry in enumerate(papers_doc):
            entry_path = f"{path}.cited_papers[{i}]"
            if not isinstance(entry, dict):
                raise SchemaError(entry_path, "cited paper must be an object")
            if "id" not in entry:
                raise SchemaError(f"{entry_path}.id", "missing required key 'id'")
            cid = _coerce_int(entry["id"], f"{entry_path}.id")
            title = _require_str(entry, "title", entry_path, allow_empty=True)
            if stage == "1b":
                rationale_text = _require_str(entry, "citation_rationale", entry_path, allow_empty=True)
                span = _require_str(entry, "span", entry_path, allow_empty=True)
            else:
                rationale_text = entry.get("citation_rationale")
                span = entry.get("span")
                if rationale_text is not None and not isinstance(rationale_text, str):
                    raise SchemaError(f"{entry_path}.citation_rationale", "expected a string")
                if span is not None and not isinstance(span, str):
                    raise SchemaError(f"{entry_path}.span", "expected a string")
            if cid not in corpus_ids:
                unknown.add(cid)
            papers.append(
                CitedPaperRef(id=cid, title=title, citation_rationale=rationale_text, span=span)
            )
        grouping.groups[index] = CitationGroup(
            index=index, group_name=name, group_rationale=rationale, cited_papers=papers
        )

    if unknown:
        raise UnknownCitation(unknown)
    if enforce_coverage:
        gap = grouping.coverage_gap()
        if gap:
            raise CoverageGap(gap)
    return grouping


_WS_RE = re.compile(r"\s+")


def _normalize_ws(text: str) -> str:
    return _WS_RE.sub(" ", text).strip().lower()


def validate_spans(grouping: GroupingSet, abstracts: dict[int, str]) -> list[tuple[int, int]]:
    """Return (group_index, citation_id) pairs whose span is not found in the
    cited work's abstract (whitespace-normalized, case-insensitive).

    Warning-level: models paraphrase; failing the pipeline over it would stall
    drafting.
    """
    missing: list[tuple[int, int]] = []
    for index, group in grouping.groups.items():
        for paper in group.cited_papers:
            if paper.span is None:
                continue
            abstract = abstracts.get(paper.id, "")
            if not abstract or _normalize_ws(paper.span) not in _normalize_ws(abstract):
                missing.append((index, paper.id))
    return missing


def grouping_to_dict(grouping: GroupingSet) -> dict:
    """Interchange form: string group keys, string ids, prompt-exemplar key order."""
    doc: dict[str, dict] = {}
    for index in sorted(grouping.groups):
        group = grouping.groups[index]
        papers = []
        for paper in group.cited_papers:
            entry: dict[str, str] = {"id": str(paper.id), "title": paper.title}
            if paper.citation_rationale is not None:
                entry["citation_rationale"] = paper.citation_rationale
            if paper.span is not None:
                entry["span"] = paper.span
            papers.append(entry)
        doc[str(index)] = {
            "group_name": group.group_name,
            "group_rationale": group.group_rationale,
            "cited_papers": papers,
        }
    return doc


def grouping_from_dict(doc: dict, corpus_ids: set[int], enforce_coverage: bool = True) -> GroupingSet:
    # lenient stage: rationale/span are picked up when present, never required
    return parse_grouping(json.dumps(doc), corpus_ids, stage="1a", enforce_coverage=enforce_coverage)


def grouping_to_json(grouping: GroupingSet) -> str:
    return json.dumps(grouping_to_dict(grouping), ensure_ascii=False, indent=2)
