"""Paper bundles: corpus data model, citation masking, redaction, and JSON persistence."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, asdict
from pathlib import Path

import jsonschema

MASK_TOKEN = "CITATION"


class CorpusError(Exception):
    pass


class SchemaViolation(CorpusError):
    """A corpus file failed validation; ``path`` is the JSON path of the first violation."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass
class CitationEntry:
    id: int
    title: str
    abstract: str = ""
    authors: list[str] = field(default_factory=list)
    year: int = 0
    url: str = ""


@dataclass
class PaperBundle:
    paper_id: str
    title: str
    abstract: str
    introduction: str
    related_work: str | None
    conclusion: str
    citations: list[CitationEntry] = field(default_factory=list)

    def citation_ids(self) -> set[int]:
        return {c.id for c in self.citations}

    def abstracts_by_id(self) -> dict[int, str]:
        return {c.id: c.abstract for c in self.citations}


@dataclass
class WorkInProgress:
    """A bundle with the related-work section withheld; the generation input."""

    paper_id: str
    title: str
    abstract: str
    introduction: str
    conclusion: str
    citations: list[CitationEntry] = field(default_factory=list)

    def citation_ids(self) -> set[int]:
        return {c.id for c in self.citations}

    def abstracts_by_id(self) -> dict[int, str]:
        return {c.id: c.abstract for c in self.citations}


def redact(bundle: PaperBundle) -> WorkInProgress:
    """Project a bundle onto its work-in-progress view (drop the related-work text)."""
    if not isinstance(bundle, PaperBundle):
        raise TypeError(f"redact takes a PaperBundle, not {type(bundle).__name__}")
    return WorkInProgress(
        paper_id=bundle.paper_id,
        title=bundle.title,
        abstract=bundle.abstract,
        introduction=bundle.introduction,
        conclusion=bundle.conclusion,
        citations=list(bundle.citations),
    )


# --- citation masking -------------------------------------------------------
#
# Recognized in-text citation shapes:
#   [3]                          bare bracketed numeral
#   ([11]; [12])  ([13], [14])   parenthesized group of bracketed numerals
#   (Name, 2021)                 author-year
#   (Name et al., 2021)          author-year with et al.
# A parenthesized run of author-year items separated by semicolons is masked
# as one group, same as the bracketed-group rule.

_BRACKET = r"\[\d+\]"
_BRACKET_GROUP = rf"\(\s*{_BRACKET}(?:\s*[;,]\s*{_BRACKET})*\s*\)"
_NAME = r"[A-Z][\w.'’-]*(?:\s+(?:and|&)\s+[A-Z][\w.'’-]*)?"
_AY_ITEM = rf"{_NAME}(?:\s+et al\.)?,\s*\d{{4}}[a-z]?"
_AY_GROUP = rf"\(\s*{_AY_ITEM}(?:\s*;\s*{_AY_ITEM})*\s*\)"

_CITATION_RE = re.compile("|".join([_BRACKET_GROUP, _BRACKET, _AY_GROUP]))

# (offset, length, original) in coordinates of the unmasked text
Span = tuple[int, int, str]


def mask_citations(text: str) -> tuple[str, list[Span]]:
    """Replace every recognized in-text citation with the mask token.

    Returns the masked text and the removed spans (offset, length, original),
    offsets in the input's coordinates. Unrecognized citation styles are left
    untouched; masking already-masked text is a no-op.
    """
    out: list[str] = []
    spans: list[Span] = []
    pos = 0
    for m in _CITATION_RE.finditer(text):
        out.append(text[pos : m.start()])
        out.append(MASK_TOKEN)
        spans.append((m.start(), m.end() - m.start(), m.group(0)))
        pos = m.end()
    out.append(text[pos:])
    return "".join(out), spans


def restore_citations(masked: str, spans: list[Span]) -> str:
    """Inverse of :func:`mask_citations`; splices the originals back in."""
    out: list[str] = []
    mpos = 0
    delta = 0  # cumulative length change ahead of the next span
    for offset, length, original in spans:
        start_in_masked = offset + delta
        out.append(masked[mpos:start_in_masked])
        out.append(original)
        mpos = start_in_masked + len(MASK_TOKEN)
        delta += len(MASK_TOKEN) - length
    out.append(masked[mpos:])
    return "".join(out)


# --- persistence ------------------------------------------------------------

_CITATION_SCHEMA = {
    "type": "object",
    "required": ["id", "title", "abstract", "authors", "year", "url"],
    "properties": {
        "id": {"type": "integer", "minimum": 1},
        "title": {"type": "string", "minLength": 1},
        "abstract": {"type": "string"},
        "authors": {"type": "array", "items": {"type": "string"}},
        "year": {"type": "integer"},
        "url": {"type": "string"},
    },
    "additionalProperties": False,
}

CORPUS_SCHEMA = {
    "type": "object",
    "required": [
        "paper_id",
        "title",
        "abstract",
        "introduction",
        "related_work",
        "conclusion",
        "citations",
    ],
    "properties": {
        "paper_id": {"type": "string", "minLength": 1},
        "title": {"type": "string"},
        "abstract": {"type": "string"},
        "introduction": {"type": "string"},
        "related_work": {"type": ["string", "null"]},
        "conclusion": {"type": "string"},
        "citations": {"type": "array", "items": _CITATION_SCHEMA},
    },
    "additionalProperties": False,
}

_validator = jsonschema.Draft202012Validator(CORPUS_SCHEMA)

_REQUIRED_MSG = re.compile(r"'(.*?)' is a required property")


def _first_violation(doc) -> SchemaViolation | None:
    errors = sorted(_validator.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    if not errors:
        return None
    err = errors[0]
    path = err.json_path
    if err.validator == "required":
        m = _REQUIRED_MSG.search(err.message)
        if m:
            path = f"{path}.{m.group(1)}" if path != "$" else f"$.{m.group(1)}"
    return SchemaViolation(path, err.message)


def validate_bundle_dict(doc) -> None:
    """Raise SchemaViolation on the first problem with a corpus JSON document."""
    violation = _first_violation(doc)
    if violation is not None:
        raise violation
    seen: set[int] = set()
    for i, cit in enumerate(doc["citations"]):
        if cit["id"] in seen:
            raise SchemaViolation(f"$.citations[{i}].id", f"duplicate citation id {cit['id']}")
        seen.add(cit["id"])


def bundle_to_dict(bundle: PaperBundle) -> dict:
    return asdict(bundle)


def bundle_from_dict(doc: dict) -> PaperBundle:
    validate_bundle_dict(doc)
    citations = [CitationEntry(**c) for c in doc["citations"]]
    return PaperBundle(
        paper_id=doc["paper_id"],
        title=doc["title"],
        abstract=doc["abstract"],
        introduction=doc["introduction"],
        related_work=doc["related_work"],
        conclusion=doc["conclusion"],
        citations=citations,
    )


def store_bundle(bundle: PaperBundle, path: str | Path) -> Path:
    """Write a bundle as corpus JSON (UTF-8, no BOM); atomic replace-on-write."""
    path = Path(path)
    doc = bundle_to_dict(bundle)
    validate_bundle_dict(doc)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(doc, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
    tmp.replace(path)
    return path


def load_bundle(path: str | Path) -> PaperBundle:
    raw = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaViolation("$", f"not valid JSON: {exc}") from exc
    return bundle_from_dict(doc)


def wip_to_dict(wip: WorkInProgress) -> dict:
    return asdict(wip)


def wip_from_dict(doc: dict) -> WorkInProgress:
    citations = [CitationEntry(**c) for c in doc.get("citations", [])]
    return WorkInProgress(
        paper_id=doc["paper_id"],
        title=doc["title"],
        abstract=doc["abstract"],
        introduction=doc["introduction"],
        conclusion=doc["conclusion"],
        citations=citations,
    )


def store_wip(wip: WorkInProgress, path: str | Path) -> Path:
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(wip_to_dict(wip), ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
    tmp.replace(path)
    return path


def load_wip(path: str | Path) -> WorkInProgress:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if "related_work" in doc:
        doc = dict(doc)
        doc.pop("related_work")
    return wip_from_dict(doc)
