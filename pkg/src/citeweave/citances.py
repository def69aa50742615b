"""Sentence segmentation and citation-marker extraction for related-work texts.

The segmenter is rule-based and deterministic: a fixed abbreviation list
(shipped as a data file) protects periods that do not end sentences, and a
lookahead requires the next sentence to start with a plausible opener. This
keeps the downstream graph metrics reproducible bit-for-bit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

_BRACKET_ID_RE = re.compile(r"\[(\d+)\]")

# end punctuation, optional closing quotes/brackets, then whitespace or EOS
_BOUNDARY_RE = re.compile(r"([.?!]+)([\"'”’)\]]*)(\s+|$)")
# something a sentence can start with
_OPENER_RE = re.compile(r"[A-Z0-9\"'“(\[]")
_LAST_TOKEN_RE = re.compile(r"(\S+)$")


def load_abbreviations(path: str | Path | None = None) -> frozenset[str]:
    """Load the abbreviation list (one token per line, UTF-8).

    Entries are normalized to lowercase with the trailing period stripped, so
    "Fig." protects both "Fig." and "fig."
    """
    if path is None:
        text = resources.files("citeweave.data").joinpath("abbreviations.txt").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    entries = set()
    for line in text.splitlines():
        token = line.strip()
        if not token or token.startswith("#"):
            continue
        entries.add(token.rstrip(".").lower())
    return frozenset(entries)


_DEFAULT_ABBREVIATIONS = load_abbreviations()


def _is_abbreviation(prefix: str, abbreviations: frozenset[str]) -> bool:
    m = _LAST_TOKEN_RE.search(prefix)
    if not m:
        return False
    token = m.group(1).lstrip("([\"'“")
    return token.lower() in abbreviations


def segment_sentences(text: str, abbreviations: frozenset[str] | None = None) -> list[str]:
    """Split prose into ordered, non-overlapping sentences covering the input.

    A terminal fragment without end punctuation is returned as its own
    sentence. Empty input yields an empty list.
    """
    if abbreviations is None:
        abbreviations = _DEFAULT_ABBREVIATIONS
    sentences: list[str] = []
    start = 0
    for m in _BOUNDARY_RE.finditer(text):
        end = m.start() + len(m.group(1)) + len(m.group(2))
        at_eos = m.end() == len(text) and m.group(3) == ""
        if not at_eos:
            rest = text[m.end() :]
            if not rest or not _OPENER_RE.match(rest):
                continue
        if m.group(1).endswith(".") and _is_abbreviation(text[: m.start()], abbreviations):
            continue
        chunk = text[start:end].strip()
        if chunk:
            sentences.append(chunk)
        start = end
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def extract_citation_ids(sentence: str) -> set[int]:
    """Every distinct integer n appearing as a bracketed marker "[n]".

    Grouped forms like "([11]; [12])" contribute each member; ranges are not
    expanded ("[1]-[3]" yields {1, 3}); malformed brackets are ignored.
    """
    return {int(m.group(1)) for m in _BRACKET_ID_RE.finditer(sentence)}


@dataclass
class Citance:
    """One sentence plus the set of citation ids it mentions."""

    index: int
    text: str
    citation_ids: set[int] = field(default_factory=set)


@dataclass
class ParsedSection:
    citances: list[Citance] = field(default_factory=list)
    unknown_ids: set[int] = field(default_factory=set)

    def cited_ids(self) -> set[int]:
        ids: set[int] = set()
        for citance in self.citances:
            ids |= citance.citation_ids
        return ids


def parse_section(
    text: str,
    known_ids: set[int],
    abbreviations: frozenset[str] | None = None,
) -> ParsedSection:
    """Segment a text and attach per-sentence citation sets.

    Markers not in ``known_ids`` are routed to ``unknown_ids`` and excluded
    from the citances (generated text may cite ids the corpus lacks).
    """
    section = ParsedSection()
    for index, sentence in enumerate(segment_sentences(text, abbreviations)):
        found = extract_citation_ids(sentence)
        section.unknown_ids |= found - known_ids
        section.citances.append(Citance(index=index, text=sentence, citation_ids=found & known_ids))
    return section


def citances_to_dicts(section: ParsedSection) -> list[dict]:
    return [
        {"index": c.index, "text": c.text, "citation_ids": sorted(c.citation_ids)}
        for c in section.citances
    ]


def citances_from_dicts(rows: list[dict]) -> list[Citance]:
    return [
        Citance(index=row["index"], text=row["text"], citation_ids=set(row["citation_ids"]))
        for row in rows
    ]
