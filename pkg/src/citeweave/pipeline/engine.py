"""Two-step grouping pipeline and the drafting step, against a pluggable backend.

Stage 1a groups citations from titles alone; stage 1b refines one group at a
time with abstracts (sequential per project); stage 2 drafts the section.
Malformed JSON replies are retried with an appended corrective instruction;
coverage is re-enforced after the per-group merges, and every call is recorded
in an append-only transcript.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from ..citances import extract_citation_ids
from ..corpus import WorkInProgress
from .backends import DecodingConfig, LlmBackend
from .groupings import (
    CitationGroup,
    CitedPaperRef,
    CoverageGap,
    GroupingError,
    GroupingSet,
    SchemaError,
    parse_grouping,
    validate_spans,
)
from .prompts import render_prompt_1a, render_prompt_1b, render_prompt_2

GROUPING_DECODING = DecodingConfig(temperature=0.0)
DRAFT_DECODING = DecodingConfig(temperature=0.7)

_CORRECTIVE = (
    "\n\nYour previous reply could not be used: {error}. "
    "Reply again with only the corrected JSON object, following the required structure exactly."
)


def corrective_prompt(prompt: str, error: Exception | str) -> str:
    """The retry prompt sent after a malformed reply; exposed so replay
    transcripts can be constructed ahead of time."""
    return prompt + _CORRECTIVE.format(error=error)


@dataclass(frozen=True)
class RetryPolicy:
    max_retries: int = 2


@dataclass(frozen=True)
class BudgetPolicy:
    """Character-count token estimate; keeps the engine tokenizer-agnostic."""

    chars_per_token: int = 4

    def estimate_tokens(self, prompt: str) -> int:
        return math.ceil(len(prompt) / self.chars_per_token)

    def fits(self, prompt: str, context_tokens: int) -> bool:
        return self.estimate_tokens(prompt) <= context_tokens


@dataclass
class TranscriptEntry:
    stage: str
    attempt: int
    prompt: str
    reply: str | None
    outcome: str


@dataclass
class Transcript:
    entries: list[TranscriptEntry] = field(default_factory=list)
    repairs: list[str] = field(default_factory=list)

    def log(self, stage: str, attempt: int, prompt: str, reply: str | None, outcome: str) -> None:
        self.entries.append(TranscriptEntry(stage, attempt, prompt, reply, outcome))

    def to_dict(self) -> dict:
        return {
            "entries": [
                {
                    "stage": e.stage,
                    "attempt": e.attempt,
                    "prompt": e.prompt,
                    "reply": e.reply,
                    "outcome": e.outcome,
                }
                for e in self.entries
            ],
            "repairs": list(self.repairs),
        }


class PipelineFailed(RuntimeError):
    def __init__(self, message: str, transcript: Transcript):
        self.transcript = transcript
        super().__init__(message)


def _call_and_parse(
    backend: LlmBackend,
    prompt: str,
    stage: str,
    parse,
    policy: RetryPolicy,
    transcript: Transcript,
    decoding: DecodingConfig,
):
    attempt_prompt = prompt
    for attempt in range(policy.max_retries + 1):
        try:
            reply = backend.send(attempt_prompt, decoding)
        except Exception as exc:
            transcript.log(stage, attempt, attempt_prompt, None, f"backend error: {exc}")
            raise PipelineFailed(f"stage {stage}: backend failed: {exc}", transcript) from exc
        try:
            result = parse(reply)
        except GroupingError as exc:
            transcript.log(stage, attempt, attempt_prompt, reply, f"parse error: {exc}")
            attempt_prompt = corrective_prompt(prompt, exc)
            continue
        transcript.log(stage, attempt, attempt_prompt, reply, "ok")
        return result
    raise PipelineFailed(
        f"stage {stage}: no parseable reply after {policy.max_retries} retries", transcript
    )


def _single_group(grouping: GroupingSet, expected_index: int) -> CitationGroup:
    if expected_index in grouping.groups:
        return grouping.groups[expected_index]
    if len(grouping.groups) == 1:
        return next(iter(grouping.groups.values()))
    raise SchemaError("$", f"expected a single group with index {expected_index}")


def _refine_group(
    wip: WorkInProgress,
    group: CitationGroup,
    abstracts: dict[int, str],
    backend: LlmBackend,
    policy: RetryPolicy,
    budget: BudgetPolicy,
    transcript: Transcript,
    decoding: DecodingConfig,
) -> CitationGroup:
    prompt = render_prompt_1b(wip, group, abstracts)
    if not budget.fits(prompt, backend.identity.context_tokens) and len(group.cited_papers) > 1:
        half = len(group.cited_papers) // 2
        first = CitationGroup(group.index, group.group_name, group.group_rationale,
                              group.cited_papers[:half])
        second = CitationGroup(group.index, group.group_name, group.group_rationale,
                               group.cited_papers[half:])
        transcript.repairs.append(
            f"group {group.index}: prompt over context budget; refined in two halves"
        )
        left = _refine_group(wip, first, abstracts, backend, policy, budget, transcript, decoding)
        right = _refine_group(wip, second, abstracts, backend, policy, budget, transcript, decoding)
        return CitationGroup(group.index, group.group_name, group.group_rationale,
                             left.cited_papers + right.cited_papers)

    def parse(raw: str) -> CitationGroup:
        parsed = parse_grouping(raw, set(abstracts), stage="1b", enforce_coverage=False)
        return _single_group(parsed, group.index)

    refined: CitationGroup = _call_and_parse(
        backend, prompt, f"1b[{group.index}]", parse, policy, transcript, decoding
    )
    dropped = group.cited_ids() - refined.cited_ids()
    if dropped:
        by_id = {p.id: p for p in group.cited_papers}
        for cid in sorted(dropped):
            refined.cited_papers.append(by_id[cid])
        transcript.repairs.append(
            f"group {group.index}: restored papers {sorted(dropped)} dropped by refinement"
        )
    return CitationGroup(group.index, refined.group_name, refined.group_rationale,
                         refined.cited_papers)


def run_grouping(
    wip: WorkInProgress,
    backend: LlmBackend,
    policy: RetryPolicy = RetryPolicy(),
    budget: BudgetPolicy = BudgetPolicy(),
    decoding: DecodingConfig = GROUPING_DECODING,
) -> tuple[GroupingSet, Transcript]:
    """Execute stages 1a and 1b; returns a coverage-complete GroupingSet.

    Stage 1b runs once per group, sequentially, merging results back by group
    index. Papers dropped by a refinement reply are restored (and reported in
    the transcript) so the returned set always satisfies coverage.
    """
    corpus_ids = wip.citation_ids()
    transcript = Transcript()
    prompt = render_prompt_1a(wip)
    base: GroupingSet = _call_and_parse(
        backend, prompt, "1a",
        lambda raw: parse_grouping(raw, corpus_ids, stage="1a"),
        policy, transcript, decoding,
    )
    abstracts = wip.abstracts_by_id()
    refined = GroupingSet(corpus_ids=set(corpus_ids))
    for index in sorted(base.groups):
        refined.groups[index] = _refine_group(
            wip, base.groups[index], abstracts, backend, policy, budget, transcript, decoding
        )
    gap = refined.coverage_gap()
    if gap:
        # should be unreachable given per-group restoration, but never return a gap
        titles = {c.id: c.title for c in wip.citations}
        index = min(refined.groups) if refined.groups else 1
        refined.groups.setdefault(index, CitationGroup(index, "Ungrouped", "", []))
        for cid in sorted(gap):
            refined.groups[index].cited_papers.append(CitedPaperRef(id=cid, title=titles.get(cid, "")))
        transcript.repairs.append(f"coverage repaired for {sorted(gap)}")
    span_misses = validate_spans(refined, abstracts)
    for index, cid in span_misses:
        transcript.repairs.append(
            f"group {index}: span for citation {cid} not found in its abstract (kept, warning only)"
        )
    return refined, transcript


@dataclass
class DraftResult:
    text: str
    paragraph_count: int
    group_count: int
    cited_ids: set[int]
    hallucinated_ids: set[int]
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "text": self.text,
            "paragraph_count": self.paragraph_count,
            "group_count": self.group_count,
            "cited_ids": sorted(self.cited_ids),
            "hallucinated_ids": sorted(self.hallucinated_ids),
            "warnings": list(self.warnings),
        }


def run_drafting(
    wip: WorkInProgress,
    grouping: GroupingSet,
    backend: LlmBackend,
    policy: RetryPolicy = RetryPolicy(),
    decoding: DecodingConfig = DRAFT_DECODING,
) -> tuple[DraftResult, Transcript]:
    """Stage 2: draft the section from the groupings; annotate, don't reject.

    Paragraph-count mismatch and citations outside the groups are warnings in
    the validation annex (generation is not controllable), never errors.
    """
    gap = grouping.coverage_gap()
    if gap:
        raise CoverageGap(gap)
    transcript = Transcript()
    prompt = render_prompt_2(wip, grouping)
    try:
        text = backend.send(prompt, decoding)
    except Exception as exc:
        transcript.log("2", 0, prompt, None, f"backend error: {exc}")
        raise PipelineFailed(f"stage 2: backend failed: {exc}", transcript) from exc
    transcript.log("2", 0, prompt, text, "ok")

    paragraphs = [p for p in re.split(r"\n\s*\n", text) if p.strip()]
    cited = extract_citation_ids(text)
    hallucinated = cited - grouping.covered_ids()
    warnings: list[str] = []
    if len(paragraphs) != len(grouping.groups):
        warnings.append(
            f"ParagraphMismatch: {len(paragraphs)} paragraphs for {len(grouping.groups)} groups"
        )
    if hallucinated:
        warnings.append(f"Hallucination: draft cites unknown ids {sorted(hallucinated)}")
    result = DraftResult(
        text=text,
        paragraph_count=len(paragraphs),
        group_count=len(grouping.groups),
        cited_ids=cited,
        hallucinated_ids=hallucinated,
        warnings=warnings,
    )
    return result, transcript
