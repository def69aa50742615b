from .groupings import (
    CitationGroup,
    CitedPaperRef,
    CoverageGap,
    GroupingSet,
    SchemaError,
    UnknownCitation,
    grouping_from_dict,
    grouping_to_dict,
    parse_grouping,
    validate_spans,
)
from .backends import BackendIdentity, ChatHttpBackend, DecodingConfig, ReplayBackend, prompt_key
from .engine import (
    BudgetPolicy,
    DraftResult,
    PipelineFailed,
    RetryPolicy,
    Transcript,
    run_drafting,
    run_grouping,
)
from .prompts import render_prompt_1a, render_prompt_1b, render_prompt_2

__all__ = [
    "BackendIdentity",
    "BudgetPolicy",
    "ChatHttpBackend",
    "CitationGroup",
    "CitedPaperRef",
    "CoverageGap",
    "DecodingConfig",
    "DraftResult",
    "GroupingSet",
    "PipelineFailed",
    "ReplayBackend",
    "RetryPolicy",
    "SchemaError",
    "Transcript",
    "UnknownCitation",
    "grouping_from_dict",
    "grouping_to_dict",
    "parse_grouping",
    "prompt_key",
    "render_prompt_1a",
    "render_prompt_1b",
    "render_prompt_2",
    "run_drafting",
    "run_grouping",
    "validate_spans",
]
