"""citeweave: citation grouping, related-work drafting, and citation-graph evaluation."""

from .citances import Citance, ParsedSection, extract_citation_ids, parse_section, segment_sentences
from .corpus import (
    CitationEntry,
    MASK_TOKEN,
    PaperBundle,
    SchemaViolation,
    WorkInProgress,
    load_bundle,
    mask_citations,
    redact,
    restore_citations,
    store_bundle,
)
from .graph import CitationGraph, GraphMetrics, build_graph, color_for_id, compute_metrics
from .stats import Sample, StatReport, UTestResult, compare_conditions, holm_bonferroni, mann_whitney

__version__ = "0.1.0"

__all__ = [
    "Citance",
    "CitationEntry",
    "CitationGraph",
    "GraphMetrics",
    "MASK_TOKEN",
    "PaperBundle",
    "ParsedSection",
    "Sample",
    "SchemaViolation",
    "StatReport",
    "UTestResult",
    "WorkInProgress",
    "build_graph",
    "color_for_id",
    "compare_conditions",
    "compute_metrics",
    "extract_citation_ids",
    "holm_bonferroni",
    "load_bundle",
    "mann_whitney",
    "mask_citations",
    "parse_section",
    "redact",
    "restore_citations",
    "segment_sentences",
    "store_bundle",
]
