from .evaluate import (
    ConditionAnalysis,
    EvaluationRun,
    PaperConditions,
    evaluate_corpus,
    format_summary_table,
    load_corpus_dir,
    write_outputs,
)
from .store import ProjectStore, StorageConflict

__all__ = [
    "ConditionAnalysis",
    "EvaluationRun",
    "PaperConditions",
    "ProjectStore",
    "StorageConflict",
    "evaluate_corpus",
    "format_summary_table",
    "load_corpus_dir",
    "write_outputs",
]
