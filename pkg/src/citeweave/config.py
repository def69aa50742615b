"""Run configuration shared by the API and CLI evaluation paths."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path

UNIVERSE_TEXT = "text"       # nodes = citations appearing in the analyzed text
UNIVERSE_BUNDLE = "bundle"   # nodes = every citation in the bundle's list


@dataclass(frozen=True)
class EvaluationConfig:
    universe: str = UNIVERSE_TEXT
    clustering: str = "local"          # or "global" (transitivity)
    low_degree: str = "zero"           # degree-<2 nodes count as 0, or "exclude"
    holm_family: str = "per-metric"    # or "global"

    def validate(self) -> "EvaluationConfig":
        if self.universe not in (UNIVERSE_TEXT, UNIVERSE_BUNDLE):
            raise ValueError(f"universe must be 'text' or 'bundle', got {self.universe!r}")
        if self.clustering not in ("local", "global"):
            raise ValueError(f"clustering must be 'local' or 'global', got {self.clustering!r}")
        if self.low_degree not in ("zero", "exclude"):
            raise ValueError(f"low_degree must be 'zero' or 'exclude', got {self.low_degree!r}")
        if self.holm_family not in ("per-metric", "global"):
            raise ValueError(f"holm_family must be 'per-metric' or 'global', got {self.holm_family!r}")
        return self

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, doc: dict) -> "EvaluationConfig":
        known = {f: doc[f] for f in ("universe", "clustering", "low_degree", "holm_family") if f in doc}
        return cls(**known).validate()

    @classmethod
    def from_file(cls, path: str | Path) -> "EvaluationConfig":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
