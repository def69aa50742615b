import json
from pathlib import Path

import pytest

from citeweave.corpus import CitationEntry, PaperBundle, redact
from citeweave.pipeline.backends import ReplayBackend, prompt_key

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def fixture_bundle() -> PaperBundle:
    return PaperBundle(
        paper_id="fixture-01",
        title="Adaptive Evidence Retrieval for Long-Form Question Answering",
        abstract="We present a gating policy that decides when a generator should consult external evidence.",
        introduction="Long-form answers often require evidence beyond the model's parameters. We introduce a retrieval gate.",
        related_work="Retrieval helps generation [1]. Faithfulness needs measurement [2].",
        conclusion="Gated retrieval improves faithfulness without hurting fluency.",
        citations=[
            CitationEntry(
                id=1,
                title="Dense Passage Retrieval for Open-Domain Question Answering",
                abstract="Dense representations retrieve passages better than sparse baselines in open-domain question answering.",
                authors=["A. Researcher"],
                year=2020,
                url="https://example.org/dpr",
            ),
            CitationEntry(
                id=2,
                title="Measuring Faithfulness in Long-Form Generation",
                abstract="We propose metrics that quantify whether generated statements are supported by cited evidence.",
                authors=["B. Researcher", "C. Researcher"],
                year=2022,
                url="https://example.org/faithfulness",
            ),
        ],
    )


@pytest.fixture
def fixture_wip(fixture_bundle):
    return redact(fixture_bundle)


def load_golden(name: str) -> str:
    return (DATA_DIR / "golden" / name).read_text(encoding="utf-8")


def make_replay(prompt_to_reply: dict[str, str]) -> ReplayBackend:
    return ReplayBackend({prompt_key(p): r for p, r in prompt_to_reply.items()})


def load_json(name: str):
    return json.loads((DATA_DIR / name).read_text(encoding="utf-8"))
