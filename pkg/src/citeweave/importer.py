"""Import externally obtained per-paper condition texts into the corpus layout.

Input is one JSON file holding a list of records:

    {
      "paper_id": "...", "title": "...",
      "abstract": "...", "introduction": "...", "conclusion": "...",
      "citations": [{"id": 1, "title": "...", ...}, ...],
      "texts": {"human": "...", "assisted": "...", "generated": "..."}
    }

Only paper_id, citations, and at least one condition text are required; the
human text doubles as the bundle's related-work section. The output directory
is ready for `evaluate --corpus`.
"""

from __future__ import annotations

import json
from pathlib import Path

from .corpus import CitationEntry, PaperBundle, SchemaViolation, store_bundle

KNOWN_CONDITIONS = ("human", "assisted", "generated")


def import_condition_corpus(source: str | Path, out_dir: str | Path) -> list[str]:
    """Write one corpus directory per record; returns the imported paper ids."""
    records = json.loads(Path(source).read_text(encoding="utf-8"))
    if not isinstance(records, list):
        raise SchemaViolation("$", "import file must hold a list of paper records")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    imported: list[str] = []
    for i, record in enumerate(records):
        if not isinstance(record, dict) or not record.get("paper_id"):
            raise SchemaViolation(f"$[{i}].paper_id", "paper_id is required")
        texts = record.get("texts") or {}
        known = {k: v for k, v in texts.items() if k in KNOWN_CONDITIONS and v}
        if not known:
            raise SchemaViolation(f"$[{i}].texts", "at least one condition text is required")
        citations = []
        for j, cit in enumerate(record.get("citations") or []):
            if "id" not in cit or "title" not in cit:
                raise SchemaViolation(f"$[{i}].citations[{j}]", "citations need id and title")
            citations.append(
                CitationEntry(
                    id=int(cit["id"]),
                    title=str(cit["title"]),
                    abstract=str(cit.get("abstract") or ""),
                    authors=[str(a) for a in cit.get("authors") or []],
                    year=int(cit.get("year") or 0),
                    url=str(cit.get("url") or ""),
                )
            )
        paper_id = str(record["paper_id"])
        bundle = PaperBundle(
            paper_id=paper_id,
            title=str(record.get("title") or paper_id),
            abstract=str(record.get("abstract") or ""),
            introduction=str(record.get("introduction") or ""),
            related_work=known.get("human"),
            conclusion=str(record.get("conclusion") or ""),
            citations=citations,
        )
        pdir = out_dir / paper_id
        pdir.mkdir(exist_ok=True)
        store_bundle(bundle, pdir / "bundle.json")
        for condition, text in known.items():
            (pdir / f"{condition}.txt").write_text(text, encoding="utf-8")
        imported.append(paper_id)
    return imported
