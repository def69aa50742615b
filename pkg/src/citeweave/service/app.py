"""HTTP workbench: project lifecycle, pipeline triggers, and evaluation."""

from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from ..config import EvaluationConfig
from ..corpus import SchemaViolation, bundle_from_dict, redact
from ..graph import export_dot, export_edge_csv, palette_for
from ..pipeline.backends import DecodingConfig, LlmBackend
from ..pipeline.engine import (
    DRAFT_DECODING,
    GROUPING_DECODING,
    PipelineFailed,
    run_drafting,
    run_grouping,
)
from ..pipeline.groupings import CoverageGap, GroupingError, grouping_from_dict, grouping_to_dict
from ..stats import MissingCondition
from .evaluate import CONDITIONS, PaperConditions, evaluate_corpus
from .store import ProjectExists, ProjectNotFound, ProjectStore, StorageConflict

MAX_SYNC_PROJECTS = 10


class CreateProjectBody(BaseModel):
    paper_id: str | None = None
    bundle: dict | None = None


class PutGroupingsBody(BaseModel):
    groupings: dict
    version: int


class PutDraftBody(BaseModel):
    text: str
    version: int


class ConditionBody(BaseModel):
    text: str


class EvaluateBody(BaseModel):
    project_ids: list[str]
    config: dict | None = None


def create_app(
    store: ProjectStore,
    backend: LlmBackend | None = None,
    api_client=None,
    default_config: EvaluationConfig | None = None,
    grouping_decoding: DecodingConfig = GROUPING_DECODING,
    draft_decoding: DecodingConfig = DRAFT_DECODING,
) -> FastAPI:
    app = FastAPI(title="citeweave workbench")
    config_defaults = default_config or EvaluationConfig()

    def _project_or_404(project_id: str):
        try:
            return store.get_project(project_id)
        except ProjectNotFound:
            raise HTTPException(status_code=404, detail=f"unknown project {project_id!r}")

    def _backend_or_503() -> LlmBackend:
        if backend is None:
            raise HTTPException(status_code=503, detail="no generation backend configured")
        return backend

    @app.post("/projects", status_code=201)
    def create_project(body: CreateProjectBody):
        if body.bundle is not None:
            try:
                bundle = bundle_from_dict(body.bundle)
            except SchemaViolation as exc:
                raise HTTPException(status_code=422, detail={"path": exc.path, "message": str(exc)})
        elif body.paper_id:
            if api_client is None:
                raise HTTPException(status_code=422, detail="ingestion is not configured; POST a bundle")
            bundle = api_client.fetch_paper(body.paper_id).bundle
        else:
            raise HTTPException(status_code=422, detail="provide either paper_id or bundle")
        try:
            project = store.create_project(bundle)
        except ProjectExists:
            raise HTTPException(status_code=409, detail=f"project {bundle.paper_id!r} already exists")
        return {"project_id": project.project_id}

    @app.get("/projects/{project_id}")
    def get_project(project_id: str):
        return _project_or_404(project_id).to_dict()

    @app.post("/projects/{project_id}/groupings:generate")
    def generate_groupings(project_id: str):
        project = _project_or_404(project_id)
        llm = _backend_or_503()
        if not store.begin_pipeline(project_id):
            raise HTTPException(status_code=409, detail="a pipeline is already in flight")
        try:
            grouping, transcript = run_grouping(
                redact(project.bundle), llm, decoding=grouping_decoding
            )
            version = store.put_groupings(project_id, grouping, project.groupings_version)
        except PipelineFailed as exc:
            raise HTTPException(status_code=502, detail=str(exc))
        except StorageConflict as exc:
            raise HTTPException(status_code=409, detail={"current_version": exc.current})
        finally:
            store.end_pipeline(project_id)
        return {
            "groupings": grouping_to_dict(grouping),
            "version": version,
            "repairs": transcript.repairs,
        }

    @app.get("/projects/{project_id}/groupings")
    def get_groupings(project_id: str):
        project = _project_or_404(project_id)
        if project.groupings is None:
            raise HTTPException(status_code=404, detail="no groupings yet")
        return {"groupings": grouping_to_dict(project.groupings), "version": project.groupings_version}

    @app.put("/projects/{project_id}/groupings")
    def put_groupings(project_id: str, body: PutGroupingsBody):
        project = _project_or_404(project_id)
        try:
            grouping = grouping_from_dict(body.groupings, project.bundle.citation_ids())
        except CoverageGap as exc:
            return JSONResponse(
                status_code=422,
                content={"detail": {"error": "CoverageGap", "uncovered": sorted(exc.uncovered)}},
            )
        except GroupingError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        try:
            version = store.put_groupings(project_id, grouping, body.version)
        except StorageConflict as exc:
            return JSONResponse(
                status_code=409,
                content={"detail": {"error": "StorageConflict", "current_version": exc.current}},
            )
        return {"version": version}

    @app.post("/projects/{project_id}/draft:generate")
    def generate_draft(project_id: str):
        project = _project_or_404(project_id)
        llm = _backend_or_503()
        if project.groupings is None:
            raise HTTPException(status_code=422, detail="no groupings to draft from")
        gap = project.groupings.coverage_gap()
        if gap:
            return JSONResponse(
                status_code=422,
                content={"detail": {"error": "CoverageGap", "uncovered": sorted(gap)}},
            )
        if not store.begin_pipeline(project_id):
            raise HTTPException(status_code=409, detail="a pipeline is already in flight")
        try:
            result, _ = run_drafting(
                redact(project.bundle), project.groupings, llm, decoding=draft_decoding
            )
            version = store.put_draft(project_id, result.text, project.drafts_version)
        except PipelineFailed as exc:
            raise HTTPException(status_code=502, detail=str(exc))
        except StorageConflict as exc:
            raise HTTPException(status_code=409, detail={"current_version": exc.current})
        finally:
            store.end_pipeline(project_id)
        return {"draft": result.to_dict(), "version": version}

    @app.put("/projects/{project_id}/draft")
    def put_draft(project_id: str, body: PutDraftBody):
        _project_or_404(project_id)
        try:
            version = store.put_draft(project_id, body.text, body.version)
        except StorageConflict as exc:
            return JSONResponse(
                status_code=409,
                content={"detail": {"error": "StorageConflict", "current_version": exc.current}},
            )
        return {"version": version}

    @app.post("/projects/{project_id}/conditions/{name}")
    def set_condition(project_id: str, name: str, body: ConditionBody):
        project = _project_or_404(project_id)
        if name not in CONDITIONS:
            raise HTTPException(
                status_code=422, detail=f"condition must be one of {list(CONDITIONS)}"
            )
        if (
            name == "human"
            and project.bundle.related_work
            and body.text != project.bundle.related_work
        ):
            raise HTTPException(
                status_code=422,
                detail="the human condition must equal the bundle's related-work text",
            )
        store.set_condition(project_id, name, body.text)
        return {"condition": name, "length": len(body.text)}

    @app.post("/evaluations")
    def evaluate(body: EvaluateBody):
        if not body.project_ids:
            raise HTTPException(status_code=422, detail="project_ids must be non-empty")
        if len(body.project_ids) > MAX_SYNC_PROJECTS:
            raise HTTPException(
                status_code=422,
                detail=f"synchronous evaluation is capped at {MAX_SYNC_PROJECTS} projects",
            )
        try:
            config = EvaluationConfig.from_dict(body.config or config_defaults.to_dict())
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        items = []
        for project_id in body.project_ids:
            project = _project_or_404(project_id)
            items.append(
                PaperConditions(
                    paper_id=project.project_id,
                    bundle=project.bundle,
                    texts=dict(project.condition_texts),
                )
            )
        try:
            run = evaluate_corpus(items, config)
        except MissingCondition as exc:
            raise HTTPException(
                status_code=422,
                detail={"error": "MissingCondition", "paper": exc.paper, "condition": exc.condition},
            )
        run_doc = run.to_dict()
        store.record_evaluation(run_doc)
        _write_figures(store, run)
        return run_doc

    @app.get("/evaluations/{run_id}")
    def get_evaluation(run_id: str):
        try:
            return store.get_evaluation(run_id)
        except ProjectNotFound:
            raise HTTPException(status_code=404, detail=f"unknown evaluation {run_id!r}")

    @app.get("/evaluations/{run_id}/figures")
    def get_figures(run_id: str):
        fig_dir = store.root / "evaluations" / run_id / "figures"
        if not fig_dir.exists():
            raise HTTPException(status_code=404, detail=f"unknown evaluation {run_id!r}")
        figures: dict[str, dict[str, dict[str, str]]] = {}
        for path in sorted(fig_dir.glob("*.dot")):
            paper, condition = path.stem.rsplit("__", 1)
            entry = figures.setdefault(paper, {}).setdefault(condition, {})
            entry["dot"] = path.read_text(encoding="utf-8")
            csv_path = path.with_suffix(".csv")
            if csv_path.exists():
                entry["edges_csv"] = csv_path.read_text(encoding="utf-8")
        return {"run_id": run_id, "figures": figures}

    return app


def _write_figures(store: ProjectStore, run) -> None:
    fig_dir = store.root / "evaluations" / run.run_id / "figures"
    fig_dir.mkdir(parents=True, exist_ok=True)
    paper_ids: dict[str, set[int]] = {}
    for (paper, _), row in run.rows.items():
        paper_ids.setdefault(paper, set()).update(row.graph.nodes)
    for (paper, condition), row in sorted(run.rows.items()):
        palette = palette_for(paper_ids[paper])
        (fig_dir / f"{paper}__{condition}.dot").write_text(
            export_dot(row.graph, palette), encoding="utf-8"
        )
        (fig_dir / f"{paper}__{condition}.csv").write_text(
            export_edge_csv(row.graph), encoding="utf-8"
        )
