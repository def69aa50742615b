"""File-backed project store: schema-conformant JSON, atomic writes, version tags.

Writes go through per-project locks and replace-on-write, so readers never see
partial documents. Concurrent edits are rejected (not merged): a write carrying
a stale version tag raises StorageConflict with the current tag.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from pathlib import Path

from ..corpus import PaperBundle, bundle_from_dict, bundle_to_dict
from ..pipeline.groupings import GroupingSet, grouping_from_dict, grouping_to_dict


class StoreError(Exception):
    pass


class ProjectNotFound(StoreError):
    pass


class ProjectExists(StoreError):
    pass


class StorageConflict(StoreError):
    def __init__(self, expected: int, current: int):
        self.expected = expected
        self.current = current
        super().__init__(f"stale version tag {expected}; current version is {current}")


@dataclass
class Project:
    project_id: str
    bundle: PaperBundle
    groupings: GroupingSet | None = None
    groupings_version: int = 0
    drafts: list[str] = field(default_factory=list)
    drafts_version: int = 0
    condition_texts: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "project_id": self.project_id,
            "bundle": bundle_to_dict(self.bundle),
            "groupings": grouping_to_dict(self.groupings) if self.groupings else None,
            "groupings_version": self.groupings_version,
            "drafts": list(self.drafts),
            "drafts_version": self.drafts_version,
            "condition_texts": dict(self.condition_texts),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Project":
        bundle = bundle_from_dict(doc["bundle"])
        groupings = None
        if doc.get("groupings"):
            groupings = grouping_from_dict(
                doc["groupings"], bundle.citation_ids(), enforce_coverage=False
            )
        return cls(
            project_id=doc["project_id"],
            bundle=bundle,
            groupings=groupings,
            groupings_version=doc.get("groupings_version", 0),
            drafts=list(doc.get("drafts", [])),
            drafts_version=doc.get("drafts_version", 0),
            condition_texts=dict(doc.get("condition_texts", {})),
        )


class ProjectStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        (self.root / "projects").mkdir(parents=True, exist_ok=True)
        (self.root / "evaluations").mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()
        self._pipelines: set[str] = set()

    def _lock(self, project_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(project_id, threading.Lock())

    def _project_dir(self, project_id: str) -> Path:
        return self.root / "projects" / project_id

    def _write_json(self, path: Path, doc: dict) -> None:
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_text(json.dumps(doc, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
        tmp.replace(path)

    # --- lifecycle -----------------------------------------------------------

    def list_projects(self) -> list[str]:
        return sorted(p.name for p in (self.root / "projects").iterdir() if p.is_dir())

    def create_project(self, bundle: PaperBundle, project_id: str | None = None) -> Project:
        project_id = project_id or bundle.paper_id
        pdir = self._project_dir(project_id)
        with self._lock(project_id):
            if pdir.exists():
                raise ProjectExists(project_id)
            (pdir / "history").mkdir(parents=True)
            project = Project(project_id=project_id, bundle=bundle)
            if bundle.related_work:
                project.condition_texts["human"] = bundle.related_work
            self._write_json(pdir / "project.json", project.to_dict())
        return project

    def get_project(self, project_id: str) -> Project:
        path = self._project_dir(project_id) / "project.json"
        if not path.exists():
            raise ProjectNotFound(project_id)
        return Project.from_dict(json.loads(path.read_text(encoding="utf-8")))

    def _save(self, project: Project) -> None:
        self._write_json(self._project_dir(project.project_id) / "project.json", project.to_dict())

    # --- versioned sections --------------------------------------------------

    def put_groupings(self, project_id: str, grouping: GroupingSet, version: int) -> int:
        """Replace the grouping set; version must match, history is appended."""
        with self._lock(project_id):
            project = self.get_project(project_id)
            if version != project.groupings_version:
                raise StorageConflict(version, project.groupings_version)
            project.groupings = grouping
            project.groupings_version += 1
            snapshot = self._project_dir(project_id) / "history"
            self._write_json(
                snapshot / f"groupings-{project.groupings_version:04d}.json",
                grouping_to_dict(grouping),
            )
            self._save(project)
            return project.groupings_version

    def put_draft(self, project_id: str, text: str, version: int) -> int:
        with self._lock(project_id):
            project = self.get_project(project_id)
            if version != project.drafts_version:
                raise StorageConflict(version, project.drafts_version)
            project.drafts.append(text)
            project.drafts_version += 1
            self._save(project)
            return project.drafts_version

    def set_condition(self, project_id: str, condition: str, text: str) -> None:
        with self._lock(project_id):
            project = self.get_project(project_id)
            project.condition_texts[condition] = text
            self._save(project)

    def grouping_history(self, project_id: str) -> list[str]:
        hdir = self._project_dir(project_id) / "history"
        if not hdir.exists():
            raise ProjectNotFound(project_id)
        return sorted(p.name for p in hdir.glob("groupings-*.json"))

    # --- pipeline guard ------------------------------------------------------

    def begin_pipeline(self, project_id: str) -> bool:
        """Returns False if a pipeline is already in flight for the project."""
        with self._locks_guard:
            if project_id in self._pipelines:
                return False
            self._pipelines.add(project_id)
            return True

    def end_pipeline(self, project_id: str) -> None:
        with self._locks_guard:
            self._pipelines.discard(project_id)

    # --- evaluations ---------------------------------------------------------

    def record_evaluation(self, run_doc: dict) -> None:
        rdir = self.root / "evaluations" / run_doc["run_id"]
        rdir.mkdir(parents=True, exist_ok=True)
        self._write_json(rdir / "run.json", run_doc)

    def get_evaluation(self, run_id: str) -> dict:
        path = self.root / "evaluations" / run_id / "run.json"
        if not path.exists():
            raise ProjectNotFound(run_id)
        return json.loads(path.read_text(encoding="utf-8"))
