/** Fetch-based client for the workbench service; the board and dashboard talk
 * to the backend exclusively through this module. */

import type {
  BundleDoc,
  DraftAnnexDoc,
  EvaluationRunDoc,
  FiguresResponse,
  GroupingsDoc,
  GroupingsResponse,
  ProjectDoc,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: unknown,
  ) {
    super(`API error ${status}: ${JSON.stringify(detail)}`);
  }
}

/** A stale version tag was rejected; carries the server's current version. */
export class VersionConflict extends Error {
  constructor(public currentVersion: number) {
    super(`stale version; server is at ${currentVersion}`);
  }
}

export class CoverageRejected extends Error {
  constructor(public uncovered: number[]) {
    super(`groupings leave citations uncovered: [${uncovered.join(", ")}]`);
  }
}

async function parseBody(response: Response): Promise<unknown> {
  const text = await response.text();
  try {
    return text ? JSON.parse(text) : null;
  } catch {
    return text;
  }
}

export class WorkbenchClient {
  constructor(public baseUrl: string) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  private async request(method: string, path: string, body?: unknown): Promise<unknown> {
    const response = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? {} : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await parseBody(response);
    if (response.ok) return payload;
    const detail = (payload as { detail?: unknown } | null)?.detail ?? payload;
    if (response.status === 409 && typeof detail === "object" && detail !== null) {
      const current = (detail as { current_version?: number }).current_version;
      if (typeof current === "number") throw new VersionConflict(current);
    }
    if (response.status === 422 && typeof detail === "object" && detail !== null) {
      const uncovered = (detail as { uncovered?: number[] }).uncovered;
      if (Array.isArray(uncovered)) throw new CoverageRejected(uncovered);
    }
    throw new ApiError(response.status, detail);
  }

  async createProject(bundle: BundleDoc): Promise<string> {
    const doc = (await this.request("POST", "/projects", { bundle })) as { project_id: string };
    return doc.project_id;
  }

  getProject(projectId: string): Promise<ProjectDoc> {
    return this.request("GET", `/projects/${projectId}`) as Promise<ProjectDoc>;
  }

  getGroupings(projectId: string): Promise<GroupingsResponse> {
    return this.request("GET", `/projects/${projectId}/groupings`) as Promise<GroupingsResponse>;
  }

  async putGroupings(
    projectId: string,
    groupings: GroupingsDoc,
    version: number,
  ): Promise<number> {
    const doc = (await this.request("PUT", `/projects/${projectId}/groupings`, {
      groupings,
      version,
    })) as { version: number };
    return doc.version;
  }

  generateGroupings(projectId: string): Promise<GroupingsResponse> {
    return this.request(
      "POST",
      `/projects/${projectId}/groupings:generate`,
    ) as Promise<GroupingsResponse>;
  }

  async generateDraft(projectId: string): Promise<{ draft: DraftAnnexDoc; version: number }> {
    return (await this.request("POST", `/projects/${projectId}/draft:generate`)) as {
      draft: DraftAnnexDoc;
      version: number;
    };
  }

  async putDraft(projectId: string, text: string, version: number): Promise<number> {
    const doc = (await this.request("PUT", `/projects/${projectId}/draft`, {
      text,
      version,
    })) as { version: number };
    return doc.version;
  }

  async setCondition(projectId: string, name: string, text: string): Promise<void> {
    await this.request("POST", `/projects/${projectId}/conditions/${name}`, { text });
  }

  evaluate(projectIds: string[], config: Record<string, string> = {}): Promise<EvaluationRunDoc> {
    return this.request("POST", "/evaluations", {
      project_ids: projectIds,
      config,
    }) as Promise<EvaluationRunDoc>;
  }

  getFigures(runId: string): Promise<FiguresResponse> {
    return this.request("GET", `/evaluations/${runId}/figures`) as Promise<FiguresResponse>;
  }
}
