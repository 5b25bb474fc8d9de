// Typed client for the review service. Every UI mutation goes through
// exactly one of these calls; no metric is ever computed in the browser.

export interface Paper {
  eid: string;
  title: string;
  abstract: string | null;
  year: number;
  citation_count: number;
  relevancy: number | null;
  popularity: number | null;
  curation: CurationStatus;
  curation_note: string;
}

export type CurationStatus = "unreviewed" | "included" | "excluded" | "included_general";

export interface PaperListResponse {
  papers: Paper[];
  counts: Record<CurationStatus, number>;
  revision: number;
}

export interface ProjectSummary {
  id: string;
  scheme: SchemeDoc;
  query: string | null;
  revision: number;
  reference_year: number | null;
  pool_size: number;
  extraction_prompts: string[];
  cluster_count: number;
  has_ground_truth: boolean;
  updated_at: string;
}

export interface SchemeDoc {
  problem_l1: string[][];
  problem_l2: string[][];
  problem_l3: string[][];
  solution_l1: string[][];
  solution_l2: string[][];
  solution_l3: string[][];
  doc_types: string[];
  min_year_exclusive: number | null;
}

export interface Mention {
  name: string;
  eid: string;
  year: number;
}

export interface Cluster {
  id: string;
  label: string;
  members: string[];
  mentions: Mention[];
  curated: boolean;
  is_noise: boolean;
}

export interface TrendCell {
  year: number | string;
  papers: number;
  relevancy_sum: number;
  popularity_sum: number;
}

export interface TrendSeries {
  label: string;
  years: TrendCell[];
  all_time: TrendCell | null;
}

export interface TrendsResponse {
  year_range: [number, number] | null;
  clusters: Record<string, TrendSeries>;
  rankings: Record<string, { cluster_id: string; label: string; value: number }[]>;
}

export interface JobStatus {
  status: "pending" | "done" | "failed";
  result: Record<string, unknown> | null;
  error: { code: string; message: string } | null;
}

export interface LogEntry {
  seq: number;
  at: string;
  kind: string;
  [key: string]: unknown;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public detail: unknown = null,
  ) {
    super(message);
  }
}

async function request<T>(base: string, path: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(base + path, {
    headers: { "Content-Type": "application/json" },
    ...init,
  });
  const body = await resp.json().catch(() => null);
  if (!resp.ok) {
    const error =
      (body && (body as { error?: { code?: string; message?: string; detail?: unknown } }).error) ||
      {};
    throw new ApiError(
      resp.status,
      error.code ?? "http_error",
      error.message ?? resp.statusText,
      error.detail ?? null,
    );
  }
  return body as T;
}

export class ReviewApi {
  constructor(public base: string = "") {}

  listProjects(): Promise<{ projects: string[] }> {
    return request(this.base, "/api/projects");
  }

  getProject(id: string): Promise<ProjectSummary> {
    return request(this.base, `/api/projects/${id}`);
  }

  getRevision(id: string): Promise<{ revision: number }> {
    return request(this.base, `/api/projects/${id}/revision`);
  }

  getPapers(id: string): Promise<PaperListResponse> {
    return request(this.base, `/api/projects/${id}/papers`);
  }

  setCuration(
    id: string,
    eid: string,
    curation: CurationStatus,
    note = "",
  ): Promise<{ eid: string; curation: CurationStatus; revision: number }> {
    return request(this.base, `/api/projects/${id}/papers/${encodeURIComponent(eid)}`, {
      method: "PATCH",
      body: JSON.stringify({ curation, note }),
    });
  }

  previewQuery(scheme: SchemeDoc): Promise<{ query: string }> {
    return request(this.base, "/api/query-preview", {
      method: "POST",
      body: JSON.stringify(scheme),
    });
  }

  updateScheme(id: string, scheme: SchemeDoc): Promise<{ query: string; revision: number }> {
    return request(this.base, `/api/projects/${id}/scheme`, {
      method: "PUT",
      body: JSON.stringify(scheme),
    });
  }

  startSearch(id: string, limit?: number): Promise<{ job_id: string }> {
    return request(this.base, `/api/projects/${id}/jobs/search`, {
      method: "POST",
      body: JSON.stringify(limit ? { limit } : {}),
    });
  }

  startExtract(id: string, promptId = "initial"): Promise<{ job_id: string }> {
    return request(this.base, `/api/projects/${id}/jobs/extract`, {
      method: "POST",
      body: JSON.stringify({ prompt_id: promptId }),
    });
  }

  jobStatus(jobId: string): Promise<JobStatus> {
    return request(this.base, `/api/jobs/${jobId}`);
  }

  async waitForJob(jobId: string, timeoutMs = 60_000, pollMs = 150): Promise<JobStatus> {
    const deadline = Date.now() + timeoutMs;
    for (;;) {
      const status = await this.jobStatus(jobId);
      if (status.status !== "pending") return status;
      if (Date.now() > deadline) throw new ApiError(0, "timeout", "job still pending");
      await new Promise((resolve) => setTimeout(resolve, pollMs));
    }
  }

  getClusters(id: string): Promise<{ clusters: Cluster[]; revision: number }> {
    return request(this.base, `/api/projects/${id}/clusters`);
  }

  recluster(
    id: string,
    params: { eps?: number; min_samples?: number; drop_singletons?: boolean } = {},
  ): Promise<{ clusters: number; revision: number }> {
    return request(this.base, `/api/projects/${id}/cluster`, {
      method: "POST",
      body: JSON.stringify(params),
    });
  }

  editClusters(
    id: string,
    edits: Record<string, unknown>[],
  ): Promise<{ clusters: Cluster[]; log_size: number; revision: number }> {
    return request(this.base, `/api/projects/${id}/clusters/edits`, {
      method: "POST",
      body: JSON.stringify({ edits }),
    });
  }

  getTrends(id: string): Promise<TrendsResponse> {
    return request(this.base, `/api/projects/${id}/trends`);
  }

  getCurationLog(id: string): Promise<{ entries: LogEntry[] }> {
    return request(this.base, `/api/projects/${id}/curation-log`);
  }

  getPromptSensitivity(
    id: string,
    baseline: string,
    variant: string,
  ): Promise<{
    prompt_id: string;
    diff_word_count: number;
    identical_article_count: number;
    enriched_ratio: number | string;
  }> {
    const params = new URLSearchParams({ baseline, variant });
    return request(this.base, `/api/projects/${id}/sensitivity/prompts?${params}`);
  }

  exportUrl(id: string, what: string, format: string): string {
    return `${this.base}/api/projects/${id}/export?what=${what}&format=${format}`;
  }
}
