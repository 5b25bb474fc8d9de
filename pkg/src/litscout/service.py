"""HTTP+JSON service over the project store, consumed by the review UI.

Every mutation goes through the same store functions as the CLI, under
the project's writer lock, so the two front ends produce identical
project files for identical operation sequences. Long operations
(search, extract) run as async jobs with a polling endpoint; re-posting
an identical completed job returns the cached one.
"""

from __future__ import annotations

import hashlib
import json
import math
import threading
import uuid
from pathlib import Path

from fastapi import Body, FastAPI
from fastapi.responses import JSONResponse, PlainTextResponse

from . import store
from .analysis import prompt_sensitivity, trend_json, trend_table
from .clustering import ClusteringParams
from .config import Settings
from .errors import (
    AuthError,
    ConflictError,
    FixtureMissError,
    LitScoutError,
    RateLimitError,
    SchemeValidationError,
    TransportError,
    UnknownIdError,
)
from .evaluation import (
    GeneralTerms,
    classify_terms,
    evaluation_report_json,
    ground_truth_from_dict,
)
from .extraction import LiveBackend, PromptTemplate, ReplayBackend, extract_methods
from .keywords import build_query, scheme_from_dict, scheme_to_dict, validate_scheme
from .scopus import Curation, ScopusClient
from .scoring import score_pool

_STATUS = {
    UnknownIdError: 404,
    ConflictError: 409,
    SchemeValidationError: 422,
    TransportError: 502,
    AuthError: 502,
    RateLimitError: 502,
    FixtureMissError: 502,
}


class JobRegistry:
    def __init__(self):
        self._jobs: dict[str, dict] = {}
        self._by_key: dict[str, str] = {}
        self._lock = threading.Lock()

    def submit(self, key: str, runner) -> str:
        with self._lock:
            existing = self._by_key.get(key)
            if existing is not None and self._jobs[existing]["status"] != "failed":
                return existing
            job_id = uuid.uuid4().hex[:12]
            self._jobs[job_id] = {"status": "pending", "result": None, "error": None}
            self._by_key[key] = job_id

        def run():
            try:
                result = runner()
                self._jobs[job_id]["result"] = result
                self._jobs[job_id]["status"] = "done"
            except Exception as exc:  # noqa: BLE001 - reported via polling
                if isinstance(exc, LitScoutError):
                    self._jobs[job_id]["error"] = exc.as_api_error()
                else:
                    self._jobs[job_id]["error"] = {"code": "internal", "message": str(exc)}
                self._jobs[job_id]["status"] = "failed"

        threading.Thread(target=run, daemon=True).start()
        return job_id

    def get(self, job_id: str) -> dict:
        job = self._jobs.get(job_id)
        if job is None:
            raise UnknownIdError(f"unknown job {job_id!r}")
        return job


def _job_key(project_id: str, op: str, payload: dict) -> str:
    digest = hashlib.sha256(
        json.dumps([project_id, op, payload], sort_keys=True).encode("utf-8")
    ).hexdigest()
    return digest[:24]


def create_app(projects_dir: str | Path, settings: Settings | None = None) -> FastAPI:
    settings = settings or Settings.load()
    projects_dir = Path(projects_dir)
    projects_dir.mkdir(parents=True, exist_ok=True)
    app = FastAPI(title="litscout service", version="0.1.0")
    jobs = JobRegistry()
    mutate_lock = threading.Lock()

    def path_for(project_id: str) -> Path:
        return projects_dir / f"{project_id}{store.FILE_SUFFIX}"

    def load_project(project_id: str) -> store.Project:
        path = path_for(project_id)
        if not path.exists():
            raise UnknownIdError(f"unknown project {project_id!r}")
        return store.load(path)

    def mutate(project_id: str, fn) -> store.Project:
        # one writer at a time per service process, plus the advisory
        # file lock against other processes
        with mutate_lock:
            path = path_for(project_id)
            if not path.exists():
                raise UnknownIdError(f"unknown project {project_id!r}")
            with store.ProjectLock(path):
                project = store.load(path)
                fn(project)
                store.save(project, path)
        return project

    @app.exception_handler(LitScoutError)
    async def handle_litscout_error(_request, exc: LitScoutError):
        status = 400
        for err_type, code in _STATUS.items():
            if isinstance(exc, err_type):
                status = code
                break
        return JSONResponse(status_code=status, content={"error": exc.as_api_error()})

    # -- projects -----------------------------------------------------

    @app.get("/api/projects")
    def list_projects():
        ids = [
            p.name[: -len(store.FILE_SUFFIX)]
            for p in sorted(projects_dir.glob(f"*{store.FILE_SUFFIX}"))
        ]
        return {"projects": ids}

    @app.post("/api/projects", status_code=201)
    def create_project(body: dict = Body(...)):
        project_id = body["id"]
        path = path_for(project_id)
        if path.exists():
            raise ConflictError(f"project {project_id!r} already exists")
        scheme = scheme_from_dict(body.get("scheme", {}))
        findings = validate_scheme(scheme)
        if findings:
            raise SchemeValidationError(findings)
        project = store.new_project(project_id, scheme)
        project.query = build_query(scheme)
        store.save(project, path)
        return {"id": project_id, "query": project.query.text, "revision": project.revision}

    @app.get("/api/projects/{project_id}")
    def get_project(project_id: str):
        project = load_project(project_id)
        return {
            "id": project.id,
            "scheme": scheme_to_dict(project.scheme),
            "query": project.query.text if project.query else None,
            "revision": project.revision,
            "reference_year": project.reference_year,
            "pool_size": len(project.pool),
            "prompts": sorted(project.prompts),
            "extraction_prompts": sorted(project.extractions),
            "cluster_count": len(project.clusters),
            "has_ground_truth": bool(project.ground_truth),
            "updated_at": project.updated_at,
        }

    @app.get("/api/projects/{project_id}/revision")
    def get_revision(project_id: str):
        return {"revision": load_project(project_id).revision}

    @app.put("/api/projects/{project_id}/scheme")
    def put_scheme(project_id: str, body: dict = Body(...)):
        scheme = scheme_from_dict(body)
        findings = validate_scheme(scheme)
        if findings:
            raise SchemeValidationError(findings)

        def apply(project: store.Project):
            project.scheme = scheme
            project.query = build_query(scheme)
            project.query_is_direct = False
            project.touch()

        project = mutate(project_id, apply)
        return {"query": project.query.text, "revision": project.revision}

    @app.post("/api/query-preview")
    def query_preview(body: dict = Body(...)):
        scheme = scheme_from_dict(body)
        findings = validate_scheme(scheme)
        if findings:
            raise SchemeValidationError(findings)
        return {"query": build_query(scheme).text}

    # -- papers ---------------------------------------------------------

    @app.get("/api/projects/{project_id}/papers")
    def get_papers(project_id: str):
        project = load_project(project_id)
        scores = {s.eid: s for s in project.scores}
        papers = []
        for paper in project.pool:
            score = scores.get(paper.eid)
            papers.append(
                {
                    "eid": paper.eid,
                    "title": paper.title,
                    "abstract": paper.abstract,
                    "year": paper.year,
                    "citation_count": paper.citation_count,
                    "relevancy": score.relevancy if score else None,
                    "popularity": round(score.popularity, 4) if score else None,
                    "curation": paper.curation.value,
                    "curation_note": paper.curation_note,
                }
            )
        counts = {c.value: 0 for c in Curation}
        for paper in project.pool:
            counts[paper.curation.value] += 1
        return {"papers": papers, "counts": counts, "revision": project.revision}

    @app.patch("/api/projects/{project_id}/papers/{eid}")
    def patch_paper(project_id: str, eid: str, body: dict = Body(...)):
        status = Curation(body["curation"])
        note = body.get("note", "")
        project = mutate(project_id, lambda p: store.set_curation(p, eid, status, note))
        return {"eid": eid, "curation": status.value, "revision": project.revision}

    # -- pipeline steps -------------------------------------------------

    @app.post("/api/projects/{project_id}/jobs/search", status_code=202)
    def post_search_job(project_id: str, body: dict = Body(default={})):
        load_project(project_id)  # 404 before queuing
        limit = body.get("limit")
        fixtures = body.get("fixtures") or settings.scopus_fixtures()

        def run():
            client = ScopusClient(
                fixtures_dir=fixtures, rate_per_second=settings.scopus_rate_per_second
            )
            holder: dict = {}

            def apply(project: store.Project):
                if project.query is None:
                    project.query = build_query(project.scheme)
                result = client.search(project.query, limit=limit)
                store.merge_pool(project, result.records)
                holder["total"] = result.total_found
                holder["fetched"] = len(result.records)

            mutate(project_id, apply)
            return holder

        key = _job_key(project_id, "search", {"limit": limit, "fixtures": str(fixtures)})
        return {"job_id": jobs.submit(key, run)}

    @app.post("/api/projects/{project_id}/jobs/extract", status_code=202)
    def post_extract_job(project_id: str, body: dict = Body(default={})):
        load_project(project_id)
        prompt_id = body.get("prompt_id", "initial")
        fixtures = body.get("fixtures") or settings.llm_fixtures()

        def run():
            if fixtures:
                backend = ReplayBackend(fixtures)
            else:
                backend = LiveBackend(model=settings.llm_model, endpoint=settings.llm_endpoint)
            holder: dict = {}

            def apply(project: store.Project):
                template = project.prompts.get(prompt_id)
                if template is None:
                    if prompt_id != "initial":
                        raise UnknownIdError(f"unknown prompt template {prompt_id!r}")
                    template = PromptTemplate()
                batch = extract_methods(
                    project.pool, template, backend, max_workers=settings.extract_workers
                )
                project.prompts[prompt_id] = template
                project.extractions[prompt_id] = {r.eid: r for r in batch.results}
                project.touch()
                holder["extracted"] = len(batch.results)
                holder["failed"] = {eid: str(e) for eid, e in batch.errors.items()}

            mutate(project_id, apply)
            return holder

        key = _job_key(project_id, "extract", {"prompt_id": prompt_id, "fixtures": str(fixtures)})
        return {"job_id": jobs.submit(key, run)}

    @app.get("/api/jobs/{job_id}")
    def get_job(job_id: str):
        job = jobs.get(job_id)
        return {"status": job["status"], "result": job["result"], "error": job["error"]}

    @app.post("/api/projects/{project_id}/score")
    def post_score(project_id: str, body: dict = Body(default={})):
        reference_year = body.get("reference_year")
        include_index_terms = body.get("include_index_terms", False)

        def apply(project: store.Project):
            year = reference_year or project.reference_year
            if year is None:
                raise LitScoutError("no reference year given or stored")
            project.scores = score_pool(
                project.pool, project.scheme, year, include_index_terms
            )
            project.reference_year = year
            project.touch()

        project = mutate(project_id, apply)
        return {"scored": len(project.scores), "revision": project.revision}

    @app.post("/api/projects/{project_id}/ground-truth")
    def post_ground_truth(project_id: str, body: dict = Body(...)):
        extras = body.get("general_terms_exact", [])
        payload = body.get("papers", body)

        def apply(project: store.Project):
            project.ground_truth = ground_truth_from_dict(payload)
            project.general_terms = GeneralTerms.for_scheme(project.scheme, extras)
            project.touch()

        project = mutate(project_id, apply)
        return {"papers": len(project.ground_truth), "revision": project.revision}

    @app.get("/api/projects/{project_id}/evaluation")
    def get_evaluation(project_id: str, prompt_id: str = "initial", fuzzy: bool = False):
        project = load_project(project_id)
        extractions = project.extractions.get(prompt_id, {})
        if not project.ground_truth:
            raise UnknownIdError("project has no ground truth")
        general = project.general_terms or GeneralTerms.for_scheme(project.scheme)
        reports = []
        for truth in project.ground_truth:
            if truth.eid not in extractions:
                raise UnknownIdError(f"no extraction for {truth.eid} under {prompt_id!r}")
            reports.append(classify_terms(extractions[truth.eid], truth, general, fuzzy))
        return evaluation_report_json(reports)

    @app.post("/api/projects/{project_id}/cluster")
    def post_cluster(project_id: str, body: dict = Body(default={})):
        params = ClusteringParams(
            eps=body.get("eps", settings.eps),
            min_samples=body.get("min_samples", settings.min_samples),
            weight_by_mentions=body.get("weight_by_mentions", True),
        )
        prompt_id = body.get("prompt_id", "initial")

        def apply(project: store.Project):
            store.recluster(project, prompt_id, params)
            if body.get("drop_singletons"):
                store.apply_cluster_edits(project, [{"op": "drop_singletons"}])

        project = mutate(project_id, apply)
        return {"clusters": len(project.clusters), "revision": project.revision}

    @app.get("/api/projects/{project_id}/clusters")
    def get_clusters(project_id: str):
        project = load_project(project_id)
        return {"clusters": store.clusters_json(project), "revision": project.revision}

    @app.post("/api/projects/{project_id}/clusters/edits")
    def post_cluster_edits(project_id: str, body: dict = Body(...)):
        edits = body.get("edits", [])
        project = mutate(project_id, lambda p: store.apply_cluster_edits(p, edits))
        return {
            "clusters": store.clusters_json(project),
            "log_size": len(project.curation_log),
            "revision": project.revision,
        }

    @app.get("/api/projects/{project_id}/curation-log")
    def get_curation_log(project_id: str):
        project = load_project(project_id)
        return {"entries": project.curation_log}

    @app.get("/api/projects/{project_id}/trends")
    def get_trends(project_id: str, from_year: int | None = None, to_year: int | None = None):
        project = load_project(project_id)
        year_range = (from_year, to_year) if from_year and to_year else None
        table = trend_table(project.clusters, project.pool, project.scores, year_range)
        return trend_json(table)

    @app.get("/api/projects/{project_id}/sensitivity/prompts")
    def get_prompt_sensitivity(project_id: str, baseline: str = "initial", variant: str = "prompt-4"):
        project = load_project(project_id)
        base = list(project.extractions.get(baseline, {}).values())
        var = list(project.extractions.get(variant, {}).values())
        if not base or not var:
            raise UnknownIdError("both prompt runs must exist in the project")
        row = prompt_sensitivity(base, var)
        return {
            "prompt_id": row.prompt_id,
            "diff_word_count": row.diff_word_count,
            "identical_article_count": row.identical_article_count,
            "enriched_ratio": "inf" if math.isinf(row.enriched_ratio) else round(row.enriched_ratio, 4),
        }

    @app.get("/api/projects/{project_id}/export")
    def get_export(project_id: str, what: str = "pool", format: str = "csv", prompt_id: str = "initial"):
        from .cli import _export_text

        project = load_project(project_id)
        text = _export_text(project, what, format, prompt_id)
        if format == "csv":
            return PlainTextResponse(text, media_type="text/csv")
        return JSONResponse(json.loads(text))

    # static review UI bundle, when built
    ui_dist = Path(__file__).resolve().parent.parent.parent / "frontend" / "dist"
    if ui_dist.exists():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dist, html=True), name="ui")

    return app
