"""Versioned single-document persistence for the whole pipeline state.

A project file (``*.litscout.json``) holds the scheme, compiled query,
paper pool with curation, scores, extractions, ground truth, clusters and
the append-only curation log. Saves are canonical JSON so identical state
produces identical bytes; loads verify referential integrity and that the
curation log replays to the stored cluster state. Unknown future fields
survive a load/save round-trip.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from . import clock
from .clustering import (
    ClusteringParams,
    MethodCluster,
    MethodMention,
    dbscan_cluster,
    filter_and_curate,
)
from .errors import (
    ConflictError,
    IntegrityError,
    StoreParseError,
    StoreVersionError,
    UnknownIdError,
)
from .evaluation import GeneralTerms, GroundTruthEntry
from .extraction import ExtractionResult, PromptTemplate
from .keywords import KeywordScheme, QueryString, scheme_from_dict, scheme_to_dict
from .scopus import Curation, PaperRecord
from .scoring import PaperScores

SCHEMA_VERSION = 1
FILE_SUFFIX = ".litscout.json"


@dataclass
class Project:
    id: str
    scheme: KeywordScheme = field(default_factory=KeywordScheme)
    query: QueryString | None = None
    query_is_direct: bool = False
    pool: list[PaperRecord] = field(default_factory=list)
    scores: list[PaperScores] = field(default_factory=list)
    reference_year: int | None = None
    prompts: dict[str, PromptTemplate] = field(default_factory=dict)
    extractions: dict[str, dict[str, ExtractionResult]] = field(default_factory=dict)
    ground_truth: list[GroundTruthEntry] = field(default_factory=list)
    general_terms: GeneralTerms | None = None
    clusters: list[MethodCluster] = field(default_factory=list)
    cluster_params: ClusteringParams | None = None
    cluster_prompt_id: str | None = None
    curation_log: list[dict] = field(default_factory=list)
    analyses: dict = field(default_factory=dict)
    created_at: str = ""
    updated_at: str = ""
    revision: int = 0
    extra: dict = field(default_factory=dict)

    # -- helpers --------------------------------------------------------

    def record(self, eid: str) -> PaperRecord:
        for paper in self.pool:
            if paper.eid == eid:
                return paper
        raise UnknownIdError(f"no paper {eid!r} in pool")

    def included_papers(self) -> list[PaperRecord]:
        return [p for p in self.pool if p.curation == Curation.INCLUDED]

    def touch(self) -> None:
        self.updated_at = clock.now_iso()
        self.revision += 1
        self.analyses.clear()

    def log_entry(self, kind: str, **payload) -> dict:
        entry = {"seq": len(self.curation_log), "at": clock.now_iso(), "kind": kind}
        entry.update(payload)
        self.curation_log.append(entry)
        return entry

    def mentions_for(
        self, prompt_id: str, curation_by_eid: dict[str, Curation] | None = None
    ) -> list[MethodMention]:
        """Method mentions visible to clustering under one prompt.

        Mentions of excluded or included_general papers are invisible,
        matching extraction's own visibility rule. ``curation_by_eid``
        lets the log replay evaluate a historical curation state.
        """
        by_eid = {p.eid: p for p in self.pool}
        mentions: list[MethodMention] = []
        for eid, result in sorted(self.extractions.get(prompt_id, {}).items()):
            paper = by_eid.get(eid)
            if paper is None:
                continue
            status = (
                curation_by_eid.get(eid, Curation.UNREVIEWED)
                if curation_by_eid is not None
                else paper.curation
            )
            if status in (Curation.EXCLUDED, Curation.INCLUDED_GENERAL):
                continue
            for name in result.methods:
                mentions.append(MethodMention(name=name, eid=eid, year=paper.year))
        return mentions


def new_project(project_id: str, scheme: KeywordScheme) -> Project:
    now = clock.now_iso()
    return Project(id=project_id, scheme=scheme, created_at=now, updated_at=now)


# -- mutations (all go through here so CLI and HTTP stay interchangeable) --

def set_curation(project: Project, eid: str, status: Curation, note: str = "") -> Project:
    paper = project.record(eid)
    paper.curation = status
    paper.curation_note = note
    project.log_entry("paper", eid=eid, status=status.value, note=note)
    project.touch()
    return project


def merge_pool(project: Project, records: list[PaperRecord]) -> Project:
    """Replace the pool with fresh records, preserving curation by EID."""
    previous = {p.eid: p for p in project.pool}
    for record in records:
        old = previous.get(record.eid)
        if old is not None:
            record.curation = old.curation
            record.curation_note = old.curation_note
    project.pool = records
    project.touch()
    return project


def recluster(project: Project, prompt_id: str, params: ClusteringParams) -> Project:
    mentions = project.mentions_for(prompt_id)
    project.clusters = dbscan_cluster(mentions, params)
    project.cluster_params = params
    project.cluster_prompt_id = prompt_id
    project.log_entry(
        "cluster_reset",
        prompt_id=prompt_id,
        eps=params.eps,
        min_samples=params.min_samples,
        weight_by_mentions=params.weight_by_mentions,
    )
    project.touch()
    return project


def apply_cluster_edits(project: Project, edits: list[dict]) -> Project:
    project.clusters = filter_and_curate(project.clusters, edits)
    for edit in edits:
        project.log_entry("cluster_edit", edit=edit)
    project.touch()
    return project


def replay_clusters(project: Project) -> list[MethodCluster]:
    """Recompute cluster state from the last reset entry plus later edits.

    Paper curation entered after the reset must not disturb the replay,
    so the paper-curation state is folded from the log up to the reset
    point (papers start unreviewed).
    """
    reset_idx = None
    for i in range(len(project.curation_log) - 1, -1, -1):
        if project.curation_log[i]["kind"] == "cluster_reset":
            reset_idx = i
            break
    if reset_idx is None:
        return []
    curation_then = {p.eid: Curation.UNREVIEWED for p in project.pool}
    for entry in project.curation_log[:reset_idx]:
        if entry["kind"] == "paper" and entry["eid"] in curation_then:
            curation_then[entry["eid"]] = Curation(entry["status"])
    reset = project.curation_log[reset_idx]
    params = ClusteringParams(
        eps=reset["eps"],
        min_samples=reset["min_samples"],
        weight_by_mentions=reset.get("weight_by_mentions", True),
    )
    clusters = dbscan_cluster(
        project.mentions_for(reset["prompt_id"], curation_by_eid=curation_then), params
    )
    edits = [
        e["edit"] for e in project.curation_log[reset_idx + 1 :] if e["kind"] == "cluster_edit"
    ]
    if edits:
        clusters = filter_and_curate(clusters, edits)
    return clusters


# -- serialization ----------------------------------------------------

def _record_to_dict(p: PaperRecord) -> dict:
    return {
        "eid": p.eid,
        "doi": p.doi,
        "title": p.title,
        "abstract": p.abstract,
        "author_keywords": list(p.author_keywords),
        "index_terms": list(p.index_terms),
        "year": p.year,
        "citation_count": p.citation_count,
        "doc_type": p.doc_type,
        "curation": p.curation.value,
        "curation_note": p.curation_note,
    }


def _record_from_dict(d: dict) -> PaperRecord:
    return PaperRecord(
        eid=d["eid"],
        doi=d.get("doi"),
        title=d.get("title", ""),
        abstract=d.get("abstract"),
        author_keywords=list(d.get("author_keywords", [])),
        index_terms=list(d.get("index_terms", [])),
        year=d["year"],
        citation_count=d.get("citation_count", 0),
        doc_type=d.get("doc_type", ""),
        curation=Curation(d.get("curation", "unreviewed")),
        curation_note=d.get("curation_note", ""),
    )


def _cluster_to_dict(c: MethodCluster) -> dict:
    return {
        "id": c.id,
        "label": c.label,
        "members": list(c.members),
        "mentions": [{"name": m.name, "eid": m.eid, "year": m.year} for m in c.mentions],
        "curated": c.curated,
        "is_noise": c.is_noise,
    }


def _cluster_from_dict(d: dict) -> MethodCluster:
    return MethodCluster(
        id=d["id"],
        label=d["label"],
        members=list(d["members"]),
        mentions=[MethodMention(m["name"], m["eid"], m["year"]) for m in d["mentions"]],
        curated=d.get("curated", False),
        is_noise=d.get("is_noise", False),
    )


_KNOWN_FIELDS = {
    "id",
    "schema_version",
    "scheme",
    "query",
    "query_is_direct",
    "pool",
    "scores",
    "reference_year",
    "prompts",
    "extractions",
    "ground_truth",
    "general_terms",
    "clusters",
    "cluster_params",
    "cluster_prompt_id",
    "curation_log",
    "analyses",
    "created_at",
    "updated_at",
    "revision",
}


def project_to_dict(project: Project) -> dict:
    doc = {
        "id": project.id,
        "schema_version": SCHEMA_VERSION,
        "scheme": scheme_to_dict(project.scheme),
        "query": project.query.text if project.query else None,
        "query_is_direct": project.query_is_direct,
        "pool": [_record_to_dict(p) for p in project.pool],
        "scores": [
            {
                "eid": s.eid,
                "relevancy": s.relevancy,
                "popularity": s.popularity,
                "reference_year": s.reference_year,
            }
            for s in project.scores
        ],
        "reference_year": project.reference_year,
        "prompts": {
            pid: {
                "template_text": t.template_text,
                "temperature": t.temperature,
                "max_tokens": t.max_tokens,
            }
            for pid, t in project.prompts.items()
        },
        "extractions": {
            pid: {
                eid: {
                    "raw_completion": r.raw_completion,
                    "methods": list(r.methods),
                    "backend_tag": r.backend_tag,
                }
                for eid, r in by_eid.items()
            }
            for pid, by_eid in project.extractions.items()
        },
        "ground_truth": [
            {"eid": g.eid, "methods": list(g.methods), "aliases": dict(g.aliases)}
            for g in project.ground_truth
        ],
        "general_terms": project.general_terms.as_dict() if project.general_terms else None,
        "clusters": [_cluster_to_dict(c) for c in project.clusters],
        "cluster_params": (
            {
                "eps": project.cluster_params.eps,
                "min_samples": project.cluster_params.min_samples,
                "weight_by_mentions": project.cluster_params.weight_by_mentions,
            }
            if project.cluster_params
            else None
        ),
        "cluster_prompt_id": project.cluster_prompt_id,
        "curation_log": list(project.curation_log),
        "analyses": dict(project.analyses),
        "created_at": project.created_at,
        "updated_at": project.updated_at,
        "revision": project.revision,
    }
    doc.update(project.extra)
    return doc


def project_from_dict(doc: dict) -> Project:
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise StoreVersionError(f"unsupported project schema_version {version!r}")
    project = Project(
        id=doc["id"],
        scheme=scheme_from_dict(doc.get("scheme", {})),
        query=QueryString(doc["query"]) if doc.get("query") else None,
        query_is_direct=doc.get("query_is_direct", False),
        pool=[_record_from_dict(d) for d in doc.get("pool", [])],
        scores=[
            PaperScores(
                eid=d["eid"],
                relevancy=d["relevancy"],
                popularity=d["popularity"],
                reference_year=d["reference_year"],
            )
            for d in doc.get("scores", [])
        ],
        reference_year=doc.get("reference_year"),
        prompts={
            pid: PromptTemplate(
                id=pid,
                template_text=t["template_text"],
                temperature=t.get("temperature", 0.0),
                max_tokens=t.get("max_tokens", 256),
            )
            for pid, t in doc.get("prompts", {}).items()
        },
        extractions={
            pid: {
                eid: ExtractionResult(
                    eid=eid,
                    prompt_id=pid,
                    raw_completion=r["raw_completion"],
                    methods=list(r["methods"]),
                    backend_tag=r.get("backend_tag", ""),
                )
                for eid, r in by_eid.items()
            }
            for pid, by_eid in doc.get("extractions", {}).items()
        },
        ground_truth=[
            GroundTruthEntry(
                eid=d["eid"], methods=list(d["methods"]), aliases=dict(d.get("aliases", {}))
            )
            for d in doc.get("ground_truth", [])
        ],
        general_terms=(
            GeneralTerms.from_dict(doc["general_terms"]) if doc.get("general_terms") else None
        ),
        clusters=[_cluster_from_dict(d) for d in doc.get("clusters", [])],
        cluster_params=(
            ClusteringParams(
                eps=doc["cluster_params"]["eps"],
                min_samples=doc["cluster_params"]["min_samples"],
                weight_by_mentions=doc["cluster_params"].get("weight_by_mentions", True),
            )
            if doc.get("cluster_params")
            else None
        ),
        cluster_prompt_id=doc.get("cluster_prompt_id"),
        curation_log=list(doc.get("curation_log", [])),
        analyses=dict(doc.get("analyses", {})),
        created_at=doc.get("created_at", ""),
        updated_at=doc.get("updated_at", ""),
        revision=doc.get("revision", 0),
        extra={k: v for k, v in doc.items() if k not in _KNOWN_FIELDS},
    )
    return project


def check_integrity(project: Project) -> None:
    """Referential integrity plus curation-log replay of the clusters."""
    eids = [p.eid for p in project.pool]
    eid_set = set(eids)
    if len(eids) != len(eid_set):
        dupes = sorted({e for e in eids if eids.count(e) > 1})
        raise IntegrityError(f"duplicate eids in pool: {dupes}")
    for s in project.scores:
        if s.eid not in eid_set:
            raise IntegrityError(f"scores reference unknown eid {s.eid}")
    for by_eid in project.extractions.values():
        for eid in by_eid:
            if eid not in eid_set:
                raise IntegrityError(f"extractions reference unknown eid {eid}")
    for g in project.ground_truth:
        if g.eid not in eid_set:
            raise IntegrityError(f"ground truth references unknown eid {g.eid}")
    for c in project.clusters:
        for m in c.mentions:
            if m.eid not in eid_set:
                raise IntegrityError(f"cluster {c.id} references unknown eid {m.eid}")
    replayed = replay_clusters(project)
    stored = [_cluster_to_dict(c) for c in project.clusters]
    fresh = [_cluster_to_dict(c) for c in replayed]
    if stored != fresh:
        raise IntegrityError("curation log does not replay to the stored cluster state")


def dumps_project(project: Project) -> str:
    return json.dumps(project_to_dict(project), indent=2, ensure_ascii=False, sort_keys=True) + "\n"


def save(project: Project, path: str | Path) -> Path:
    check_integrity(project)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_project(project), encoding="utf-8")
    return path


def load(path: str | Path, verify: bool = True) -> Project:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StoreParseError(f"invalid project file: {exc.msg}", byte_offset=exc.pos) from None
    project = project_from_dict(doc)
    if verify:
        check_integrity(project)
    return project


class ProjectLock:
    """Advisory single-writer lock next to the project file."""

    def __init__(self, project_path: str | Path):
        self.lock_path = Path(str(project_path) + ".lock")

    def __enter__(self):
        try:
            fd = os.open(self.lock_path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            raise ConflictError(
                f"project is locked by another writer ({self.lock_path})"
            ) from None
        with os.fdopen(fd, "w") as handle:
            handle.write(str(os.getpid()))
        return self

    def __exit__(self, *exc_info):
        try:
            self.lock_path.unlink()
        except FileNotFoundError:
            pass
        return False


# -- CSV exporters -----------------------------------------------------

def pool_csv(project: Project) -> str:
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(
        ["eid", "title", "year", "citation_count", "relevancy", "popularity", "curation", "note"]
    )
    scores = {s.eid: s for s in project.scores}
    for paper in project.pool:
        score = scores.get(paper.eid)
        writer.writerow(
            [
                paper.eid,
                paper.title,
                paper.year,
                paper.citation_count,
                score.relevancy if score else "",
                f"{score.popularity:.4f}" if score else "",
                paper.curation.value,
                paper.curation_note,
            ]
        )
    return out.getvalue()


def clusters_csv(project: Project) -> str:
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(
        ["cluster_id", "label", "members", "mention_count", "per_year", "is_noise", "curated"]
    )
    for cluster in project.clusters:
        per_year: dict[int, int] = {}
        for mention in cluster.mentions:
            per_year[mention.year] = per_year.get(mention.year, 0) + 1
        year_text = " ".join(f"{y}:{n}" for y, n in sorted(per_year.items()))
        writer.writerow(
            [
                cluster.id,
                cluster.label,
                " | ".join(cluster.members),
                cluster.mention_count,
                year_text,
                cluster.is_noise,
                cluster.curated,
            ]
        )
    return out.getvalue()


def clusters_json(project: Project) -> list[dict]:
    return [_cluster_to_dict(c) for c in project.clusters]
