"""Command-line front end for the review pipeline.

Every command loads the project file, applies one pipeline step through
the same core functions the HTTP service uses, and writes the project
back, so the two front ends are interchangeable. Errors print a
machine-readable payload on stderr; exit code 1 means total failure,
exit code 2 a partial batch failure.
"""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path

import click

from . import store
from .analysis import (
    PromptSensitivityRow,
    enriched_ratio,
    plot_trends,
    prompt_sensitivity,
    prompt_sensitivity_csv,
    query_sensitivity,
    query_sensitivity_csv,
    trend_csv,
    trend_json,
    trend_table,
)
from .clustering import ClusteringParams
from .config import Settings
from .errors import ConfigurationError, LitScoutError, UnknownIdError
from .evaluation import (
    GeneralTerms,
    aggregate_macro,
    aggregate_micro,
    classify_terms,
    evaluation_report_json,
    ground_truth_from_dict,
    paper_metrics,
)
from .extraction import PromptTemplate, ReplayBackend, LiveBackend, extract_methods
from .keywords import build_query, direct_query, scheme_from_dict, validate_scheme
from .scopus import Curation, QueryString, ScopusClient
from .scoring import score_pool


def _fail(error: Exception, code: int = 1) -> None:
    if isinstance(error, LitScoutError):
        payload = error.as_api_error()
    else:
        payload = {"code": "internal", "message": str(error)}
    click.echo(json.dumps(payload), err=True)
    sys.exit(code)


def _load(project_path: str) -> store.Project:
    return store.load(project_path)


def _save(project: store.Project, project_path: str) -> None:
    with store.ProjectLock(project_path):
        store.save(project, project_path)


def _scopus_client(settings: Settings, fixtures: str | None) -> ScopusClient:
    fixtures = fixtures or settings.scopus_fixtures()
    return ScopusClient(fixtures_dir=fixtures, rate_per_second=settings.scopus_rate_per_second)


def _llm_backend(settings: Settings, fixtures: str | None):
    fixtures = fixtures or settings.llm_fixtures()
    if fixtures:
        return ReplayBackend(fixtures)
    return LiveBackend(model=settings.llm_model, endpoint=settings.llm_endpoint)


def _template(project: store.Project, prompt_id: str, templates_file: str | None) -> PromptTemplate:
    if templates_file:
        data = json.loads(Path(templates_file).read_text(encoding="utf-8"))
        if prompt_id not in data:
            raise UnknownIdError(f"no template {prompt_id!r} in {templates_file}")
        spec = data[prompt_id]
        return PromptTemplate(
            id=prompt_id,
            template_text=spec["template_text"],
            temperature=spec.get("temperature", 0.0),
            max_tokens=spec.get("max_tokens", 256),
        )
    if prompt_id in project.prompts:
        return project.prompts[prompt_id]
    if prompt_id == "initial":
        return PromptTemplate()
    raise UnknownIdError(f"unknown prompt template {prompt_id!r}")


@click.group()
@click.option("--config", "config_path", default=None, help="JSON config file with defaults.")
@click.pass_context
def main(ctx, config_path):
    """Literature recommender pipeline."""
    ctx.obj = Settings.load(config_path)


@main.command()
@click.option("--scheme", "scheme_file", required=True, type=click.Path(exists=True))
@click.option("--project", "project_path", required=True)
@click.option("--id", "project_id", default=None)
@click.option("--query", "raw_query", default=None, help="Expert-supplied raw query override.")
def init(scheme_file, project_path, project_id, raw_query):
    """Create a project file from a keyword scheme document."""
    try:
        scheme = scheme_from_dict(json.loads(Path(scheme_file).read_text(encoding="utf-8")))
        findings = validate_scheme(scheme)
        if findings and raw_query is None:
            raise LitScoutError(
                "scheme failed validation", detail=[f.as_dict() for f in findings]
            )
        project = store.new_project(project_id or Path(project_path).stem.split(".")[0], scheme)
        if raw_query is not None:
            project.query = direct_query(raw_query)
            project.query_is_direct = True
        else:
            project.query = build_query(scheme)
        store.save(project, project_path)
        click.echo(f"created {project_path} (query: {project.query.text})")
    except Exception as exc:  # noqa: BLE001
        _fail(exc)


@main.command()
@click.option("--project", "project_path", required=True, type=click.Path(exists=True))
@click.option("--fixtures", default=None, help="Replay fixture directory (scopus).")
@click.option("--limit", default=None, type=int)
@click.pass_obj
def search(settings, project_path, fixtures, limit):
    """Run or re-run the query; curation survives by EID."""
    try:
        project = _load(project_path)
        if project.query is None:
            project.query = build_query(project.scheme)
        client = _scopus_client(settings, fixtures)
        result = client.search(project.query, limit=limit)
        store.merge_pool(project, result.records)
        _save(project, project_path)
        click.echo(f"total_found={result.total_found} fetched={len(result.records)}")
    except Exception as exc:  # noqa: BLE001
        _fail(exc)


@main.command()
@click.option("--project", "project_path", required=True, type=click.Path(exists=True))
@click.option("--eid", default=None)
@click.option(
    "--status", default=None, type=click.Choice([c.value for c in Curation])
)
@click.option("--note", default="")
@click.option("--from", "from_file", default=None, type=click.Path(exists=True))
def curate(project_path, eid, status, note, from_file):
    """Set curation for one paper, or bulk-apply from a JSON document."""
    try:
        project = _load(project_path)
        if from_file:
            data = json.loads(Path(from_file).read_text(encoding="utf-8"))
            for item in data.get("set", []):
                store.set_curation(
                    project, item["eid"], Curation(item["status"]), item.get("note", "")
                )
            click.echo(f"applied {len(data.get('set', []))} curation entries")
        elif eid and status:
            store.set_curation(project, eid, Curation(status), note)
            click.echo(f"{eid} -> {status}")
        else:
            raise ConfigurationError("provide --eid/--status or --from FILE")
        _save(project, project_path)
        counts = {c.value: 0 for c in Curation}
        for paper in project.pool:
            counts[paper.curation.value] += 1
        click.echo(json.dumps(counts))
    except Exception as exc:  # noqa: BLE001
        _fail(exc)


@main.command()
@click.option("--project", "project_path", required=True, type=click.Path(exists=True))
@click.option("--ref-year", "reference_year", required=True, type=int)
@click.option("--include-index-terms", is_flag=True, default=False)
def score(project_path, reference_year, include_index_terms):
    """Compute relevancy and popularity for every paper in the pool."""
    try:
        project = _load(project_path)
        project.scores = score_pool(
            project.pool, project.scheme, reference_year, include_index_terms
        )
        project.reference_year = reference_year
        project.touch()
        _save(project, project_path)
        click.echo(f"scored {len(project.scores)} papers (reference year {reference_year})")
    except Exception as exc:  # noqa: BLE001
        _fail(exc)


@main.command()
@click.option("--project", "project_path", required=True, type=click.Path(exists=True))
@click.option("--prompt", "prompt_id", default="initial")
@click.option("--templates", "templates_file", default=None, type=click.Path(exists=True))
@click.option("--fixtures", default=None, help="Replay fixture directory (llm).")
@click.pass_obj
def extract(settings, project_path, prompt_id, templates_file, fixtures):
    """Extract method names for included papers via the LLM backend."""
    try:
        project = _load(project_path)
        template = _template(project, prompt_id, templates_file)
        backend = _llm_backend(settings, fixtures)
        batch = extract_methods(
            project.pool, template, backend, max_workers=settings.extract_workers
        )
        project.prompts[prompt_id] = template
        project.extractions[prompt_id] = {r.eid: r for r in batch.results}
        project.touch()
        _save(project, project_path)
        click.echo(f"extracted {len(batch.results)} papers under prompt {prompt_id!r}")
        if batch.errors:
            for bad_eid, err in sorted(batch.errors.items()):
                click.echo(f"failed {bad_eid}: {err}", err=True)
            sys.exit(2)
    except Exception as exc:  # noqa: BLE001
        _fail(exc)


@main.command()
@click.option("--project", "project_path", required=True, type=click.Path(exists=True))
@click.option("--truth", "truth_file", required=True, type=click.Path(exists=True))
@click.option("--prompt", "prompt_id", default="initial")
@click.option("--fuzzy", is_flag=True, default=False)
def evaluate(project_path, truth_file, prompt_id, fuzzy):
    """Classify extractions against manual ground truth and print metrics."""
    try:
        project = _load(project_path)
        raw = json.loads(Path(truth_file).read_text(encoding="utf-8"))
        extras = raw.get("general_terms_exact", []) if isinstance(raw, dict) else []
        payload = raw.get("papers", raw) if isinstance(raw, dict) else raw
        project.ground_truth = ground_truth_from_dict(payload)
        project.general_terms = GeneralTerms.for_scheme(project.scheme, extras)
        extractions = project.extractions.get(prompt_id, {})
        reports = []
        for truth in project.ground_truth:
            if truth.eid not in extractions:
                raise UnknownIdError(f"no extraction for {truth.eid} under {prompt_id!r}")
            reports.append(
                classify_terms(extractions[truth.eid], truth, project.general_terms, fuzzy)
            )
        for report in reports:
            m = paper_metrics(report)
            click.echo(
                f"{report.eid} manual={report.total_manual} true={report.true_found} "
                f"false={report.false_found} general={report.true_general_found} "
                f"missing={report.missing} P={m.precision:.4f} R={m.recall:.4f} F1={m.f1:.4f}"
            )
        micro = aggregate_micro(reports)
        macro = aggregate_macro(reports)
        click.echo(
            f"micro: precision={micro.precision:.4f} recall={micro.recall:.4f} f1={micro.f1:.4f} "
            f"(tp={micro.tp} fp={micro.fp} fn={micro.fn})"
        )
        click.echo(
            f"macro: precision={macro.precision:.4f} recall={macro.recall:.4f} f1={macro.f1:.4f}"
        )
        project.analyses[f"evaluation:{prompt_id}"] = evaluation_report_json(reports)
        _save(project, project_path)
    except Exception as exc:  # noqa: BLE001
        _fail(exc)


@main.command()
@click.option("--project", "project_path", required=True, type=click.Path(exists=True))
@click.option("--prompt", "prompt_id", default="initial")
@click.option("--eps", default=0.2, type=float)
@click.option("--min-samples", default=2, type=int)
@click.option("--drop-singletons", is_flag=True, default=False)
@click.option("--per-mention-density/--per-name-density", default=True,
              help="Count duplicate mentions toward the density threshold.")
def cluster(project_path, prompt_id, eps, min_samples, drop_singletons, per_mention_density):
    """Group extracted method names by string similarity."""
    try:
        project = _load(project_path)
        params = ClusteringParams(
            eps=eps, min_samples=min_samples, weight_by_mentions=per_mention_density
        )
        store.recluster(project, prompt_id, params)
        if drop_singletons:
            store.apply_cluster_edits(project, [{"op": "drop_singletons"}])
        _save(project, project_path)
        noise = sum(1 for c in project.clusters if c.is_noise)
        click.echo(f"{len(project.clusters)} clusters ({noise} noise singletons)")
    except Exception as exc:  # noqa: BLE001
        _fail(exc)


@main.command()
@click.option("--project", "project_path", required=True, type=click.Path(exists=True))
@click.option("--from", "from_year", default=None, type=int)
@click.option("--to", "to_year", default=None, type=int)
@click.option("--plot", "plot_path", default=None)
@click.option("--out", "out_file", default=None)
def trends(project_path, from_year, to_year, plot_path, out_file):
    """Per-cluster per-year trend table (papers / relevancy / popularity)."""
    try:
        project = _load(project_path)
        year_range = (from_year, to_year) if from_year and to_year else None
        table = trend_table(project.clusters, project.pool, project.scores, year_range)
        csv_text = trend_csv(table)
        if out_file:
            Path(out_file).write_text(csv_text, encoding="utf-8")
            click.echo(f"wrote {out_file}")
        else:
            click.echo(csv_text, nl=False)
        if plot_path:
            for path in plot_trends(table, plot_path):
                click.echo(f"wrote {path}")
    except Exception as exc:  # noqa: BLE001
        _fail(exc)


@main.group()
def sensitivity():
    """Query and prompt sensitivity reports."""


@sensitivity.command("queries")
@click.argument("variants_file", type=click.Path(exists=True))
@click.option("--project", "project_path", required=True, type=click.Path(exists=True))
@click.option("--fixtures", default=None)
@click.pass_obj
def sensitivity_queries(settings, variants_file, project_path, fixtures):
    """Fetch each variant query and compare pools with the initial one."""
    try:
        project = _load(project_path)
        data = json.loads(Path(variants_file).read_text(encoding="utf-8"))
        client = _scopus_client(settings, fixtures)
        initial = client.search(QueryString(data["initial"]))
        variants = [client.search(QueryString(v["query"])) for v in data["variants"]]
        rows = query_sensitivity(initial, variants)
        click.echo(query_sensitivity_csv(rows), nl=False)
        project.analyses["sensitivity:queries"] = [
            {
                "query": r.variant_query.text,
                "papers_found": r.papers_found,
                "common_with_initial": r.common_with_initial,
            }
            for r in rows
        ]
        _save(project, project_path)
    except Exception as exc:  # noqa: BLE001
        _fail(exc)


@sensitivity.command("prompts")
@click.argument("spec_file", type=click.Path(exists=True))
@click.option("--project", "project_path", required=True, type=click.Path(exists=True))
def sensitivity_prompts(spec_file, project_path):
    """Compare prompt runs; accepts precomputed count rows or prompt ids."""
    try:
        project = _load(project_path)
        data = json.loads(Path(spec_file).read_text(encoding="utf-8"))
        rows: list[PromptSensitivityRow] = []
        if "rows" in data:
            for item in data["rows"]:
                rows.append(
                    PromptSensitivityRow(
                        prompt_id=item["prompt_id"],
                        diff_word_count=item["diff_word_count"],
                        identical_article_count=item["identical_article_count"],
                        enriched_ratio=enriched_ratio(
                            item["diff_word_count"], item["identical_article_count"]
                        ),
                    )
                )
        else:
            baseline_id = data.get("baseline", "initial")
            baseline = list(project.extractions.get(baseline_id, {}).values())
            for variant_id in data.get("variants", []):
                variant = list(project.extractions.get(variant_id, {}).values())
                rows.append(prompt_sensitivity(baseline, variant))
        click.echo(prompt_sensitivity_csv(rows), nl=False)
        project.analyses["sensitivity:prompts"] = [
            {
                "prompt_id": r.prompt_id,
                "diff_word_count": r.diff_word_count,
                "identical_article_count": r.identical_article_count,
                "enriched_ratio": "inf" if math.isinf(r.enriched_ratio) else round(r.enriched_ratio, 4),
            }
            for r in rows
        ]
        _save(project, project_path)
    except Exception as exc:  # noqa: BLE001
        _fail(exc)


@main.command()
@click.option("--project", "project_path", required=True, type=click.Path(exists=True))
@click.option("--what", required=True, type=click.Choice(["pool", "evaluation", "clusters", "trends"]))
@click.option("--format", "fmt", default="csv", type=click.Choice(["csv", "json"]))
@click.option("--out", "out_file", default=None)
@click.option("--prompt", "prompt_id", default="initial")
def export(project_path, what, fmt, out_file, prompt_id):
    """Export pool / evaluation / clusters / trends as CSV or JSON."""
    try:
        project = _load(project_path)
        text = _export_text(project, what, fmt, prompt_id)
        if out_file:
            Path(out_file).write_text(text, encoding="utf-8")
            click.echo(f"wrote {out_file}")
        else:
            click.echo(text, nl=False)
    except Exception as exc:  # noqa: BLE001
        _fail(exc)


def _export_text(project: store.Project, what: str, fmt: str, prompt_id: str) -> str:
    if what == "pool":
        if fmt == "csv":
            return store.pool_csv(project)
        return json.dumps(store.project_to_dict(project)["pool"], indent=2) + "\n"
    if what == "clusters":
        if fmt == "csv":
            return store.clusters_csv(project)
        return json.dumps(store.clusters_json(project), indent=2) + "\n"
    if what == "trends":
        table = trend_table(project.clusters, project.pool, project.scores)
        if fmt == "csv":
            return trend_csv(table)
        return json.dumps(trend_json(table), indent=2) + "\n"
    # evaluation
    cached = project.analyses.get(f"evaluation:{prompt_id}")
    if cached is None:
        raise UnknownIdError(
            f"no stored evaluation for prompt {prompt_id!r}; run `evaluate` first"
        )
    if fmt == "json":
        return json.dumps(cached, indent=2) + "\n"
    import csv as csv_mod
    import io

    out = io.StringIO()
    rows = [dict(r) for r in cached["papers"]]
    for row in rows:
        row.pop("matched_pairs", None)
    writer = csv_mod.DictWriter(out, fieldnames=list(rows[0].keys()) if rows else ["eid"])
    writer.writeheader()
    writer.writerows(rows)
    return out.getvalue()


@main.command()
@click.option("--port", default=8000, type=int)
@click.option("--host", default="127.0.0.1")
@click.option("--projects", "projects_dir", default="projects")
@click.pass_obj
def serve(settings, port, host, projects_dir):
    """Start the HTTP service (and the review UI when bundled)."""
    import uvicorn

    from .service import create_app

    app = create_app(projects_dir, settings)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
