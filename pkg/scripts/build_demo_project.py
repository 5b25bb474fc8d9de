"""Assemble the bundled demo project by replaying the fixture session.

Runs the full pipeline against fixtures/ (search, curation, scoring,
extraction for the initial and prompt-4 prompts, ground-truth import,
clustering plus the manual classification edits) and saves the result as
fixtures/demo/oncology.litscout.json. Every step is asserted against the
expected tables in demo_corpus before the file is written, so a
successful run re-certifies the bundled project.

Run: python scripts/build_demo_project.py
"""

from __future__ import annotations

import math
import os
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

os.environ.setdefault("LITSCOUT_FIXED_NOW", "2023-06-01T00:00:00Z")

import demo_corpus as corpus

from litscout import store
from litscout.analysis import prompt_sensitivity, query_sensitivity, trend_table
from litscout.clustering import ClusteringParams
from litscout.errors import LitScoutError
from litscout.evaluation import (
    GeneralTerms,
    GroundTruthEntry,
    aggregate_macro,
    aggregate_micro,
    classify_terms,
)
from litscout.extraction import PromptTemplate, ReplayBackend, extract_methods
from litscout.keywords import build_query, scheme_from_dict
from litscout.scopus import Curation, ScopusClient
from litscout.scoring import score_pool

FIXTURES = Path(__file__).parent.parent / "fixtures"


def close_enough(value: float, printed: float, tol: float = 1e-4) -> bool:
    return abs(round(value, 4) - printed) <= tol + 1e-9


def build() -> store.Project:
    import json

    scheme = scheme_from_dict(
        json.loads((FIXTURES / "schemes" / "oncology.json").read_text())
    )
    project = store.new_project("oncology-demo", scheme)
    project.query = build_query(scheme)
    assert project.query.text == corpus.INITIAL_QUERY

    client = ScopusClient(fixtures_dir=FIXTURES / "scopus")
    result = client.search(project.query)
    assert result.total_found == 92 and len(result.records) == 92
    store.merge_pool(project, result.records)

    for eid, *_ in corpus.POOL_ROWS:
        status = Curation(corpus.curation_for(eid))
        note = "" if status == Curation.INCLUDED else "manual triage"
        store.set_curation(project, eid, status, note)
    assert len(project.included_papers()) == 55

    project.reference_year = corpus.REFERENCE_YEAR
    project.scores = score_pool(project.pool, scheme, corpus.REFERENCE_YEAR)
    project.touch()

    backend = ReplayBackend(FIXTURES / "llm")
    templates = {
        pid: PromptTemplate(id=pid, template_text=text)
        for pid, text in corpus.PROMPT_TEMPLATES.items()
    }
    for prompt_id in ("initial", "prompt-4"):
        batch = extract_methods(project.pool, templates[prompt_id], backend)
        if batch.errors:
            raise LitScoutError(f"extraction errors: {batch.errors}")
        assert len(batch.results) == 55
        project.prompts[prompt_id] = templates[prompt_id]
        project.extractions[prompt_id] = {r.eid: r for r in batch.results}
    for eid, expected in corpus.EXTRACTIONS.items():
        got = project.extractions["initial"][eid].methods
        assert got == expected, (eid, got, expected)
    project.touch()

    project.ground_truth = [
        GroundTruthEntry(
            eid=eid,
            methods=corpus.ground_truth_methods(eid),
            aliases=corpus.ground_truth_aliases(eid),
        )
        for eid in corpus.GROUND_TRUTH
    ]
    project.general_terms = GeneralTerms.for_scheme(scheme, corpus.GENERAL_EXACT)
    project.touch()

    # determinants must reproduce the printed table row by row
    reports = []
    for truth in project.ground_truth:
        report = classify_terms(
            project.extractions["initial"][truth.eid], truth, project.general_terms
        )
        expected = corpus.DETERMINANTS[truth.eid]
        got = (
            report.total_manual,
            report.true_found,
            report.false_found,
            report.missing,
            report.true_general_found,
        )
        assert got == expected, (truth.eid, got, expected)
        reports.append(report)
    micro = aggregate_micro(reports)
    macro = aggregate_macro(reports)
    assert (micro.tp, micro.fp, micro.fn) == corpus.ONCOLOGY_POOLED_COUNTS
    for got, printed in zip(
        (micro.precision, micro.recall, micro.f1), corpus.ONCOLOGY_MICRO
    ):
        assert close_enough(got, printed), (got, printed)
    for got, printed in zip(
        (macro.precision, macro.recall, macro.f1), corpus.ONCOLOGY_MACRO
    ):
        assert close_enough(got, printed, tol=5e-4), (got, printed)

    # machine clustering, then the manual classification edits
    store.recluster(project, "initial", ClusteringParams())
    moves = [
        {"op": "move_mention", "eid": eid, "name": name, "to_label": label}
        for label, pairs in corpus.CLUSTER_PLAN
        for name, eid in pairs
    ]
    store.apply_cluster_edits(project, moves)
    keep_labels = {label for label, _ in corpus.CLUSTER_PLAN}
    drops = [
        {"op": "drop", "id": c.id}
        for c in project.clusters
        if not (c.curated and c.label in keep_labels)
    ]
    store.apply_cluster_edits(project, drops)
    assert {c.label for c in project.clusters} == keep_labels

    table = trend_table(project.clusters, project.pool, project.scores)
    label_to_id = {c.label: c.id for c in project.clusters}
    for label, expected_rows in corpus.TREND_EXPECTED.items():
        rows = {r.year: r for r in table.cluster_rows(label_to_id[label])}
        for year, (papers, rel, pop) in expected_rows.items():
            row = rows[year]
            assert row.paper_count == papers, (label, year, row)
            assert row.relevancy_sum == rel, (label, year, row)
            assert close_enough(row.popularity_sum, pop), (label, year, row)
    for key, expected_groups in corpus.RANKING_EXPECTED.items():
        ranked = table.rankings[key]
        flattened = [entry["label"] for entry in ranked]
        position = 0
        for group in expected_groups:
            chunk = set(flattened[position : position + len(group)])
            assert chunk == set(group), (key, group, chunk)
            position += len(group)

    # prompt-4 comparison against the initial prompt
    row = prompt_sensitivity(
        list(project.extractions["initial"].values()),
        list(project.extractions["prompt-4"].values()),
    )
    assert (row.diff_word_count, row.identical_article_count) == (31, 41), row
    assert close_enough(row.enriched_ratio, 1.3226)

    # query variants against their fixtures
    variants = []
    for _vid, text, _total, _common in corpus.QUERY_VARIANTS:
        variants.append(client.search(type(project.query)(text)))
    rows = query_sensitivity(result, variants)
    for (vid, _text, total, common), srow in zip(corpus.QUERY_VARIANTS, rows):
        assert (srow.papers_found, srow.common_with_initial) == (total, common), vid

    identical = prompt_sensitivity(
        list(project.extractions["initial"].values()),
        list(project.extractions["initial"].values()),
    )
    assert math.isinf(identical.enriched_ratio)

    return project


def main() -> None:
    corpus.check_tables()
    project = build()
    out = FIXTURES / "demo" / "oncology.litscout.json"
    store.save(project, out)
    reloaded = store.load(out)
    assert store.dumps_project(reloaded) == store.dumps_project(project)
    print(f"demo project written to {out} (revision {project.revision})")


if __name__ == "__main__":
    main()
