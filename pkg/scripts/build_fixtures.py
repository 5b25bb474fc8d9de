"""Build the bundled fixture set from the demo corpus tables.

Writes, under fixtures/:
  scopus/       replay documents for the initial query and five variants
  llm/          replay completions for the initial and prompt-4 prompts
  schemes/      keyword schemes (oncology plus the three other domains)
  ground_truth/ manual method lists with matcher hints
  curation/     bulk curation statuses for the oncology pool
  evaluation/   pooled per-paper determinants for the other domains
  sensitivity/  query-variant list and prompt comparison counts

Abstracts are synthesized (real abstracts are not redistributable):
each names the paper's methods and carries the level-2 phrase exactly
when the paper's relevancy should be 1. The builder verifies that the
scoring pipeline reproduces every relevancy and popularity target before
writing anything.

Run: python scripts/build_fixtures.py [--out fixtures]
"""

from __future__ import annotations

import argparse
import json
import shutil
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import demo_corpus as corpus

from litscout.extraction import PromptTemplate, ReplayBackend, render_prompt
from litscout.keywords import build_query, scheme_from_dict
from litscout.scopus import FIXTURE_SCHEMA_VERSION, FixtureStore, parse_response
from litscout.scoring import popularity, relevancy

FIXED_FETCH_TIME = "2023-06-01T00:00:00Z"

SCHEMES = {
    "oncology": {
        "problem_l1": [["oncology"]],
        "solution_l1": [["artificial intelligence", "AI"]],
        "solution_l2": [["image processing"]],
        "doc_types": ["ar", "cp"],
        "min_year_exclusive": 2013,
    },
    "oncology-nlp": {
        "problem_l1": [["oncology"]],
        "solution_l1": [["artificial intelligence", "AI"]],
        "solution_l2": [["natural language processing", "NLP"]],
        "doc_types": ["ar", "cp"],
        "min_year_exclusive": 2013,
    },
    "traffic-control": {
        "problem_l1": [["traffic control"]],
        "solution_l1": [["artificial intelligence", "AI"]],
        "solution_l2": [["image processing"]],
        "doc_types": ["ar", "cp"],
        "min_year_exclusive": 2013,
    },
    "satellite-imagery": {
        "problem_l1": [["satellite imagery"]],
        "solution_l1": [["artificial intelligence", "AI"]],
        "solution_l2": [["image processing"]],
        "doc_types": ["ar", "cp"],
        "min_year_exclusive": 2013,
    },
}

EXPECTED_QUERIES = {
    "oncology": corpus.INITIAL_QUERY,
    "oncology-nlp": 'TITLE-ABS-KEY(("oncology") AND ("artificial intelligence" OR "AI") AND ("natural language processing" OR "NLP")) AND DOCTYPE(ar OR cp) AND PUBYEAR > 2013',
    "traffic-control": 'TITLE-ABS-KEY(("traffic control") AND ("artificial intelligence" OR "AI") AND ("image processing")) AND DOCTYPE(ar OR cp) AND PUBYEAR > 2013',
    "satellite-imagery": 'TITLE-ABS-KEY(("satellite imagery") AND ("artificial intelligence" OR "AI") AND ("image processing")) AND DOCTYPE(ar OR cp) AND PUBYEAR > 2013',
}

LEADS = [
    "This study targets computer-assisted diagnosis in clinical imaging workflows",
    "We report an automated decision-support approach for lesion assessment",
    "The work investigates classifier behaviour on dermoscopic material",
    "A reproducible analysis pipeline for tumour imagery is presented",
    "This article examines quantitative assessment of diagnostic scans",
]

# papers whose level-2 phrase should sit in the author keywords rather
# than the abstract text, to exercise the keyword matching path
PHRASE_IN_KEYWORDS = {
    "2-s2.0-84944318438",
    "2-s2.0-85039912655",
    "2-s2.0-85123369429",
    "2-s2.0-85125529381",
}

# records carrying database-indexed terms absent from title/abstract
# (relevancy 0 without the index-terms flag, 1 with it)
INDEX_TERM_CASES = {
    "2-s2.0-84918834255": ["image processing", "neural networks"],
    "2-s2.0-85028633382": ["image processing", "medical imaging"],
}


def method_names_for(eid: str) -> list[str]:
    """Methods the synthesized abstract should mention: everything the
    manual reader found, plus extra names the backend reported."""
    truth = corpus.ground_truth_methods(eid) if eid in corpus.GROUND_TRUTH else []
    extracted = corpus.EXTRACTIONS.get(eid, [])
    names = list(truth)
    for name in extracted:
        if name not in names:
            names.append(name)
    return names


def synth_abstract(idx: int, eid: str, relevancy_target: int) -> str:
    lead = LEADS[idx % len(LEADS)]
    sentences = [f"{lead}."]
    names = method_names_for(eid)
    if names:
        if len(names) == 1:
            sentences.append(f"The approach builds on {names[0]}.")
        else:
            sentences.append(
                "The approach builds on " + ", ".join(names[:-1]) + f" and {names[-1]}."
            )
    else:
        sentences.append("The applied methodology is described in the full text.")
    if relevancy_target == 1 and eid not in PHRASE_IN_KEYWORDS:
        sentences.append("An image processing stage prepares the raw data.")
    sentences.append("Evaluation on retrospective cases shows encouraging accuracy.")
    return " ".join(sentences)


def pool_entries() -> list[dict]:
    entries = []
    for idx, (eid, title, year, citations, rel) in enumerate(corpus.POOL_ROWS):
        keywords = ["computer-aided diagnosis"]
        if rel == 1 and eid in PHRASE_IN_KEYWORDS:
            keywords.append("image processing")
        cover_date = f"{year}-01-01"
        if eid == "2-s2.0-85123369429":
            cover_date = f"{year}-03-15"
        entry = {
            "eid": eid,
            "dc:title": title,
            "dc:description": synth_abstract(idx, eid, rel),
            "prism:coverDate": cover_date,
            "citedby-count": str(citations),
            "authkeywords": " | ".join(keywords),
            "subtype": "ar",
        }
        if eid in INDEX_TERM_CASES:
            entry["idxterms"] = " | ".join(INDEX_TERM_CASES[eid])
        entries.append(entry)
    return entries


def synthetic_entries(prefix: str, count: int, start: int = 0) -> list[dict]:
    entries = []
    for i in range(start, start + count):
        year = 2014 + (i % 10)
        entries.append(
            {
                "eid": f"2-s2.0-{prefix}{i:07d}",
                "dc:title": f"Automated analysis study {i}",
                "prism:coverDate": f"{year}-01-01",
                "citedby-count": str((i * 7) % 40),
                "subtype": "ar",
            }
        )
    return entries


def write_scopus_fixtures(out: Path, pool: list[dict]) -> None:
    store = FixtureStore(out / "scopus")
    for variant_id, query_text, total, common in corpus.QUERY_VARIANTS:
        if variant_id in ("initial", "braces"):
            entries = pool
        elif total <= len(pool):
            entries = pool[:common]
        else:
            entries = pool[:common] + synthetic_entries(
                {"cancer": "70", "machine-learning": "71"}[variant_id], total - common
            )
        assert len(entries) == (total if total >= common else common)
        store.save(
            query_text,
            {
                "schema_version": FIXTURE_SCHEMA_VERSION,
                "fetched_at": FIXED_FETCH_TIME,
                "response": {
                    "search-results": {
                        "opensearch:totalResults": str(total),
                        "entry": entries,
                    }
                },
            },
        )


def prompt4_methods(eid: str) -> list[str]:
    baseline = corpus.EXTRACTIONS[eid]
    removed, added = corpus.PROMPT4_CHANGES.get(eid, ([], []))
    return [m for m in baseline if m not in removed] + list(added)


def write_llm_fixtures(out: Path, pool_records) -> None:
    backend = ReplayBackend(out / "llm")
    templates = {
        pid: PromptTemplate(id=pid, template_text=text)
        for pid, text in corpus.PROMPT_TEMPLATES.items()
    }
    by_eid = {r.eid: r for r in pool_records}
    for eid in corpus.included_eids():
        record = by_eid[eid]
        for prompt_id, methods in (
            ("initial", corpus.EXTRACTIONS[eid]),
            ("prompt-4", prompt4_methods(eid)),
        ):
            prompt = render_prompt(templates[prompt_id], record)
            backend.record(prompt_id, prompt, ", ".join(methods))


def write_json(path: Path, payload) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(payload, indent=2, ensure_ascii=False, sort_keys=True) + "\n",
        encoding="utf-8",
    )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=Path(__file__).parent.parent / "fixtures")
    args = parser.parse_args()
    out = Path(args.out)

    corpus.check_tables()

    if out.exists():
        shutil.rmtree(out)
    out.mkdir(parents=True)

    for name, scheme_doc in SCHEMES.items():
        write_json(out / "schemes" / f"{name}.json", scheme_doc)
        compiled = build_query(scheme_from_dict(scheme_doc)).text
        assert compiled == EXPECTED_QUERIES[name], (name, compiled)

    pool = pool_entries()
    write_scopus_fixtures(out, pool)

    # round-trip the pool through the parser and verify the score targets
    scheme = scheme_from_dict(SCHEMES["oncology"])
    total, records, skipped = parse_response(
        {"search-results": {"opensearch:totalResults": "92", "entry": pool}}
    )
    assert total == 92 and len(records) == 92 and not skipped
    targets = {row[0]: row[4] for row in corpus.POOL_ROWS}
    for record in records:
        got = relevancy(record, scheme)
        assert got == targets[record.eid], (record.eid, got, targets[record.eid])
        printed = corpus.POPULARITY_PRINTED[record.eid]
        assert abs(popularity(record, corpus.REFERENCE_YEAR) - printed) <= 1e-4, record.eid

    write_llm_fixtures(out, records)

    write_json(
        out / "ground_truth" / "oncology.json",
        {
            "general_terms_exact": corpus.GENERAL_EXACT,
            "papers": {
                eid: [
                    {"name": name, "aliases": aliases} if aliases else name
                    for name, aliases in (
                        (m, corpus.ground_truth_aliases(eid).get(m, []))
                        for m in corpus.ground_truth_methods(eid)
                    )
                ]
                for eid in corpus.GROUND_TRUTH
            },
        },
    )

    write_json(
        out / "curation" / "oncology.json",
        {
            "set": [
                {
                    "eid": eid,
                    "status": corpus.curation_for(eid),
                    "note": {
                        "excluded": "irrelevant, not technical or survey-only",
                        "included_general": "applies a method without naming it",
                        "included": "",
                    }[corpus.curation_for(eid)],
                }
                for eid, *_ in corpus.POOL_ROWS
            ]
        },
    )

    write_json(
        out / "sensitivity" / "query_variants.json",
        {
            "initial": corpus.INITIAL_QUERY,
            "variants": [
                {"id": vid, "query": text}
                for vid, text, _total, _common in corpus.QUERY_VARIANTS
            ],
        },
    )
    write_json(
        out / "sensitivity" / "prompt_counts.json",
        {
            "rows": [
                {
                    "prompt_id": pid,
                    "diff_word_count": diff,
                    "identical_article_count": same,
                }
                for pid, diff, same in corpus.PROMPT_SENSITIVITY_COUNTS
            ]
        },
    )

    for domain, (_metrics, rows) in corpus.DOMAIN_EVAL.items():
        write_json(
            out / "evaluation" / f"{domain}.json",
            {
                "domain": domain,
                "papers": [
                    {"eid": f"2-s2.0-9{i:07d}", "tp": tp, "fp": fp, "fn": fn}
                    for i, (tp, fp, fn) in enumerate(rows)
                ],
            },
        )

    write_json(
        out / "prompts" / "templates.json",
        {
            pid: {"template_text": text, "temperature": 0.0, "max_tokens": 256}
            for pid, text in corpus.PROMPT_TEMPLATES.items()
        },
    )

    n_files = sum(1 for _ in out.rglob("*.json"))
    print(f"fixtures written to {out} ({n_files} files)")


if __name__ == "__main__":
    main()
