"""Per-year trend tables over curated clusters and sensitivity reports.

A trend row counts method-paper pairs: each member name of a cluster
contributes one count per distinct paper mentioning it, and the paper's
relevancy/popularity scores are summed per pair. A paper mentioning two
member names therefore counts twice, which is how the reference corpus
tallies its class rows.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

from .clustering import MethodCluster
from .errors import EidMismatchError, IntegrityError
from .extraction import ExtractionResult
from .keywords import QueryString
from .scopus import Curation, PaperRecord, QueryResult
from .scoring import PaperScores
from .textnorm import normalize_method_name

ALL_TIME = "all_time"


@dataclass(frozen=True)
class TrendRow:
    cluster_id: str
    label: str
    year: int | str
    paper_count: int
    relevancy_sum: int
    popularity_sum: float


@dataclass
class TrendTable:
    rows: list[TrendRow]
    year_range: tuple[int, int] | None
    rankings: dict[str, list[dict]] = field(default_factory=dict)

    def cluster_rows(self, cluster_id: str) -> list[TrendRow]:
        return [r for r in self.rows if r.cluster_id == cluster_id]

    def all_time(self, cluster_id: str) -> TrendRow:
        for row in self.rows:
            if row.cluster_id == cluster_id and row.year == ALL_TIME:
                return row
        raise IntegrityError(f"no all-time row for cluster {cluster_id!r}")


def trend_table(
    clusters: list[MethodCluster],
    papers: list[PaperRecord],
    scores: list[PaperScores],
    year_range: tuple[int, int] | None = None,
) -> TrendTable:
    """Aggregate per-cluster, per-year counts plus an all-time row each.

    Mentions of excluded or included_general papers are invisible here; a
    mention pointing at an eid outside the pool is a data-integrity error.
    """
    paper_by_eid = {p.eid: p for p in papers}
    score_by_eid = {s.eid: s for s in scores}

    counted: dict[str, set[tuple[str, str]]] = {}
    for cluster in clusters:
        pairs: set[tuple[str, str]] = set()
        for mention in cluster.mentions:
            paper = paper_by_eid.get(mention.eid)
            if paper is None:
                raise IntegrityError(
                    f"cluster {cluster.id} mentions unknown eid {mention.eid}"
                )
            if paper.curation in (Curation.EXCLUDED, Curation.INCLUDED_GENERAL):
                continue
            if mention.eid not in score_by_eid:
                raise IntegrityError(f"paper {mention.eid} has no scores")
            pairs.add((mention.name, mention.eid))
        counted[cluster.id] = pairs

    years_seen = sorted(
        {
            paper_by_eid[eid].year
            for pairs in counted.values()
            for _, eid in pairs
        }
    )
    if year_range is None and years_seen:
        year_range = (years_seen[0], years_seen[-1])

    rows: list[TrendRow] = []
    totals: dict[str, tuple[int, int, float]] = {}
    for cluster in clusters:
        per_year: dict[int, list[float]] = {}
        for name, eid in counted[cluster.id]:
            year = paper_by_eid[eid].year
            score = score_by_eid[eid]
            cell = per_year.setdefault(year, [0, 0, 0.0])
            cell[0] += 1
            cell[1] += score.relevancy
            cell[2] += score.popularity
        span = range(year_range[0], year_range[1] + 1) if year_range else []
        for year in span:
            cell = per_year.get(year, [0, 0, 0.0])
            rows.append(
                TrendRow(cluster.id, cluster.label, year, int(cell[0]), int(cell[1]), cell[2])
            )
        total = (
            sum(c[0] for c in per_year.values()),
            sum(c[1] for c in per_year.values()),
            sum(c[2] for c in per_year.values()),
        )
        totals[cluster.id] = total
        rows.append(
            TrendRow(cluster.id, cluster.label, ALL_TIME, int(total[0]), int(total[1]), total[2])
        )

    rankings = {}
    for key, index in (("papers", 0), ("relevancy", 1), ("popularity", 2)):
        ordered = sorted(
            clusters, key=lambda c: (-totals[c.id][index], c.label.casefold(), c.id)
        )
        rankings[key] = [
            {"cluster_id": c.id, "label": c.label, "value": totals[c.id][index]}
            for c in ordered
        ]
    return TrendTable(rows=rows, year_range=year_range, rankings=rankings)


def trend_csv(table: TrendTable) -> str:
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["cluster_id", "label", "year", "papers", "relevancy_sum", "popularity_sum"])
    for row in table.rows:
        writer.writerow(
            [
                row.cluster_id,
                row.label,
                row.year,
                row.paper_count,
                row.relevancy_sum,
                f"{row.popularity_sum:.4f}",
            ]
        )
    return out.getvalue()


def trend_json(table: TrendTable) -> dict:
    series: dict[str, dict] = {}
    for row in table.rows:
        entry = series.setdefault(
            row.cluster_id, {"label": row.label, "years": [], "all_time": None}
        )
        cell = {
            "year": row.year,
            "papers": row.paper_count,
            "relevancy_sum": row.relevancy_sum,
            "popularity_sum": round(row.popularity_sum, 4),
        }
        if row.year == ALL_TIME:
            entry["all_time"] = cell
        else:
            entry["years"].append(cell)
    return {
        "year_range": list(table.year_range) if table.year_range else None,
        "clusters": series,
        "rankings": table.rankings,
    }


def plot_trends(table: TrendTable, out_path: str) -> list[str]:
    """Static per-year charts (papers / relevancy / popularity series)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    if not table.year_range:
        return []
    years = list(range(table.year_range[0], table.year_range[1] + 1))
    metrics = [
        ("papers", "paper_count", "Papers"),
        ("relevancy", "relevancy_sum", "Relevancy sum"),
        ("popularity", "popularity_sum", "Popularity sum"),
    ]
    stem, dot, ext = out_path.rpartition(".")
    if not stem:
        stem, ext = out_path, "png"
    written = []
    for key, attr, title in metrics:
        fig, ax = plt.subplots(figsize=(9, 5))
        by_cluster: dict[str, list[float]] = {}
        labels: dict[str, str] = {}
        for row in table.rows:
            if row.year == ALL_TIME:
                continue
            by_cluster.setdefault(row.cluster_id, [0.0] * len(years))
            labels[row.cluster_id] = row.label
            by_cluster[row.cluster_id][years.index(row.year)] = getattr(row, attr)
        for cluster_id, values in by_cluster.items():
            ax.plot(years, values, marker="o", label=labels[cluster_id])
        ax.set_xlabel("Year")
        ax.set_ylabel(title)
        ax.set_title(f"{title} per year")
        ax.legend(fontsize=6, ncol=2, loc="upper left")
        path = f"{stem}_{key}.{ext}"
        fig.savefig(path, bbox_inches="tight")
        plt.close(fig)
        written.append(path)
    return written


# -- sensitivity -------------------------------------------------------

@dataclass(frozen=True)
class QuerySensitivityRow:
    variant_query: QueryString
    papers_found: int
    common_with_initial: int


@dataclass(frozen=True)
class PromptSensitivityRow:
    prompt_id: str
    diff_word_count: int
    identical_article_count: int
    enriched_ratio: float  # math.inf when the outputs are identical


def query_sensitivity(
    initial: QueryResult, variants: list[QueryResult]
) -> list[QuerySensitivityRow]:
    initial_eids = {r.eid for r in initial.records}
    rows = []
    for variant in variants:
        common = sum(1 for r in variant.records if r.eid in initial_eids)
        rows.append(
            QuerySensitivityRow(
                variant_query=variant.query,
                papers_found=variant.total_found,
                common_with_initial=common,
            )
        )
    return rows


def enriched_ratio(diff_word_count: int, identical_article_count: int) -> float:
    if diff_word_count == 0:
        return math.inf
    return identical_article_count / diff_word_count


def prompt_sensitivity(
    baseline: list[ExtractionResult], variant: list[ExtractionResult]
) -> PromptSensitivityRow:
    """Compare two prompts' outputs at method-name granularity.

    Per paper the normalized name sets are diffed; a name changed between
    prompts counts once as missing and once as extra. The ratio goes to
    infinity when every article agrees.
    """
    base_by_eid = {r.eid: r for r in baseline}
    var_by_eid = {r.eid: r for r in variant}
    if set(base_by_eid) != set(var_by_eid):
        raise EidMismatchError("baseline and variant extraction cover different papers")
    diff = 0
    identical = 0
    for eid, base in base_by_eid.items():
        base_names = {normalize_method_name(m) for m in base.methods}
        var_names = {normalize_method_name(m) for m in var_by_eid[eid].methods}
        missing = base_names - var_names
        extra = var_names - base_names
        diff += len(missing) + len(extra)
        if not missing and not extra:
            identical += 1
    prompt_id = variant[0].prompt_id if variant else "variant"
    return PromptSensitivityRow(
        prompt_id=prompt_id,
        diff_word_count=diff,
        identical_article_count=identical,
        enriched_ratio=enriched_ratio(diff, identical),
    )


def query_sensitivity_csv(rows: list[QuerySensitivityRow]) -> str:
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["query", "papers_found", "common_with_initial"])
    for row in rows:
        writer.writerow([row.variant_query.text, row.papers_found, row.common_with_initial])
    return out.getvalue()


def prompt_sensitivity_csv(rows: list[PromptSensitivityRow]) -> str:
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["prompt_id", "diff_word_count", "identical_article_count", "enriched_ratio"])
    for row in rows:
        ratio = "inf" if math.isinf(row.enriched_ratio) else f"{row.enriched_ratio:.4f}"
        writer.writerow([row.prompt_id, row.diff_word_count, row.identical_article_count, ratio])
    return out.getvalue()
