import math

import pytest
from hypothesis import given, settings, strategies as st

from litscout.analysis import (
    ALL_TIME,
    enriched_ratio,
    prompt_sensitivity,
    prompt_sensitivity_csv,
    query_sensitivity,
    trend_csv,
    trend_json,
    trend_table,
)
from litscout.clustering import MethodCluster, MethodMention
from litscout.errors import EidMismatchError, IntegrityError
from litscout.extraction import ExtractionResult
from litscout.keywords import QueryString
from litscout.scopus import Curation, PaperRecord, QueryResult
from litscout.scoring import PaperScores


def record(eid, year=2021, curation=Curation.INCLUDED):
    return PaperRecord(eid=eid, title=f"paper {eid}", year=year, curation=curation)


def scores_for(papers, relevancies, popularities):
    return [
        PaperScores(eid=p.eid, relevancy=r, popularity=pop, reference_year=2023)
        for p, r, pop in zip(papers, relevancies, popularities)
    ]


def cluster(cid, label, mention_pairs):
    return MethodCluster(
        id=cid,
        label=label,
        members=sorted({name for name, _ in mention_pairs}),
        mentions=[MethodMention(name, eid, 0) for name, eid in mention_pairs],
        curated=True,
    )


class TestTrendTable:
    def test_single_paper_cluster(self):
        papers = [record("2-s2.0-1", year=2021)]
        scores = scores_for(papers, [1], [0.3333])
        clusters = [cluster("c1", "CNN", [("CNN", "2-s2.0-1")])]
        table = trend_table(clusters, papers, scores)
        year_row = [r for r in table.rows if r.year == 2021][0]
        assert (year_row.paper_count, year_row.relevancy_sum) == (1, 1)
        assert year_row.popularity_sum == pytest.approx(0.3333)
        total = table.all_time("c1")
        assert (total.paper_count, total.relevancy_sum) == (1, 1)
        assert total.popularity_sum == pytest.approx(0.3333)

    def test_paper_counted_once_per_member_name(self):
        # two member names from one paper count twice; repeated mentions
        # of one name in one paper count once
        papers = [record("2-s2.0-1", year=2020)]
        scores = scores_for(papers, [1], [6.0])
        clusters = [
            cluster(
                "c1",
                "Logit",
                [("Logistic Regression", "2-s2.0-1"), ("LIPU", "2-s2.0-1"),
                 ("LIPU", "2-s2.0-1")],
            )
        ]
        table = trend_table(clusters, papers, scores)
        total = table.all_time("c1")
        assert total.paper_count == 2
        assert total.popularity_sum == pytest.approx(12.0)

    def test_excluded_and_general_papers_invisible(self):
        papers = [
            record("2-s2.0-1", year=2020),
            record("2-s2.0-2", year=2020, curation=Curation.EXCLUDED),
            record("2-s2.0-3", year=2020, curation=Curation.INCLUDED_GENERAL),
        ]
        scores = scores_for(papers, [1, 1, 1], [1.0, 1.0, 1.0])
        clusters = [
            cluster("c1", "CNN", [("CNN", "2-s2.0-1"), ("CNN", "2-s2.0-2"), ("CNN", "2-s2.0-3")])
        ]
        table = trend_table(clusters, papers, scores)
        assert table.all_time("c1").paper_count == 1

    def test_dangling_eid_is_integrity_error(self):
        papers = [record("2-s2.0-1")]
        scores = scores_for(papers, [0], [0.0])
        clusters = [cluster("c1", "CNN", [("CNN", "2-s2.0-404")])]
        with pytest.raises(IntegrityError):
            trend_table(clusters, papers, scores)

    def test_zero_filled_year_range(self):
        papers = [record("2-s2.0-1", year=2020)]
        scores = scores_for(papers, [0], [2.0])
        clusters = [cluster("c1", "CNN", [("CNN", "2-s2.0-1")])]
        table = trend_table(clusters, papers, scores, year_range=(2019, 2021))
        years = [r.year for r in table.cluster_rows("c1")]
        assert years == [2019, 2020, 2021, ALL_TIME]
        assert table.cluster_rows("c1")[0].paper_count == 0

    def test_empty_clusters(self):
        table = trend_table([], [], [])
        assert table.rows == []

    def test_rankings_sorted_by_value(self):
        papers = [record("2-s2.0-1", year=2020), record("2-s2.0-2", year=2020)]
        scores = scores_for(papers, [1, 0], [5.0, 1.0])
        clusters = [
            cluster("c1", "A", [("a", "2-s2.0-1")]),
            cluster("c2", "B", [("b", "2-s2.0-1"), ("c", "2-s2.0-2")]),
        ]
        table = trend_table(clusters, papers, scores)
        assert [e["label"] for e in table.rankings["papers"]] == ["B", "A"]
        assert [e["label"] for e in table.rankings["popularity"]] == ["B", "A"]

    def test_csv_and_json_exports(self):
        papers = [record("2-s2.0-1", year=2020)]
        scores = scores_for(papers, [1], [2.5])
        clusters = [cluster("c1", "CNN", [("CNN", "2-s2.0-1")])]
        table = trend_table(clusters, papers, scores)
        csv_text = trend_csv(table)
        assert "cluster_id,label,year,papers,relevancy_sum,popularity_sum" in csv_text
        assert "c1,CNN,2020,1,1,2.5000" in csv_text
        doc = trend_json(table)
        assert doc["clusters"]["c1"]["all_time"]["papers"] == 1


years_strategy = st.integers(min_value=2014, max_value=2023)


@settings(max_examples=200)
@given(
    st.lists(
        st.tuples(st.integers(0, 5), years_strategy, st.integers(0, 3),
                  st.floats(0, 50, allow_nan=False)),
        min_size=1,
        max_size=20,
    )
)
def test_all_time_equals_sum_of_years(rows):
    papers = []
    scores = []
    pairs = []
    for i, (name_idx, year, rel, pop) in enumerate(rows):
        eid = f"2-s2.0-{i}"
        papers.append(record(eid, year=year))
        scores.append(PaperScores(eid=eid, relevancy=rel, popularity=pop, reference_year=2023))
        pairs.append((f"method-{name_idx}", eid))
    clusters = [cluster("c1", "all", pairs)]
    table = trend_table(clusters, papers, scores)
    year_rows = [r for r in table.cluster_rows("c1") if r.year != ALL_TIME]
    total = table.all_time("c1")
    assert total.paper_count == sum(r.paper_count for r in year_rows)
    assert total.relevancy_sum == sum(r.relevancy_sum for r in year_rows)
    assert total.popularity_sum == pytest.approx(sum(r.popularity_sum for r in year_rows))


def query_result(text, eids):
    return QueryResult(
        query=QueryString(text),
        fetched_at="2023-01-01T00:00:00Z",
        total_found=len(eids),
        records=[record(e) for e in eids],
    )


class TestQuerySensitivity:
    def test_self_intersection(self):
        initial = query_result("Q", [f"2-s2.0-{i}" for i in range(5)])
        rows = query_sensitivity(initial, [initial])
        assert rows[0].papers_found == 5
        assert rows[0].common_with_initial == 5

    def test_disjoint(self):
        initial = query_result("Q", ["2-s2.0-1"])
        other = query_result("V", ["2-s2.0-9"])
        assert query_sensitivity(initial, [other])[0].common_with_initial == 0

    def test_counts_fetched_total_separately(self):
        initial = query_result("Q", ["2-s2.0-1", "2-s2.0-2"])
        variant = query_result("V", ["2-s2.0-2", "2-s2.0-3"])
        variant.total_found = 700
        row = query_sensitivity(initial, [variant])[0]
        assert row.papers_found == 700
        assert row.common_with_initial == 1


def extraction_result(eid, methods, prompt_id="variant"):
    return ExtractionResult(
        eid=eid, prompt_id=prompt_id, raw_completion=", ".join(methods),
        methods=list(methods), backend_tag="t",
    )


class TestPromptSensitivity:
    def test_three_papers_one_differs(self):
        baseline = [
            extraction_result("2-s2.0-1", ["CNN", "SVM"], "initial"),
            extraction_result("2-s2.0-2", ["U-Net"], "initial"),
            extraction_result("2-s2.0-3", ["ANN"], "initial"),
        ]
        variant = [
            extraction_result("2-s2.0-1", ["CNN", "SVM"]),
            extraction_result("2-s2.0-2", ["U-Net"]),
            extraction_result("2-s2.0-3", ["GAN", "DNN"]),
        ]
        row = prompt_sensitivity(baseline, variant)
        assert row.diff_word_count == 3  # ANN missing, GAN+DNN extra
        assert row.identical_article_count == 2

    def test_identical_runs_hit_the_infinity_convention(self):
        baseline = [extraction_result("2-s2.0-1", ["CNN"], "initial")]
        row = prompt_sensitivity(baseline, baseline)
        assert row.diff_word_count == 0
        assert math.isinf(row.enriched_ratio)

    def test_changed_name_counts_missing_plus_extra(self):
        baseline = [extraction_result("2-s2.0-1", ["U-Net"], "initial")]
        variant = [extraction_result("2-s2.0-1", ["U-Net++"])]
        row = prompt_sensitivity(baseline, variant)
        assert row.diff_word_count == 2
        assert row.identical_article_count == 0

    def test_normalization_collapses_case_and_plural(self):
        baseline = [extraction_result("2-s2.0-1", ["Neural Networks"], "initial")]
        variant = [extraction_result("2-s2.0-1", ["neural network"])]
        assert prompt_sensitivity(baseline, variant).diff_word_count == 0

    def test_diff_symmetric_under_swap(self):
        baseline = [extraction_result("2-s2.0-1", ["a", "b"], "initial")]
        variant = [extraction_result("2-s2.0-1", ["b", "c", "d"])]
        forward = prompt_sensitivity(baseline, variant)
        backward = prompt_sensitivity(variant, baseline)
        assert forward.diff_word_count == backward.diff_word_count

    def test_coverage_mismatch_rejected(self):
        baseline = [extraction_result("2-s2.0-1", ["a"], "initial")]
        variant = [extraction_result("2-s2.0-2", ["a"])]
        with pytest.raises(EidMismatchError):
            prompt_sensitivity(baseline, variant)

    def test_ratio_helper(self):
        assert enriched_ratio(31, 41) == pytest.approx(41 / 31)
        assert math.isinf(enriched_ratio(0, 10))

    def test_csv_renders_inf(self):
        rows = [prompt_sensitivity(
            [extraction_result("2-s2.0-1", ["a"], "initial")],
            [extraction_result("2-s2.0-1", ["a"])],
        )]
        assert ",inf" in prompt_sensitivity_csv(rows)
