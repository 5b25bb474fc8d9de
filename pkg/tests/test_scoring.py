import pytest
from hypothesis import given, strategies as st

from litscout.keywords import KeywordGroup, KeywordScheme
from litscout.scopus import PaperRecord
from litscout.scoring import popularity, relevancy, score_pool


def paper(title="Some paper", abstract=None, keywords=(), index_terms=(),
          year=2020, citations=0, eid="2-s2.0-1"):
    return PaperRecord(
        eid=eid,
        title=title,
        abstract=abstract,
        author_keywords=list(keywords),
        index_terms=list(index_terms),
        year=year,
        citation_count=citations,
    )


def rich_scheme() -> KeywordScheme:
    # level 2/3 groups as used in the worked relevancy example
    return KeywordScheme(
        problem_l1=[KeywordGroup(["oncology"])],
        solution_l1=[KeywordGroup(["artificial intelligence", "AI"])],
        solution_l2=[
            KeywordGroup(["image processing"]),
            KeywordGroup(["image recognition"]),
            KeywordGroup(["deep learning"]),
        ],
        solution_l3=[KeywordGroup(["real-time"])],
    )


class TestRelevancy:
    def test_three_groups_counted_once_each(self):
        abstract = (
            "We rely on image recognition; image recognition, image recognition, "
            "image recognition and image recognition again, plus deep learning "
            "and deep learning, all running real-time."
        )
        record = paper(title="Hybrid learning method for melanoma detection", abstract=abstract)
        assert relevancy(record, rich_scheme()) == 3

    def test_repeated_single_group_counts_one(self):
        abstract = "image recognition " * 5
        assert relevancy(paper(abstract=abstract), rich_scheme()) == 1

    def test_no_matches(self):
        assert relevancy(paper(abstract="nothing relevant here"), rich_scheme()) == 0

    def test_synonyms_in_one_group_count_once(self):
        scheme = KeywordScheme(
            problem_l1=[KeywordGroup(["x"])],
            solution_l2=[KeywordGroup(["neural network", "neural networks"])],
        )
        record = paper(abstract="a neural network and more neural networks")
        assert relevancy(record, scheme) == 1

    def test_word_boundaries(self):
        scheme = KeywordScheme(
            problem_l1=[KeywordGroup(["x"])], solution_l2=[KeywordGroup(["AI"])]
        )
        assert relevancy(paper(abstract="we maintain the pipeline"), scheme) == 0
        assert relevancy(paper(abstract="an AI-driven pipeline"), scheme) == 1

    def test_keywords_field_matches(self):
        scheme = KeywordScheme(
            problem_l1=[KeywordGroup(["x"])],
            solution_l2=[KeywordGroup(["image processing"])],
        )
        record = paper(keywords=["image processing", "melanoma"])
        assert relevancy(record, scheme) == 1

    def test_index_terms_behind_flag(self):
        scheme = KeywordScheme(
            problem_l1=[KeywordGroup(["x"])],
            solution_l2=[KeywordGroup(["image processing"])],
        )
        record = paper(index_terms=["image processing"])
        assert relevancy(record, scheme) == 0
        assert relevancy(record, scheme, include_index_terms=True) == 1

    def test_level1_edits_do_not_change_relevancy(self):
        record = paper(abstract="deep learning pipeline")
        scheme = rich_scheme()
        base = relevancy(record, scheme)
        scheme.problem_l1 = [KeywordGroup(["entirely different"])]
        assert relevancy(record, scheme) == base


class TestPopularity:
    def test_reference_rows(self):
        assert popularity(paper(year=2014, citations=67), 2023) == pytest.approx(6.7)
        assert popularity(paper(year=2021, citations=55), 2023) == pytest.approx(
            18.3333, abs=1e-4
        )

    def test_zero_citations(self):
        assert popularity(paper(year=2015, citations=0), 2023) == 0.0

    def test_same_year_divides_by_one(self):
        assert popularity(paper(year=2023, citations=3), 2023) == 3.0

    def test_future_paper_age_clamps_to_zero(self):
        assert popularity(paper(year=2025, citations=8), 2023) == 8.0

    @given(
        st.integers(min_value=0, max_value=500),
        st.integers(min_value=0, max_value=500),
        st.integers(min_value=1900, max_value=2023),
    )
    def test_monotone_in_citations(self, c1, c2, year):
        lo, hi = sorted((c1, c2))
        assert popularity(paper(year=year, citations=lo), 2023) <= popularity(
            paper(year=year, citations=hi), 2023
        )

    @given(
        st.integers(min_value=0, max_value=500),
        st.integers(min_value=1900, max_value=2023),
        st.integers(min_value=1900, max_value=2023),
    )
    def test_non_increasing_in_age(self, citations, y1, y2):
        younger, older = max(y1, y2), min(y1, y2)
        assert popularity(paper(year=older, citations=citations), 2023) <= popularity(
            paper(year=younger, citations=citations), 2023
        )


class TestScorePool:
    def test_order_and_length(self):
        pool = [paper(eid=f"2-s2.0-{i}", year=2020, citations=i) for i in range(5)]
        scores = score_pool(pool, rich_scheme(), 2023)
        assert [s.eid for s in scores] == [p.eid for p in pool]

    def test_empty_pool(self):
        assert score_pool([], rich_scheme(), 2023) == []

    def test_excluded_papers_still_scored(self):
        from litscout.scopus import Curation

        record = paper(citations=4, year=2022)
        record.curation = Curation.EXCLUDED
        scores = score_pool([record], rich_scheme(), 2023)
        assert scores[0].popularity == 2.0
