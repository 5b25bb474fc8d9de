"""Relevancy and popularity metrics for a paper pool.

Relevancy counts the distinct level-2/3 keyword groups that appear at
least once in a paper's title, abstract or keywords; frequency and the
number of matching variants inside one group are irrelevant. Popularity
is citations per year of age, with +1 in the denominator so fresh papers
don't divide by zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from .keywords import KeywordScheme
from .scopus import PaperRecord
from .textnorm import phrase_in


@dataclass(frozen=True)
class PaperScores:
    eid: str
    relevancy: int
    popularity: float
    reference_year: int


def relevancy(
    paper: PaperRecord, scheme: KeywordScheme, include_index_terms: bool = False
) -> int:
    fields = [paper.title or "", paper.abstract or ""]
    fields.extend(paper.author_keywords)
    if include_index_terms:
        fields.extend(paper.index_terms)
    count = 0
    for group in scheme.scoring_groups():
        if any(phrase_in(variant, text) for variant in group.variants for text in fields):
            count += 1
    return count


def popularity(paper: PaperRecord, reference_year: int) -> float:
    age = max(reference_year - paper.year, 0)
    return paper.citation_count / (age + 1)


def score_pool(
    pool: list[PaperRecord],
    scheme: KeywordScheme,
    reference_year: int,
    include_index_terms: bool = False,
) -> list[PaperScores]:
    """One PaperScores per paper, input order; curation status is ignored."""
    return [
        PaperScores(
            eid=paper.eid,
            relevancy=relevancy(paper, scheme, include_index_terms),
            popularity=popularity(paper, reference_year),
            reference_year=reference_year,
        )
        for paper in pool
    ]
