import pytest
from hypothesis import given, strategies as st

from litscout.errors import QuerySyntaxError, SchemeValidationError
from litscout.keywords import (
    KeywordGroup,
    KeywordScheme,
    build_query,
    direct_query,
    scheme_from_dict,
    scheme_to_dict,
    validate_scheme,
)

ONCOLOGY_QUERY = (
    'TITLE-ABS-KEY(("oncology") AND ("artificial intelligence" OR "AI") AND '
    '("image processing")) AND DOCTYPE(ar OR cp) AND PUBYEAR > 2013'
)


def oncology_scheme(**overrides) -> KeywordScheme:
    kwargs = dict(
        problem_l1=[KeywordGroup(["oncology"])],
        solution_l1=[KeywordGroup(["artificial intelligence", "AI"])],
        solution_l2=[KeywordGroup(["image processing"])],
        doc_types=["ar", "cp"],
        min_year_exclusive=2013,
    )
    kwargs.update(overrides)
    return KeywordScheme(**kwargs)


class TestValidation:
    def test_valid_scheme_has_no_findings(self):
        assert validate_scheme(oncology_scheme()) == []

    def test_missing_level1_everywhere(self):
        scheme = KeywordScheme(problem_l2=[KeywordGroup(["x"])])
        findings = validate_scheme(scheme)
        assert any("level-1" in f.message for f in findings)

    def test_case_insensitive_duplicate_variant(self):
        scheme = oncology_scheme(solution_l1=[KeywordGroup(["AI", "ai"])])
        findings = validate_scheme(scheme)
        assert any("duplicate" in f.message for f in findings)
        assert findings[0].path.startswith("solution_l1[0]")

    def test_empty_variant(self):
        scheme = oncology_scheme(problem_l1=[KeywordGroup(["oncology", "  "])])
        assert any("empty variant" in f.message for f in validate_scheme(scheme))

    def test_empty_group(self):
        scheme = oncology_scheme(problem_l2=[KeywordGroup([])])
        assert any("no variants" in f.message for f in validate_scheme(scheme))


class TestBuildQuery:
    def test_reference_query_byte_exact(self):
        assert build_query(oncology_scheme()).text == ONCOLOGY_QUERY

    def test_no_level2_omits_block(self):
        scheme = oncology_scheme(solution_l2=[])
        assert build_query(scheme).text == (
            'TITLE-ABS-KEY(("oncology") AND ("artificial intelligence" OR "AI")) '
            "AND DOCTYPE(ar OR cp) AND PUBYEAR > 2013"
        )

    def test_problem_domain_swap(self):
        scheme = oncology_scheme(problem_l1=[KeywordGroup(["traffic control"])])
        assert build_query(scheme).text == (
            'TITLE-ABS-KEY(("traffic control") AND ("artificial intelligence" OR "AI") '
            'AND ("image processing")) AND DOCTYPE(ar OR cp) AND PUBYEAR > 2013'
        )

    def test_no_doc_types_no_year(self):
        scheme = oncology_scheme(doc_types=[], min_year_exclusive=None)
        assert build_query(scheme).text == (
            'TITLE-ABS-KEY(("oncology") AND ("artificial intelligence" OR "AI") '
            'AND ("image processing"))'
        )

    def test_invalid_scheme_raises_with_findings(self):
        with pytest.raises(SchemeValidationError) as err:
            build_query(KeywordScheme())
        assert err.value.findings

    def test_deterministic(self):
        scheme = oncology_scheme()
        assert build_query(scheme).text == build_query(scheme).text

    def test_level2_variants_join_one_or_block(self):
        scheme = oncology_scheme(
            problem_l2=[KeywordGroup(["screening"])],
            solution_l2=[KeywordGroup(["image processing", "computer vision"])],
        )
        assert (
            '("screening" OR "image processing" OR "computer vision")'
            in build_query(scheme).text
        )


words = st.text(alphabet="abcdefg ", min_size=1, max_size=12).filter(
    lambda s: s.strip() and '"' not in s
)


def distinct_groups(variants: list[str]) -> bool:
    lowered = [v.strip().casefold() for v in variants]
    return len(set(lowered)) == len(lowered)


group_strategy = st.lists(words, min_size=1, max_size=3).filter(distinct_groups).map(KeywordGroup)


@st.composite
def schemes(draw):
    return KeywordScheme(
        problem_l1=draw(st.lists(group_strategy, min_size=1, max_size=2)),
        solution_l1=draw(st.lists(group_strategy, min_size=0, max_size=2)),
        problem_l2=draw(st.lists(group_strategy, min_size=0, max_size=2)),
        solution_l2=draw(st.lists(group_strategy, min_size=0, max_size=2)),
        solution_l3=draw(st.lists(group_strategy, min_size=0, max_size=2)),
        doc_types=draw(st.sampled_from([[], ["ar"], ["ar", "cp"]])),
        min_year_exclusive=draw(st.sampled_from([None, 2013, 2020])),
    )


class TestProperties:
    @given(schemes(), group_strategy)
    def test_adding_level1_group_adds_one_conjunct(self, scheme, group):
        base = build_query(scheme).text
        scheme.solution_l1 = scheme.solution_l1 + [group]
        grown = build_query(scheme).text
        assert grown.count(" AND ") == base.count(" AND ") + 1

    @given(schemes(), words)
    def test_adding_level2_variant_adds_one_or_term(self, scheme, variant):
        scheme.solution_l2 = [KeywordGroup(["seedterm"])]
        base = build_query(scheme).text
        scheme.solution_l2 = [KeywordGroup(["seedterm", "zz" + variant])]
        grown = build_query(scheme).text
        assert grown.count(" OR ") == base.count(" OR ") + 1

    @given(schemes(), group_strategy)
    def test_level3_never_changes_query(self, scheme, group):
        base = build_query(scheme).text
        scheme.solution_l3 = scheme.solution_l3 + [group]
        scheme.problem_l3 = [group]
        assert build_query(scheme).text == base

    @given(schemes())
    def test_balanced_parens_and_quoted_phrases(self, scheme):
        text = build_query(scheme).text
        assert text.count("(") == text.count(")")
        assert text.count('"') % 2 == 0

    @given(schemes())
    def test_dict_round_trip(self, scheme):
        assert scheme_from_dict(scheme_to_dict(scheme)) == scheme


class TestDirectQuery:
    def test_raw_query_accepted(self):
        text = 'TITLE-ABS-KEY(({oncology}) AND ({AI}))'
        assert direct_query(text).text == text

    def test_unbalanced_rejected(self):
        with pytest.raises(QuerySyntaxError):
            direct_query("TITLE-ABS-KEY((broken)")

    def test_empty_rejected(self):
        with pytest.raises(QuerySyntaxError):
            direct_query("   ")
