"""Two-domain, three-level keyword scheme and query compilation.

A scheme has a problem block and a solution block, each with three levels:
level 1 terms are necessary conjuncts, level 2 terms expand the search
(one hit suffices), level 3 terms never reach the query and only feed the
relevancy score. ``build_query`` compiles a scheme into the literature
database's advanced-search syntax, deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import QuerySyntaxError, SchemeValidationError

LEVELS = (1, 2, 3)
DOMAINS = ("problem", "solution")


@dataclass(frozen=True)
class KeywordGroup:
    """Synonyms/spellings of one concept, e.g. ["artificial intelligence", "AI"]."""

    variants: tuple[str, ...]

    def __init__(self, variants):
        object.__setattr__(self, "variants", tuple(variants))


@dataclass
class KeywordScheme:
    problem_l1: list[KeywordGroup] = field(default_factory=list)
    problem_l2: list[KeywordGroup] = field(default_factory=list)
    problem_l3: list[KeywordGroup] = field(default_factory=list)
    solution_l1: list[KeywordGroup] = field(default_factory=list)
    solution_l2: list[KeywordGroup] = field(default_factory=list)
    solution_l3: list[KeywordGroup] = field(default_factory=list)
    doc_types: list[str] = field(default_factory=list)
    min_year_exclusive: int | None = None

    def groups(self, level: int, domains=DOMAINS) -> list[KeywordGroup]:
        out: list[KeywordGroup] = []
        for domain in domains:
            out.extend(getattr(self, f"{domain}_l{level}"))
        return out

    def scoring_groups(self) -> list[KeywordGroup]:
        """Level 2 and 3 groups across both domains (relevancy inputs)."""
        return self.groups(2) + self.groups(3)


@dataclass(frozen=True)
class QueryString:
    text: str


@dataclass(frozen=True)
class ValidationFinding:
    path: str
    message: str

    def as_dict(self) -> dict:
        return {"path": self.path, "message": self.message}


def validate_scheme(scheme: KeywordScheme) -> list[ValidationFinding]:
    """Return one finding per invariant violation; empty list when valid."""
    findings: list[ValidationFinding] = []
    for domain in DOMAINS:
        for level in LEVELS:
            attr = f"{domain}_l{level}"
            for gi, group in enumerate(getattr(scheme, attr)):
                path = f"{attr}[{gi}]"
                if not group.variants:
                    findings.append(ValidationFinding(path, "group has no variants"))
                    continue
                seen: set[str] = set()
                for vi, variant in enumerate(group.variants):
                    if not variant.strip():
                        findings.append(
                            ValidationFinding(f"{path}.variants[{vi}]", "empty variant")
                        )
                        continue
                    key = variant.strip().casefold()
                    if key in seen:
                        findings.append(
                            ValidationFinding(
                                f"{path}.variants[{vi}]",
                                f"duplicate variant (case-insensitive): {variant!r}",
                            )
                        )
                    seen.add(key)
    if not scheme.problem_l1 and not scheme.solution_l1:
        findings.append(
            ValidationFinding("problem_l1", "no level-1 group in either domain")
        )
    for di, doc_type in enumerate(scheme.doc_types):
        if not doc_type.strip():
            findings.append(ValidationFinding(f"doc_types[{di}]", "empty document type"))
    return findings


def _group_clause(group: KeywordGroup) -> str:
    return "(" + " OR ".join(f'"{v.strip()}"' for v in group.variants) + ")"


def build_query(scheme: KeywordScheme) -> QueryString:
    """Compile a valid scheme into the advanced-search query string.

    Level-1 groups become AND-ed clauses (problem block first, then
    solution, in user order). All level-2 variants across both domains
    join one OR block AND-ed once; level 3 never appears. Output is
    byte-stable for equal input.
    """
    findings = validate_scheme(scheme)
    if findings:
        raise SchemeValidationError(findings)

    clauses = [_group_clause(g) for g in scheme.groups(1)]
    l2_variants = [v.strip() for g in scheme.groups(2) for v in g.variants]
    if l2_variants:
        clauses.append("(" + " OR ".join(f'"{v}"' for v in l2_variants) + ")")

    text = "TITLE-ABS-KEY(" + " AND ".join(clauses) + ")"
    if scheme.doc_types:
        text += " AND DOCTYPE(" + " OR ".join(t.strip() for t in scheme.doc_types) + ")"
    if scheme.min_year_exclusive is not None:
        text += f" AND PUBYEAR > {scheme.min_year_exclusive}"
    return QueryString(text)


def direct_query(text: str) -> QueryString:
    """Expert-supplied raw query; only parenthesis balance is checked."""
    depth = 0
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise QuerySyntaxError("unbalanced parentheses in query")
    if depth != 0:
        raise QuerySyntaxError("unbalanced parentheses in query")
    if not text.strip():
        raise QuerySyntaxError("empty query")
    return QueryString(text)


def scheme_to_dict(scheme: KeywordScheme) -> dict:
    out: dict = {}
    for domain in DOMAINS:
        for level in LEVELS:
            attr = f"{domain}_l{level}"
            out[attr] = [list(g.variants) for g in getattr(scheme, attr)]
    out["doc_types"] = list(scheme.doc_types)
    out["min_year_exclusive"] = scheme.min_year_exclusive
    return out


def scheme_from_dict(data: dict) -> KeywordScheme:
    """Import a scheme from a JSON-shaped dict mirroring the field names."""
    kwargs = {}
    for domain in DOMAINS:
        for level in LEVELS:
            attr = f"{domain}_l{level}"
            kwargs[attr] = [KeywordGroup(v) for v in data.get(attr, [])]
    return KeywordScheme(
        doc_types=list(data.get("doc_types", [])),
        min_year_exclusive=data.get("min_year_exclusive"),
        **kwargs,
    )
