"""Classification of extracted method names against manual ground truth.

Each extracted term lands in exactly one bucket: true_general_found when
it names a search keyword or another configured high-level term, else
true_found when it matches an unconsumed ground-truth method, else
false_found. Unconsumed ground-truth methods are the misses. Precision
treats general hits as false positives, matching how the corpus numbers
were produced.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .clustering import indel_distance
from .errors import EidMismatchError, LitScoutError
from .extraction import ExtractionResult
from .keywords import KeywordScheme
from .textnorm import names_match, normalize_method_name, phrase_in

# High-level solution-domain words counted as "correct but generic"
SEED_GENERAL_TERMS = (
    "machine learning",
    "artificial intelligence",
    "image processing",
    "AI",
    "ML",
)


@dataclass
class GeneralTerms:
    """General-term matcher with two strictnesses.

    ``phrases`` (scheme level-1/2 variants and the seeded high-level list)
    hit on word-boundary containment, so "machine learning algorithms"
    counts as generic. ``exact`` entries hit only on whole-name equality,
    so a project can mark "learning algorithm" generic without swallowing
    "incremental learning algorithm".
    """

    phrases: list[str] = field(default_factory=lambda: list(SEED_GENERAL_TERMS))
    exact: list[str] = field(default_factory=list)

    @classmethod
    def for_scheme(cls, scheme: KeywordScheme, extra_exact: list[str] | None = None) -> GeneralTerms:
        phrases = list(SEED_GENERAL_TERMS)
        for group in scheme.groups(1) + scheme.groups(2):
            for variant in group.variants:
                if variant.casefold() not in {p.casefold() for p in phrases}:
                    phrases.append(variant)
        return cls(phrases=phrases, exact=list(extra_exact or []))

    def matches(self, term: str) -> bool:
        normalized = normalize_method_name(term)
        for phrase in self.phrases:
            if names_match(term, phrase) or phrase_in(phrase, normalized):
                return True
        return any(names_match(term, entry) for entry in self.exact)

    def as_dict(self) -> dict:
        return {"phrases": list(self.phrases), "exact": list(self.exact)}

    @classmethod
    def from_dict(cls, data: dict) -> GeneralTerms:
        return cls(phrases=list(data.get("phrases", [])), exact=list(data.get("exact", [])))


@dataclass
class GroundTruthEntry:
    eid: str
    methods: list[str]
    # alternate surface forms the manual matcher accepted for one method,
    # e.g. "OTSU" <- "OTSU threshold segmentation"
    aliases: dict[str, list[str]] = field(default_factory=dict)


@dataclass
class MatchReport:
    eid: str
    total_manual: int
    true_found: int
    false_found: int
    true_general_found: int
    missing: int
    matched_pairs: list[tuple[str, str]] = field(default_factory=list)


@dataclass
class Metrics:
    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f1: float


def _truth_matches(extracted: str, method: str, aliases: list[str], fuzzy: bool) -> bool:
    if names_match(extracted, method):
        return True
    for alias in aliases:
        if names_match(extracted, alias):
            return True
    if fuzzy:
        a = normalize_method_name(extracted)
        b = normalize_method_name(method)
        if a and b and 1.0 - indel_distance(a, b) >= 0.9:
            return True
    return False


def classify_terms(
    extracted: ExtractionResult,
    truth: GroundTruthEntry,
    general_terms: GeneralTerms | list[str],
    fuzzy: bool = False,
) -> MatchReport:
    """Partition extracted terms into general / true / false and count misses.

    Each ground-truth method is consumable once. ``fuzzy`` adds a fallback
    acceptance at indel similarity >= 0.9 (off by default so the default
    behavior stays auditable).
    """
    if extracted.eid != truth.eid:
        raise EidMismatchError(
            f"extraction is for {extracted.eid}, ground truth for {truth.eid}"
        )
    if isinstance(general_terms, list):
        general_terms = GeneralTerms(phrases=list(general_terms))

    remaining = list(truth.methods)
    true_found = 0
    false_found = 0
    true_general = 0
    matched_pairs: list[tuple[str, str]] = []

    for term in extracted.methods:
        if general_terms.matches(term):
            true_general += 1
            continue
        matched = None
        for method in remaining:
            if _truth_matches(term, method, truth.aliases.get(method, []), fuzzy):
                matched = method
                break
        if matched is not None:
            remaining.remove(matched)
            true_found += 1
            matched_pairs.append((term, matched))
        else:
            false_found += 1

    return MatchReport(
        eid=extracted.eid,
        total_manual=len(truth.methods),
        true_found=true_found,
        false_found=false_found,
        true_general_found=true_general,
        missing=len(remaining),
        matched_pairs=matched_pairs,
    )


def _metrics_from_counts(tp: int, fp: int, fn: int) -> Metrics:
    if tp == 0 and fp == 0 and fn == 0:
        return Metrics(0, 0, 0, 1.0, 1.0, 1.0)
    precision = tp / (tp + fp) if (tp + fp) > 0 else 0.0
    recall = tp / (tp + fn) if (tp + fn) > 0 else 0.0
    f1 = 2 * precision * recall / (precision + recall) if (precision + recall) > 0 else 0.0
    return Metrics(tp, fp, fn, precision, recall, f1)


def paper_metrics(report: MatchReport) -> Metrics:
    """Precision/recall/F1 from one paper's determinants.

    TP is true_found, FP is false_found plus true_general_found, FN is
    missing; F1 is the factor-2 harmonic mean.
    """
    return _metrics_from_counts(
        report.true_found,
        report.false_found + report.true_general_found,
        report.missing,
    )


def aggregate_micro(reports: list[MatchReport]) -> Metrics:
    """Pool TP/FP/FN over papers, then compute the metrics once."""
    if not reports:
        raise LitScoutError("cannot aggregate an empty report list")
    tp = sum(r.true_found for r in reports)
    fp = sum(r.false_found + r.true_general_found for r in reports)
    fn = sum(r.missing for r in reports)
    return _metrics_from_counts(tp, fp, fn)


def aggregate_macro(reports: list[MatchReport]) -> Metrics:
    """Arithmetic mean of per-paper metrics; F1 averaged directly."""
    if not reports:
        raise LitScoutError("cannot aggregate an empty report list")
    per_paper = [paper_metrics(r) for r in reports]
    n = len(per_paper)
    return Metrics(
        tp=sum(m.tp for m in per_paper),
        fp=sum(m.fp for m in per_paper),
        fn=sum(m.fn for m in per_paper),
        precision=sum(m.precision for m in per_paper) / n,
        recall=sum(m.recall for m in per_paper) / n,
        f1=sum(m.f1 for m in per_paper) / n,
    )


# -- import / export ---------------------------------------------------

def ground_truth_from_dict(data: dict) -> list[GroundTruthEntry]:
    """Accept {eid: [method, ...]} where an item may also be
    {"name": ..., "aliases": [...]} for matcher hints.
    """
    entries: list[GroundTruthEntry] = []
    for eid, methods in data.items():
        names: list[str] = []
        aliases: dict[str, list[str]] = {}
        for item in methods:
            if isinstance(item, dict):
                name = item["name"]
                names.append(name)
                if item.get("aliases"):
                    aliases[name] = list(item["aliases"])
            else:
                names.append(item)
        entries.append(GroundTruthEntry(eid=eid, methods=names, aliases=aliases))
    return entries


def load_ground_truth(path) -> list[GroundTruthEntry]:
    """JSON ({eid: [...]}) or CSV (eid, method[, aliases "|"-joined])."""
    text = open(path, encoding="utf-8").read()
    if str(path).endswith(".csv"):
        by_eid: dict[str, GroundTruthEntry] = {}
        for row in csv.DictReader(io.StringIO(text)):
            entry = by_eid.setdefault(row["eid"], GroundTruthEntry(row["eid"], []))
            entry.methods.append(row["method"])
            if row.get("aliases"):
                entry.aliases[row["method"]] = [
                    a.strip() for a in row["aliases"].split("|") if a.strip()
                ]
        return list(by_eid.values())
    payload = json.loads(text)
    if isinstance(payload, dict) and "papers" in payload:
        payload = payload["papers"]
    return ground_truth_from_dict(payload)


def evaluation_rows(reports: list[MatchReport]) -> list[dict]:
    rows = []
    for report in reports:
        metrics = paper_metrics(report)
        rows.append(
            {
                "eid": report.eid,
                "total_manual": report.total_manual,
                "true_found": report.true_found,
                "false_found": report.false_found,
                "true_general_found": report.true_general_found,
                "missing": report.missing,
                "precision": round(metrics.precision, 4),
                "recall": round(metrics.recall, 4),
                "f1": round(metrics.f1, 4),
            }
        )
    return rows


def evaluation_report_json(reports: list[MatchReport]) -> dict:
    micro = aggregate_micro(reports)
    macro = aggregate_macro(reports)
    rows = evaluation_rows(reports)
    for row, report in zip(rows, reports):
        row["matched_pairs"] = [list(p) for p in report.matched_pairs]
    return {
        "papers": rows,
        "micro": {
            "tp": micro.tp,
            "fp": micro.fp,
            "fn": micro.fn,
            "precision": round(micro.precision, 4),
            "recall": round(micro.recall, 4),
            "f1": round(micro.f1, 4),
        },
        "macro": {
            "precision": round(macro.precision, 4),
            "recall": round(macro.recall, 4),
            "f1": round(macro.f1, 4),
        },
    }


def evaluation_report_csv(reports: list[MatchReport]) -> str:
    out = io.StringIO()
    rows = evaluation_rows(reports)
    writer = csv.DictWriter(out, fieldnames=list(rows[0].keys()) if rows else ["eid"])
    writer.writeheader()
    writer.writerows(rows)
    return out.getvalue()
