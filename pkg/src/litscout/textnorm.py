"""Shared text normalization for method names and keyword phrase matching.

Method-name matching (evaluation, prompt diffing) and keyword relevancy
both need a tolerant-but-auditable notion of string equality. Everything
here is pure and deterministic; no stemming, no fuzzy logic.
"""

from __future__ import annotations

import re

_WS_RE = re.compile(r"\s+")
_TRAILING_PAREN_RE = re.compile(r"\s*\(([^()]*)\)\s*$")
_BULLET_RE = re.compile(r"^\s*(?:[-*•‣◦]|\d{1,3}[.):])\s*")


def _strip_plural(s: str) -> str:
    if len(s) > 1 and s.endswith("s") and not s.endswith("ss"):
        return s[:-1]
    return s


def normalize_method_name(name: str) -> str:
    """Canonical form used when comparing two method names.

    Lowercase, hyphens folded to spaces, whitespace collapsed, one trailing
    parenthesized abbreviation removed, one trailing plural "s" removed.
    """
    s = name.strip().casefold()
    s = s.replace("-", " ").replace("–", " ").replace("—", " ")
    s = _TRAILING_PAREN_RE.sub("", s)
    s = _WS_RE.sub(" ", s).strip()
    return _strip_plural(s)


def trailing_abbreviation(name: str) -> str | None:
    """Content of a trailing parenthesized group, normalized, if present."""
    m = _TRAILING_PAREN_RE.search(name.strip())
    if not m:
        return None
    inner = m.group(1).strip()
    if not inner:
        return None
    inner = inner.casefold().replace("-", " ")
    inner = _WS_RE.sub(" ", inner).strip()
    return _strip_plural(inner)


def names_match(a: str, b: str) -> bool:
    """Exact equality on normalized names, or either side equals the
    other's trailing parenthesized abbreviation ("LIPU" vs
    "Logistic regression using Initial variables and Product Units (LIPU)").
    """
    na, nb = normalize_method_name(a), normalize_method_name(b)
    if na == nb:
        return True
    aa, ab = trailing_abbreviation(a), trailing_abbreviation(b)
    return (ab is not None and na == ab) or (aa is not None and nb == aa)


def strip_bullet(line: str) -> str:
    """Remove a leading list bullet or numbering from one line."""
    return _BULLET_RE.sub("", line)


def phrase_pattern(phrase: str) -> re.Pattern[str]:
    """Case-insensitive, token-boundary pattern for a literal phrase.

    Boundaries are non-alphanumeric so "AI" never matches inside
    "maintain" but "(AI)" and "AI," do match.
    """
    escaped = re.escape(phrase.strip())
    return re.compile(r"(?<![A-Za-z0-9])" + escaped + r"(?![A-Za-z0-9])", re.IGNORECASE)


def phrase_in(phrase: str, text: str) -> bool:
    if not phrase.strip() or not text:
        return False
    return phrase_pattern(phrase).search(text) is not None
