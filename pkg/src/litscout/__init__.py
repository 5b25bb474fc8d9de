"""litscout: keyword-scheme literature search, scoring, LLM method
extraction, string-distance clustering and trend analysis."""

__version__ = "0.1.0"
