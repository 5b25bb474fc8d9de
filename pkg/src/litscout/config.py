"""Runtime defaults, overridable by a JSON config file and environment."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

FIXTURES_ENV = "LITSCOUT_FIXTURES"
SCOPUS_KEY_ENV = "LITSCOUT_SCOPUS_KEY"
LLM_KEY_ENV = "LITSCOUT_LLM_KEY"


@dataclass
class Settings:
    reference_year: int | None = None  # None -> year of the fetch date
    eps: float = 0.2
    min_samples: int = 2
    general_terms_exact: list[str] = field(default_factory=list)
    scopus_rate_per_second: float = 3.0
    llm_model: str = "gpt-3.5-turbo-instruct"
    llm_endpoint: str = "https://api.openai.com/v1/completions"
    fixtures_dir: str | None = None
    extract_workers: int = 4

    @classmethod
    def load(cls, config_path: str | Path | None = None) -> "Settings":
        settings = cls()
        if config_path and Path(config_path).exists():
            data = json.loads(Path(config_path).read_text(encoding="utf-8"))
            for key, value in data.items():
                if hasattr(settings, key):
                    setattr(settings, key, value)
        if settings.fixtures_dir is None:
            settings.fixtures_dir = os.environ.get(FIXTURES_ENV)
        return settings

    def scopus_fixtures(self) -> str | None:
        if self.fixtures_dir is None:
            return None
        return str(Path(self.fixtures_dir) / "scopus")

    def llm_fixtures(self) -> str | None:
        if self.fixtures_dir is None:
            return None
        return str(Path(self.fixtures_dir) / "llm")
