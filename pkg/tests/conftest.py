import json
import sys
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURES = REPO_ROOT / "fixtures"

sys.path.insert(0, str(REPO_ROOT / "scripts"))

import demo_corpus as corpus  # noqa: E402

from litscout.keywords import scheme_from_dict  # noqa: E402


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def corpus_tables():
    corpus.check_tables()
    return corpus


@pytest.fixture(scope="session")
def oncology_scheme():
    return scheme_from_dict(
        json.loads((FIXTURES / "schemes" / "oncology.json").read_text())
    )


@pytest.fixture(scope="session")
def demo_project_path() -> Path:
    return FIXTURES / "demo" / "oncology.litscout.json"


@pytest.fixture()
def demo_project(demo_project_path):
    from litscout import store

    return store.load(demo_project_path)


@pytest.fixture()
def fixed_clock(monkeypatch):
    monkeypatch.setenv("LITSCOUT_FIXED_NOW", "2023-06-01T00:00:00Z")
    return "2023-06-01T00:00:00Z"
