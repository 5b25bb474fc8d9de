import json
import re
from pathlib import Path

import pytest
from click.testing import CliRunner

from litscout.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def run(runner, *args, expect_exit=0):
    result = runner.invoke(main, list(args), catch_exceptions=False)
    assert result.exit_code == expect_exit, result.output
    return result


def bootstrap(runner, tmp_path, fixtures_dir, project="onco.litscout.json"):
    project_path = str(tmp_path / project)
    run(runner, "init", "--scheme", str(fixtures_dir / "schemes" / "oncology.json"),
        "--project", project_path)
    run(runner, "search", "--project", project_path,
        "--fixtures", str(fixtures_dir / "scopus"))
    run(runner, "curate", "--project", project_path,
        "--from", str(fixtures_dir / "curation" / "oncology.json"))
    run(runner, "score", "--project", project_path, "--ref-year", "2023")
    run(runner, "extract", "--project", project_path, "--prompt", "initial",
        "--templates", str(fixtures_dir / "prompts" / "templates.json"),
        "--fixtures", str(fixtures_dir / "llm"))
    return project_path


class TestPipeline:
    def test_full_run_prints_reference_micro(self, runner, tmp_path, fixtures_dir):
        project_path = bootstrap(runner, tmp_path, fixtures_dir)
        result = run(runner, "evaluate", "--project", project_path,
                     "--truth", str(fixtures_dir / "ground_truth" / "oncology.json"))
        match = re.search(
            r"micro: precision=([\d.]+) recall=([\d.]+) f1=([\d.]+)", result.output
        )
        assert match
        precision, recall, f1 = (float(g) for g in match.groups())
        assert precision == pytest.approx(0.6793, abs=1e-4)
        assert recall == pytest.approx(0.9000, abs=1e-4)
        assert f1 == pytest.approx(0.7742, abs=1e-4)
        assert "tp=108 fp=51 fn=12" in result.output

    def test_search_counts(self, runner, tmp_path, fixtures_dir):
        project_path = str(tmp_path / "p.litscout.json")
        run(runner, "init", "--scheme", str(fixtures_dir / "schemes" / "oncology.json"),
            "--project", project_path)
        result = run(runner, "search", "--project", project_path,
                     "--fixtures", str(fixtures_dir / "scopus"))
        assert "total_found=92" in result.output

    def test_cluster_and_trends(self, runner, tmp_path, fixtures_dir):
        project_path = bootstrap(runner, tmp_path, fixtures_dir)
        run(runner, "cluster", "--project", project_path)
        result = run(runner, "trends", "--project", project_path)
        assert "cluster_id,label,year" in result.output

    def test_trends_plot_files(self, runner, tmp_path, fixtures_dir):
        project_path = bootstrap(runner, tmp_path, fixtures_dir)
        run(runner, "cluster", "--project", project_path)
        plot_base = str(tmp_path / "chart.png")
        result = run(runner, "trends", "--project", project_path, "--plot", plot_base)
        for metric in ("papers", "relevancy", "popularity"):
            assert (tmp_path / f"chart_{metric}.png").exists(), result.output

    def test_search_without_key_or_fixtures_fails(self, runner, tmp_path, fixtures_dir, monkeypatch):
        monkeypatch.delenv("LITSCOUT_SCOPUS_KEY", raising=False)
        monkeypatch.delenv("LITSCOUT_FIXTURES", raising=False)
        project_path = str(tmp_path / "p.litscout.json")
        run(runner, "init", "--scheme", str(fixtures_dir / "schemes" / "oncology.json"),
            "--project", project_path)
        result = runner.invoke(main, ["search", "--project", project_path])
        assert result.exit_code == 1
        assert "configuration" in result.output or "configuration" in (result.stderr or "")

    def test_init_with_raw_query_override(self, runner, tmp_path, fixtures_dir):
        project_path = str(tmp_path / "raw.litscout.json")
        raw = 'TITLE-ABS-KEY(({oncology}) AND ({AI}))'
        result = run(runner, "init", "--scheme",
                     str(fixtures_dir / "schemes" / "oncology.json"),
                     "--project", project_path, "--query", raw)
        assert raw in result.output

    def test_partial_extraction_failure_exits_2(self, runner, tmp_path, fixtures_dir):
        # without curation the 37 non-included papers have no recorded
        # completions: per-item failures, exit code 2, results kept
        project_path = str(tmp_path / "p.litscout.json")
        run(runner, "init", "--scheme", str(fixtures_dir / "schemes" / "oncology.json"),
            "--project", project_path)
        run(runner, "search", "--project", project_path,
            "--fixtures", str(fixtures_dir / "scopus"))
        result = runner.invoke(
            main,
            ["extract", "--project", project_path, "--prompt", "initial",
             "--templates", str(fixtures_dir / "prompts" / "templates.json"),
             "--fixtures", str(fixtures_dir / "llm")],
        )
        assert result.exit_code == 2
        assert "extracted 55 papers" in result.output
        assert "failed 2-s2.0-" in result.output


class TestSensitivityCommands:
    def test_queries_report(self, runner, tmp_path, fixtures_dir, corpus_tables):
        project_path = bootstrap(runner, tmp_path, fixtures_dir)
        result = run(runner, "sensitivity", "queries",
                     str(fixtures_dir / "sensitivity" / "query_variants.json"),
                     "--project", project_path,
                     "--fixtures", str(fixtures_dir / "scopus"))
        for _vid, _text, total, common in corpus_tables.QUERY_VARIANTS:
            assert f",{total},{common}" in result.output

    def test_prompt_counts_report(self, runner, tmp_path, fixtures_dir):
        project_path = bootstrap(runner, tmp_path, fixtures_dir)
        result = run(runner, "sensitivity", "prompts",
                     str(fixtures_dir / "sensitivity" / "prompt_counts.json"),
                     "--project", project_path)
        assert "prompt-4,31,41,1.3226" in result.output
        assert "prompt-1,117,12,0.1026" in result.output

    def test_prompt_comparison_from_project(self, runner, tmp_path, fixtures_dir):
        project_path = bootstrap(runner, tmp_path, fixtures_dir)
        run(runner, "extract", "--project", project_path, "--prompt", "prompt-4",
            "--templates", str(fixtures_dir / "prompts" / "templates.json"),
            "--fixtures", str(fixtures_dir / "llm"))
        spec = tmp_path / "prompts.json"
        spec.write_text(json.dumps({"baseline": "initial", "variants": ["prompt-4"]}))
        result = run(runner, "sensitivity", "prompts", str(spec),
                     "--project", project_path)
        assert "prompt-4,31,41,1.3226" in result.output


class TestExport:
    def test_export_pool_csv(self, runner, tmp_path, fixtures_dir):
        project_path = bootstrap(runner, tmp_path, fixtures_dir)
        out = tmp_path / "pool.csv"
        run(runner, "export", "--project", project_path, "--what", "pool",
            "--format", "csv", "--out", str(out))
        assert out.read_text().count("\n") == 93

    def test_export_evaluation_requires_prior_run(self, runner, tmp_path, fixtures_dir):
        project_path = bootstrap(runner, tmp_path, fixtures_dir)
        result = runner.invoke(main, ["export", "--project", project_path,
                                      "--what", "evaluation"])
        assert result.exit_code == 1

    def test_export_clusters_json(self, runner, tmp_path, fixtures_dir):
        project_path = bootstrap(runner, tmp_path, fixtures_dir)
        run(runner, "cluster", "--project", project_path)
        result = run(runner, "export", "--project", project_path,
                     "--what", "clusters", "--format", "json")
        clusters = json.loads(result.output)
        assert clusters and {"id", "label", "members", "mentions"} <= set(clusters[0])


class TestFrontEndParity:
    def test_cli_and_http_produce_identical_project_files(
        self, runner, tmp_path, fixtures_dir, fixed_clock
    ):
        from fastapi.testclient import TestClient

        from litscout.config import Settings
        from litscout.service import create_app

        scheme_doc = json.loads(
            (fixtures_dir / "schemes" / "oncology.json").read_text()
        )

        # CLI path
        cli_path = str(tmp_path / "via-cli" / "same.litscout.json")
        Path(cli_path).parent.mkdir()
        run(runner, "init", "--scheme", str(fixtures_dir / "schemes" / "oncology.json"),
            "--project", cli_path, "--id", "same")
        run(runner, "search", "--project", cli_path,
            "--fixtures", str(fixtures_dir / "scopus"))
        run(runner, "curate", "--project", cli_path, "--eid", "2-s2.0-84918834255",
            "--status", "excluded", "--note", "x")
        run(runner, "score", "--project", cli_path, "--ref-year", "2023")

        # HTTP path
        settings = Settings()
        settings.fixtures_dir = str(fixtures_dir)
        http_dir = tmp_path / "via-http"
        client = TestClient(create_app(http_dir, settings))
        assert client.post("/api/projects", json={"id": "same", "scheme": scheme_doc}).status_code == 201
        job = client.post("/api/projects/same/jobs/search", json={}).json()
        deadline = 200
        while deadline:
            status = client.get(f"/api/jobs/{job['job_id']}").json()
            if status["status"] != "pending":
                break
            deadline -= 1
        assert status["status"] == "done", status
        assert client.patch(
            "/api/projects/same/papers/2-s2.0-84918834255",
            json={"curation": "excluded", "note": "x"},
        ).status_code == 200
        assert client.post(
            "/api/projects/same/score", json={"reference_year": 2023}
        ).status_code == 200

        cli_bytes = Path(cli_path).read_bytes()
        http_bytes = (http_dir / "same.litscout.json").read_bytes()
        assert cli_bytes == http_bytes
