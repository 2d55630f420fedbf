import json
import os

import pytest

from lawlint.cli import run
from lawlint.corpus import save_snapshot


@pytest.fixture
def corpus_path(toy_document, tmp_path):
    path = tmp_path / "toy.json"
    save_snapshot(toy_document, str(path))
    return str(path)


def detect(corpus_path, outdir, *extra):
    return run(
        ["detect", "--corpus", f"toy={corpus_path}", "--output-dir", str(outdir)]
        + list(extra)
    )


class TestIngest:
    def test_valid_corpus(self, corpus_path, capsys):
        assert run(["ingest", "--corpus", f"toy={corpus_path}"]) == 0
        assert "ok" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert run(["ingest", "--corpus", f"x={tmp_path}/absent.json"]) == 2

    def test_malformed_corpus(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"label": "x"}')
        assert run(["ingest", "--corpus", f"x={bad}"]) == 2


class TestDetect:
    def test_writes_report(self, corpus_path, tmp_path):
        outdir = tmp_path / "out"
        assert detect(corpus_path, outdir, "--smell", "long_element",
                      "--page-tokens", "500") == 0
        report = json.loads((outdir / "report.json").read_text())
        assert report["snapshots"] == ["toy"]

    def test_fail_on_budget(self, corpus_path, tmp_path):
        assert detect(
            corpus_path, tmp_path / "o1", "--smell", "ambiguous_syntax",
            "--fail-on", "ambiguous_syntax:0",
        ) == 1
        assert detect(
            corpus_path, tmp_path / "o2", "--smell", "ambiguous_syntax",
            "--fail-on", "ambiguous_syntax:1000",
        ) == 0

    def test_bad_fail_on_spec(self, corpus_path, tmp_path):
        assert detect(corpus_path, tmp_path, "--fail-on", "nonsense") == 2

    def test_deterministic_bytes(self, corpus_path, tmp_path):
        detect(corpus_path, tmp_path / "a", "--seed", "7")
        detect(corpus_path, tmp_path / "b", "--seed", "7")
        a = (tmp_path / "a" / "report.json").read_bytes()
        b = (tmp_path / "b" / "report.json").read_bytes()
        assert a == b

    def test_html_export(self, corpus_path, tmp_path):
        outdir = tmp_path / "out"
        assert detect(corpus_path, outdir, "--format", "json", "--format", "html") == 0
        assert (outdir / "report.html").exists()

    def test_unknown_flag(self, corpus_path):
        assert run(["detect", "--corpus", f"x={corpus_path}", "--bogus"]) == 2


class TestConfigPrecedence:
    def test_flag_overrides_file(self, corpus_path, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "corpora": [{"label": "toy", "path": corpus_path}],
            "page_tokens": 100,
            "output_dir": str(tmp_path / "from_file"),
        }))
        outdir = tmp_path / "out"
        assert run([
            "detect", "--config", str(cfg), "--output-dir", str(outdir),
            "--page-tokens", "500", "--smell", "long_element",
        ]) == 0
        report = json.loads((outdir / "report.json").read_text())
        assert report["config"]["page_tokens"] == 500

    def test_file_overrides_default(self, corpus_path, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "corpora": [{"label": "toy", "path": corpus_path}],
            "chain_x": 6,
            "output_dir": str(tmp_path / "out"),
        }))
        assert run(["detect", "--config", str(cfg), "--smell", "long_element"]) == 0
        report = json.loads((tmp_path / "out" / "report.json").read_text())
        assert report["config"]["chain_x"] == 6

    def test_fingerprint_reflects_config(self, corpus_path, tmp_path):
        detect(corpus_path, tmp_path / "a", "--page-tokens", "500")
        detect(corpus_path, tmp_path / "b", "--page-tokens", "400")
        a = json.loads((tmp_path / "a" / "report.json").read_text())
        b = json.loads((tmp_path / "b" / "report.json").read_text())
        assert a["config_fingerprint"] != b["config_fingerprint"]


class TestSample:
    def test_deterministic_sheets(self, corpus_path, tmp_path):
        for sub in ("a", "b"):
            assert run([
                "sample", "--corpus", f"toy={corpus_path}", "--n", "100",
                "--seed", "7", "--output-dir", str(tmp_path / sub),
            ]) == 0
        a = (tmp_path / "a" / "review_sheet.csv").read_bytes()
        b = (tmp_path / "b" / "review_sheet.csv").read_bytes()
        assert a == b


class TestIcicle:
    def test_export(self, corpus_path, tmp_path):
        assert run([
            "icicle", "--corpus", f"toy={corpus_path}", "--root", "X",
            "--output-dir", str(tmp_path),
        ]) == 0
        tree = json.loads((tmp_path / "icicle_X.json").read_text())
        assert tree["id"] == "X" and tree["children"]

    def test_unknown_root(self, corpus_path, tmp_path):
        assert run([
            "icicle", "--corpus", f"toy={corpus_path}", "--root", "zz",
            "--output-dir", str(tmp_path),
        ]) == 2


class TestEnvOutputDir(object):
    def test_env_default(self, corpus_path, tmp_path, monkeypatch):
        monkeypatch.setenv("LAWLINT_OUT", str(tmp_path / "envout"))
        assert run(["detect", "--corpus", f"toy={corpus_path}",
                    "--smell", "long_element"]) == 0
        assert (tmp_path / "envout" / "report.json").exists()
