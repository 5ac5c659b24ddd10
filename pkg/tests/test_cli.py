"""Command-line pipeline: verbs, exit codes, artifacts on disk."""

from __future__ import annotations

import csv
import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from cardioprompt.cli import main
from cardioprompt.data import load_csv
from cardioprompt.synthetic import synthetic_raw


def write_raw_csv(path: Path, n: int = 70, seed: int = 3, missing: float = 0.05):
    raw = synthetic_raw(n_rows=n, missing_fraction=missing, seed=seed)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        for row, target in zip(raw.matrix, raw.targets):
            cells = ["?" if np.isnan(v) else repr(float(v)) for v in row]
            writer.writerow(cells + [int(target)])
    return raw


@pytest.fixture
def workdir(tmp_path):
    data = tmp_path / "heart.csv"
    write_raw_csv(data)
    cfg = {
        "data_path": str(data),
        "seed": 3,
        "test_fraction": 0.25,
        "impute_k": 3,
        "search_iters": 1,
        "search_folds": 2,
        "n_ex_grid": [0, 2],
        "output_dir": str(tmp_path / "runs"),
        "cache_path": str(tmp_path / "runs" / "completions.jsonl"),
    }
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    return {"tmp": tmp_path, "cfg": cfg_path, "data": data, "runs": tmp_path / "runs"}


class TestParsing:
    def test_missing_verb_exits_two(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_unknown_flag_exits_two(self):
        with pytest.raises(SystemExit) as exc:
            main(["--bogus", "prepare-data"])
        assert exc.value.code == 2


class TestPrepareData:
    def test_writes_imputed_csv(self, workdir, capsys):
        code = main(["--config", str(workdir["cfg"]), "prepare-data"])
        assert code == 0
        out = capsys.readouterr().out
        assert "rows: 70" in out
        assert "train/test:" in out
        imputed = load_csv(workdir["runs"] / "imputed.csv")
        assert imputed.n_rows == 70
        assert imputed.n_with_missing == 0

    def test_missing_data_file_exits_one(self, workdir, capsys):
        code = main(["--config", str(workdir["cfg"]), "--data-path", "nope.csv", "prepare-data"])
        assert code == 1
        assert "error:" in capsys.readouterr().err


class TestStageOrdering:
    def test_gen_dk_requires_artifacts(self, workdir, capsys):
        code = main(["--config", str(workdir["cfg"]), "gen-dk"])
        assert code == 1
        assert "train-models first" in capsys.readouterr().err

    def test_run_grid_requires_dk(self, workdir, capsys):
        code = main(["--config", str(workdir["cfg"]), "run-grid"])
        assert code == 1
        assert "gen-dk first" in capsys.readouterr().err


class TestPipeline:
    def test_end_to_end_offline(self, workdir, capsys):
        cfg = str(workdir["cfg"])
        runs = workdir["runs"]

        assert main(["--config", cfg, "train-models"]) == 0
        models_dir = runs / "models"
        assert sorted(p.name for p in models_dir.glob("*.json")) == [
            "ADA.json",
            "GBT.json",
            "KNN.json",
            "LR.json",
            "MLP.json",
            "RF.json",
        ]
        table = (runs / "report.csv").read_text().splitlines()
        assert len(table) == 1 + 10  # header + 6 models + average + 3 baselines

        assert main(["--config", cfg, "gen-dk"]) == 0
        dk_docs = json.loads((runs / "dk.json").read_text())
        assert len(dk_docs) == 7
        assert dk_docs[0] == {"variant": "NO", "source": "", "text": ""}
        assert dk_docs[1]["source"] == "randomforestclassifier"
        assert dk_docs[2]["variant"] == "MLFI-ord"
        out = capsys.readouterr().out
        assert "dk0: None" in out

        assert main(["--config", cfg, "run-grid", "--mock", "oracle"]) == 0
        grid = json.loads((runs / "grid_rows.json").read_text())
        assert len(grid) == 2 * 8  # (7 prompts + average) x two example counts
        for row in grid:
            assert row["metrics"][3] == 1.0  # oracle accuracy

        assert main(["--config", cfg, "report", "--format", "markdown"]) == 0
        md = (runs / "report.md").read_text().splitlines()
        assert md[0].startswith("| Model |")
        assert len(md) == 2 + 10 + 16

    def test_rule_mock_grid(self, workdir):
        cfg = str(workdir["cfg"])
        assert main(["--config", cfg, "train-models"]) == 0
        assert main(["--config", cfg, "gen-dk"]) == 0
        code = main(["--config", cfg, "run-grid", "--mock", "rule", "--rule-feature", "oldpeak", "--rule-threshold", "1.0"])
        assert code == 0
        grid = json.loads((workdir["runs"] / "grid_rows.json").read_text())
        accs = {row["metrics"][3] for row in grid}
        assert len(accs) == 1  # rule ignores dk and examples: same verdicts per cell

    def test_flag_overrides_config(self, workdir):
        other = workdir["tmp"] / "elsewhere"
        code = main(["--config", str(workdir["cfg"]), "--output-dir", str(other), "prepare-data"])
        assert code == 0
        assert (other / "imputed.csv").exists()


class TestLiveFailures:
    def _live_cfg(self, workdir, cache_name: str) -> Path:
        doc = json.loads(workdir["cfg"].read_text())
        doc["cache_path"] = str(workdir["tmp"] / cache_name)
        doc["llm"] = {"base_url": "http://127.0.0.1:9", "max_retries": 0, "timeout": 2.0}
        path = workdir["tmp"] / "live.json"
        path.write_text(json.dumps(doc))
        return path

    def _prime(self, workdir):
        cfg = str(workdir["cfg"])
        assert main(["--config", cfg, "train-models"]) == 0
        assert main(["--config", cfg, "gen-dk"]) == 0

    def test_unreachable_endpoint_exits_two(self, workdir, monkeypatch, capsys):
        monkeypatch.setenv("OPENAI_API_KEY", "k")
        self._prime(workdir)
        live = self._live_cfg(workdir, "empty-cache.jsonl")
        code = main(["--config", str(live), "--live", "run-grid"])
        assert code == 2
        assert "transport failure" in capsys.readouterr().err

    def test_partial_cache_exits_three(self, workdir, monkeypatch, capsys):
        monkeypatch.setenv("OPENAI_API_KEY", "k")
        self._prime(workdir)
        live = self._live_cfg(workdir, "warm-cache.jsonl")
        (workdir["tmp"] / "warm-cache.jsonl").write_text(
            json.dumps(
                {"prompt_hash": "h", "model_name": "m", "raw_response": "1", "timestamp": 1.0, "attempt_count": 1}
            )
            + "\n"
        )
        code = main(["--config", str(live), "--live", "run-grid"])
        assert code == 3
        assert "rerun to resume" in capsys.readouterr().err

    def test_offline_never_touches_network(self, workdir, monkeypatch):
        # without --live the dead endpoint must not matter
        monkeypatch.delenv("OPENAI_API_KEY", raising=False)
        self._prime(workdir)
        live = self._live_cfg(workdir, "unused-cache.jsonl")
        assert main(["--config", str(live), "run-grid", "--mock", "oracle"]) == 0


class TestConsoleScript:
    def test_help_runs(self):
        proc = subprocess.run(
            [sys.executable, "-m", "cardioprompt.cli", "--help"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "prepare-data" in proc.stdout
