"""Checks the trained baseline runs against the agreed bars.

These tests need the real training artifacts (hours of CPU time), so
they skip unless the run directories exist. Train them with:

    seqtrainer train --data <dir>/en_quest_suffix  --out <runs>/lstm_en_quest
    seqtrainer train --data <dir>/en_passiv_suffix --out <runs>/lstm_en_passiv

where the data directories come from `syntrans generate --format suffix`.
Scoring goes through the separately installed `syntrans` command line so
that only file formats connect the two packages.
"""

import json
import os
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

RUNS = Path(os.environ.get("BASELINE_RUNS_DIR", "/root/runs"))
DATA = Path(os.environ.get("BASELINE_DATA_DIR", "/root/data"))

CASES = [
    pytest.param("lstm_en_quest", "en_quest_suffix", "quest", "main_aux_accuracy", id="quest"),
    pytest.param(
        "lstm_en_passiv", "en_passiv_suffix", "passiv", "object_noun_accuracy", id="passiv"
    ),
]


def _decode(checkpoint: Path, data: Path, out: Path) -> None:
    subprocess.run(
        [
            sys.executable,
            "-m",
            "seqtrainer.cli",
            "predict",
            "--checkpoint",
            str(checkpoint),
            "--data",
            str(data),
            "--out",
            str(out),
        ],
        check=True,
        capture_output=True,
    )


def _score(references: Path, predictions: Path, task: str, report: Path) -> dict:
    subprocess.run(
        [
            "syntrans",
            "evaluate",
            "--references",
            str(references),
            "--predictions",
            str(predictions),
            "--task",
            task,
            "--language",
            "en",
            "--format",
            "suffix",
            "--report",
            str(report),
        ],
        check=True,
        capture_output=True,
    )
    return json.loads(report.read_text(encoding="utf-8"))


@pytest.mark.parametrize("run_name, data_name, task, diagnostic", CASES)
def test_lstm_baseline_generalizes_linearly(run_name, data_name, task, diagnostic, tmp_path):
    checkpoint = RUNS / run_name / "final.pt"
    data_dir = DATA / data_name
    # summary.json is written when training finishes; checkpoints exist
    # while a run is still in progress.
    finished = (RUNS / run_name / "summary.json").exists()
    if not finished or not checkpoint.exists() or not (data_dir / "gen.tsv").exists():
        pytest.skip(f"finished run {run_name} not available")
    if shutil.which("syntrans") is None:
        pytest.skip("syntrans scorer not installed")

    _decode(checkpoint, data_dir / "test.tsv", tmp_path / "test_preds.txt")
    _decode(checkpoint, data_dir / "gen.tsv", tmp_path / "gen_preds.txt")
    test_report = _score(
        data_dir / "test.tsv", tmp_path / "test_preds.txt", task, tmp_path / "test.json"
    )
    gen_report = _score(
        data_dir / "gen.tsv", tmp_path / "gen_preds.txt", task, tmp_path / "gen.json"
    )

    test_accuracy = test_report["exact_match"]
    hier = gen_report[diagnostic]
    linear = gen_report["linear_rule_frequency"]
    assert test_accuracy >= 0.90
    assert hier <= 0.30
    assert 0.9 <= hier + linear <= 1.0
    print(
        f"PASS {run_name}: test sequence accuracy {test_accuracy:.4f}, "
        f"gen {diagnostic} {hier:.4f}, linear-rule frequency {linear:.4f}, "
        f"sum {hier + linear:.4f}"
    )
