import json
import subprocess
import sys

from seqtrainer.cli import main

from conftest import write_copy_file


def test_no_arguments_is_a_usage_error(capsys):
    assert main([]) == 1
    assert "usage error" in capsys.readouterr().err


def test_unknown_flag_is_a_usage_error(capsys):
    assert main(["train", "--data", "x", "--out", "y", "--frobnicate"]) == 1


def test_bad_choice_is_a_usage_error(capsys):
    code = main(["train", "--data", "x", "--out", "y", "--architecture", "gru"])
    assert code == 1


def test_missing_data_is_a_data_error(tmp_path, capsys):
    code = main(["train", "--data", str(tmp_path / "nope"), "--out", str(tmp_path / "out")])
    assert code == 2
    assert "data error" in capsys.readouterr().err


def test_predict_best_without_run_is_a_usage_error(tmp_path, capsys):
    code = main(["predict", "--data", str(tmp_path / "d.tsv"), "--out", str(tmp_path / "p.txt")])
    assert code == 1


def test_predict_missing_checkpoint_is_a_data_error(tmp_path, capsys):
    (tmp_path / "d.tsv").write_text("a b\tb a\n", encoding="utf-8")
    code = main(
        [
            "predict",
            "--run",
            str(tmp_path),
            "--data",
            str(tmp_path / "d.tsv"),
            "--out",
            str(tmp_path / "p.txt"),
        ]
    )
    assert code == 2


def test_train_then_predict_round_trip(tmp_path, capsys):
    data = tmp_path / "data"
    data.mkdir()
    write_copy_file(data / "train.tsv", 48, seed=5)
    write_copy_file(data / "dev.tsv", 12, seed=6)
    run = tmp_path / "run"
    code = main(
        [
            "train",
            "--data",
            str(data),
            "--out",
            str(run),
            "--embedding-dim",
            "8",
            "--hidden-dim",
            "8",
            "--batch-size",
            "16",
            "--max-epochs",
            "2",
            "--eval-every",
            "3",
        ]
    )
    assert code == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["steps"] == 6
    assert (run / "best.pt").exists()

    preds = tmp_path / "preds.txt"
    code = main(
        [
            "predict",
            "--run",
            str(run),
            "--checkpoint",
            "final",
            "--data",
            str(data / "dev.tsv"),
            "--out",
            str(preds),
        ]
    )
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert report["examples"] == 12
    assert len(preds.read_text(encoding="utf-8").splitlines()) == 12


def test_explicit_checkpoint_path(tmp_path, capsys, tiny_run):
    (tmp_path / "d.tsv").write_text("copy w1\tw1\n", encoding="utf-8")
    code = main(
        [
            "predict",
            "--checkpoint",
            str(tiny_run["dir"] / "best.pt"),
            "--data",
            str(tmp_path / "d.tsv"),
            "--out",
            str(tmp_path / "p.txt"),
        ]
    )
    assert code == 0


def test_module_entry_point_reports_version():
    result = subprocess.run(
        [sys.executable, "-m", "seqtrainer.cli", "--version"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert "seqtrainer" in result.stdout
