"""Command line behavior: argument handling, exit codes, file outputs."""

import json
import subprocess
import sys

import pytest

from syntrans.cli import main
from syntrans.dataset import read_split


def test_no_command_exits_one(capsys):
    assert main([]) == 1
    assert "generate" in capsys.readouterr().out


def test_unknown_flag_exits_one(capsys):
    assert main(["generate", "--bogus"]) == 1
    assert "usage error" in capsys.readouterr().err


def test_missing_required_flag_exits_one(capsys):
    assert main(["generate"]) == 1


def test_generate_and_rerun_byte_identical(tmp_path, capsys):
    args = ["generate", "--language", "en", "--task", "quest", "--seed", "3",
            "--train-size", "200", "--dev-size", "20", "--test-size", "20",
            "--gen-size", "20"]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b")]) == 0
    capsys.readouterr()
    for name in ("train.tsv", "gen.tsv", "metadata.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    rows = read_split(tmp_path / "a" / "train.tsv", "prefix")
    assert len(rows) == 200


def test_generate_mix(tmp_path, capsys):
    base = ["--train-size", "60", "--dev-size", "10", "--test-size", "10",
            "--gen-size", "10", "--seed", "2"]
    assert main(["generate", "--language", "en", "--task", "quest",
                 "--out", str(tmp_path / "en")] + base) == 0
    assert main(["generate", "--language", "de", "--task", "quest",
                 "--out", str(tmp_path / "de")] + base) == 0
    assert main(["generate", "--out", str(tmp_path / "mix"),
                 "--mix", f"en={tmp_path / 'en'}:all",
                 "--mix", f"de={tmp_path / 'de'}:decl"]) == 0
    capsys.readouterr()
    assert (tmp_path / "mix" / "train.tsv").exists()
    assert (tmp_path / "mix" / "gen_de.tsv").exists()


def test_generate_mix_bad_spec_exits_one(tmp_path, capsys):
    assert main(["generate", "--out", str(tmp_path / "x"), "--mix", "nonsense"]) == 1


def test_oracle_hierarchical(tmp_path, capsys):
    infile = tmp_path / "in.txt"
    infile.write_text("my unicorn has amused the yaks .\n", encoding="utf-8")
    assert main(["oracle", "--language", "en", "--task", "quest",
                 "--in", str(infile), "--out", "-"]) == 0
    assert capsys.readouterr().out == "has my unicorn amused the yaks ?\n"


def test_oracle_linear(tmp_path, capsys):
    infile = tmp_path / "in.txt"
    infile.write_text("my unicorn that hasn't amused the yaks has eaten .\n", encoding="utf-8")
    assert main(["oracle", "--rule", "linear", "--task", "quest",
                 "--in", str(infile), "--out", "-"]) == 0
    assert capsys.readouterr().out == "hasn't my unicorn that amused the yaks has eaten ?\n"


def test_oracle_unparseable_exits_two(tmp_path, capsys):
    infile = tmp_path / "in.txt"
    infile.write_text("colorless green ideas sleep furiously .\n", encoding="utf-8")
    assert main(["oracle", "--task", "quest", "--in", str(infile)]) == 2
    assert "line 1" in capsys.readouterr().err


def test_oracle_missing_file_exits_two(capsys):
    assert main(["oracle", "--in", "/nonexistent/path.txt"]) == 2


def test_evaluate_oracle_predictions(tmp_path, capsys):
    assert main(["generate", "--language", "en", "--task", "quest", "--seed", "4",
                 "--train-size", "0", "--dev-size", "0", "--test-size", "30",
                 "--gen-size", "0", "--out", str(tmp_path)]) == 0
    capsys.readouterr()
    rows = read_split(tmp_path / "test.tsv", "prefix")
    preds = tmp_path / "preds.txt"
    preds.write_text("".join(" ".join(r.target) + "\n" for r in rows), encoding="utf-8")
    report_path = tmp_path / "report.json"
    assert main(["evaluate", "--language", "en", "--task", "quest",
                 "--references", str(tmp_path / "test.tsv"),
                 "--predictions", str(preds),
                 "--report", str(report_path)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["exact_match"] == 1.0
    assert json.loads(report_path.read_text(encoding="utf-8")) == payload


def test_evaluate_misaligned_exits_two(tmp_path, capsys):
    assert main(["generate", "--language", "en", "--task", "quest", "--seed", "4",
                 "--train-size", "0", "--dev-size", "0", "--test-size", "5",
                 "--gen-size", "0", "--out", str(tmp_path)]) == 0
    capsys.readouterr()
    preds = tmp_path / "preds.txt"
    preds.write_text("only one line\n", encoding="utf-8")
    assert main(["evaluate", "--references", str(tmp_path / "test.tsv"),
                 "--predictions", str(preds)]) == 2


def test_mine_documents(tmp_path, capsys):
    doc = tmp_path / "doc.txt"
    doc.write_text(
        "the yak has slept because it can swim . "
        "has the yak slept because it can swim ?\n",
        encoding="utf-8",
    )
    pairs_out = tmp_path / "pairs.tsv"
    assert main(["mine", "--language", "en", "--input", str(doc),
                 "--pairs-out", str(pairs_out), "--corpus-size", "1000"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["pairs"] == 1
    assert "expected_disambiguating" in payload
    assert pairs_out.read_text(encoding="utf-8").count("\n") == 2  # header + one pair


def test_report_from_json_log(tmp_path, capsys):
    log = tmp_path / "log.json"
    log.write_text(json.dumps({
        "checkpoints": [
            {"step": 500, "metrics": {"exact_match": 0.5, "profile": {"a": 0.1}}},
            {"step": 1000, "metrics": {"exact_match": 0.75}},
        ]
    }), encoding="utf-8")
    out = tmp_path / "curve.csv"
    assert main(["report", "--log", str(log), "--out", str(out)]) == 0
    lines = out.read_text(encoding="utf-8").strip().splitlines()
    assert lines[0] == "checkpoint,metric,value"
    assert "500,exact_match,0.500000" in lines
    assert "500,profile.a,0.100000" in lines
    assert "1000,exact_match,0.750000" in lines


def test_report_from_jsonl_log(tmp_path, capsys):
    log = tmp_path / "log.jsonl"
    log.write_text(
        '{"step": 500, "metrics": {"m": 1.0}}\n{"step": 1000, "metrics": {"m": 0.0}}\n',
        encoding="utf-8",
    )
    out = tmp_path / "curve.csv"
    assert main(["report", "--log", str(log), "--out", str(out)]) == 0
    assert "1000,m,0.000000" in out.read_text(encoding="utf-8")


def test_report_bad_log_exits_two(tmp_path, capsys):
    log = tmp_path / "log.json"
    log.write_text("not json at all", encoding="utf-8")
    assert main(["report", "--log", str(log), "--out", str(tmp_path / "c.csv")]) == 2


def test_module_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "syntrans.cli", "--version"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "syntrans" in proc.stdout
