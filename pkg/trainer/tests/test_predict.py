import pytest

from seqtrainer.data import read_pairs
from seqtrainer.decode import greedy_decode
from seqtrainer.errors import DataError
from seqtrainer.predict import predict_file
from seqtrainer.train import load_checkpoint


def test_predict_writes_one_line_per_example(tiny_run, tmp_path):
    out = tmp_path / "preds.txt"
    summary = predict_file(tiny_run["dir"] / "best.pt", tiny_run["data"] / "test.tsv", out)
    lines = out.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 60
    assert summary["examples"] == 60
    assert summary["unknown_source_tokens"] == 0
    assert summary["checkpoint_step"] == tiny_run["summary"]["best_step"]


def test_predict_matches_in_process_decoding(tiny_run, tmp_path):
    out = tmp_path / "preds.txt"
    predict_file(tiny_run["dir"] / "best.pt", tiny_run["data"] / "test.tsv", out)
    model, vocab, _ = load_checkpoint(tiny_run["dir"] / "best.pt")
    sources = [src for src, _ in read_pairs(tiny_run["data"] / "test.tsv")]
    expected = greedy_decode(model, vocab, sources)
    got = [line.split() for line in out.read_text(encoding="utf-8").splitlines()]
    assert got == expected


def test_predict_counts_unknown_source_tokens(tiny_run, tmp_path):
    data = tmp_path / "novel.tsv"
    data.write_text("copy w1 w2 blorp\tw1 w2\ncopy snork\tsnork\n", encoding="utf-8")
    summary = predict_file(tiny_run["dir"] / "best.pt", data, tmp_path / "preds.txt")
    assert summary["unknown_source_tokens"] == 2


def test_predict_missing_checkpoint(tiny_run, tmp_path):
    with pytest.raises(DataError):
        predict_file(tmp_path / "absent.pt", tiny_run["data"] / "test.tsv", tmp_path / "p.txt")


def test_predict_is_deterministic(tiny_run, tmp_path):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    predict_file(tiny_run["dir"] / "best.pt", tiny_run["data"] / "dev.tsv", a)
    predict_file(tiny_run["dir"] / "best.pt", tiny_run["data"] / "dev.tsv", b)
    assert a.read_bytes() == b.read_bytes()
