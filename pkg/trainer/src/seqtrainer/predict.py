"""Decode a data file with a trained checkpoint."""

from __future__ import annotations

from pathlib import Path

from .data import read_pairs
from .decode import greedy_decode
from .train import load_checkpoint


def predict_file(
    checkpoint_path: Path,
    data_path: Path,
    out_path: Path,
    batch_size: int = 256,
) -> dict:
    """Write one greedy decode per input line; returns a small summary
    including how many source tokens fell outside the vocabulary."""
    model, vocab, payload = load_checkpoint(checkpoint_path)
    pairs = read_pairs(data_path)
    sources = [src for src, _ in pairs]
    unknown = sum(vocab.count_unknown(src) for src in sources)
    predictions = greedy_decode(model, vocab, sources, batch_size)
    out_path = Path(out_path)
    out_path.write_text(
        "".join(" ".join(tokens) + "\n" for tokens in predictions), encoding="utf-8"
    )
    return {
        "examples": len(sources),
        "unknown_source_tokens": unknown,
        "checkpoint_step": payload.get("step"),
        "checkpoint_dev_sequence_accuracy": payload.get("dev_sequence_accuracy"),
    }
