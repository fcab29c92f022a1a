"""Training loop: teacher forcing, periodic dev evaluation, checkpointing,
and early stopping when the dev loss plateaus.

Each evaluation measures greedy dev sequence accuracy and teacher-forced
dev loss; the loss drives best-checkpoint selection and the plateau stop,
since accuracy saturates long before the model is done changing.

Artifacts in the run directory:
  config.json   resolved configuration and data file digests
  log.jsonl     one {"step", "metrics"} record per evaluation
  best.pt       weights at the lowest dev loss so far
  final.pt      weights when training stopped
  step_*.pt     every evaluated checkpoint (only with keep_all)
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass
from pathlib import Path
from random import Random

import torch
from torch import nn

from .data import batches, read_pairs
from .decode import sequence_accuracy
from .errors import DataError
from .models import ARCHITECTURES, build_model
from .vocab import PAD, Vocab


@dataclass(frozen=True)
class TrainConfig:
    data_dir: str
    out_dir: str
    architecture: str = "lstm"
    seed: int = 0
    embedding_dim: int = 256
    hidden_dim: int = 256
    batch_size: int = 128
    learning_rate: float = 1e-4
    max_epochs: int = 30
    eval_every: int = 500
    patience: int = 8  # evaluations without a new lowest dev loss before stopping
    min_epochs: int = 2
    keep_all: bool = False
    limit_train: int = 0  # debug: cap the number of training pairs

    def __post_init__(self) -> None:
        if self.architecture not in ARCHITECTURES:
            raise DataError(f"unknown architecture {self.architecture!r}")
        for name in ("batch_size", "max_epochs", "eval_every"):
            if getattr(self, name) <= 0:
                raise DataError(f"{name} must be positive")


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _save(
    path: Path,
    model,
    vocab: Vocab,
    config: TrainConfig,
    step: int,
    dev_accuracy: float,
    dev_loss: float,
):
    torch.save(
        {
            "model_state": model.state_dict(),
            "vocab": vocab.to_dict(),
            "config": asdict(config),
            "step": step,
            "dev_sequence_accuracy": dev_accuracy,
            "dev_loss": dev_loss,
        },
        path,
    )


def _dev_loss(model, vocab: Vocab, pairs, batch_size: int) -> float:
    """Teacher-forced cross entropy per non-padding target token."""
    loss_fn = nn.CrossEntropyLoss(ignore_index=PAD, reduction="sum")
    total = 0.0
    tokens = 0
    with torch.no_grad():
        for batch in batches(pairs, vocab, batch_size, Random(0), shuffle=False):
            logits = model(batch.sources, batch.source_lengths, batch.decoder_input)
            total += float(
                loss_fn(logits.reshape(-1, logits.shape[-1]), batch.decoder_target.reshape(-1))
            )
            tokens += int((batch.decoder_target != PAD).sum())
    return total / tokens if tokens else 0.0


def load_checkpoint(path: Path):
    try:
        payload = torch.load(path, map_location="cpu", weights_only=False)
    except FileNotFoundError:
        raise DataError(f"no checkpoint at {path}")
    except Exception as exc:  # torch.load failure modes vary widely
        raise DataError(f"cannot load checkpoint {path}: {exc}") from exc
    vocab = Vocab.from_dict(payload["vocab"])
    cfg = payload["config"]
    model = build_model(
        cfg["architecture"], len(vocab), cfg["embedding_dim"], cfg["hidden_dim"]
    )
    model.load_state_dict(payload["model_state"])
    model.eval()
    return model, vocab, payload


def train(config: TrainConfig) -> dict:
    torch.manual_seed(config.seed)
    data_dir = Path(config.data_dir)
    train_path = data_dir / "train.tsv"
    dev_path = data_dir / "dev.tsv"
    train_pairs = read_pairs(train_path)
    dev_pairs = read_pairs(dev_path)
    if config.limit_train:
        train_pairs = train_pairs[: config.limit_train]

    vocab = Vocab.build([src for src, _ in train_pairs] + [tgt for _, tgt in train_pairs])
    # Dev tokens outside the training vocabulary degrade to the unknown
    # symbol; surface the count so a split mismatch is visible.
    dev_unknown = sum(
        vocab.count_unknown(src) + vocab.count_unknown(tgt) for src, tgt in dev_pairs
    )
    model = build_model(config.architecture, len(vocab), config.embedding_dim, config.hidden_dim)
    optimizer = torch.optim.Adam(model.parameters(), lr=config.learning_rate)
    loss_fn = nn.CrossEntropyLoss(ignore_index=PAD)

    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "config.json").write_text(
        json.dumps(
            {
                "config": asdict(config),
                "vocab_size": len(vocab),
                "train_examples": len(train_pairs),
                "dev_examples": len(dev_pairs),
                "dev_unknown_tokens": dev_unknown,
                "data_sha256": {
                    "train.tsv": _sha256(train_path),
                    "dev.tsv": _sha256(dev_path),
                },
            },
            indent=2,
            sort_keys=True,
        )
        + "\n",
        encoding="utf-8",
    )
    log_path = out_dir / "log.jsonl"
    log_handle = open(log_path, "w", encoding="utf-8")

    best_loss = float("inf")
    best_accuracy = 0.0
    best_step = 0
    evals_since_best = 0
    last_accuracy = 0.0
    last_loss = 0.0
    step = 0
    stop = False
    running_loss = 0.0
    running_count = 0

    def evaluate_now() -> None:
        nonlocal best_loss, best_accuracy, best_step, evals_since_best
        nonlocal last_accuracy, last_loss, running_loss, running_count
        model.eval()
        accuracy = sequence_accuracy(model, vocab, dev_pairs)
        val_loss = _dev_loss(model, vocab, dev_pairs, config.batch_size)
        mean_loss = running_loss / running_count if running_count else 0.0
        running_loss = 0.0
        running_count = 0
        record = {
            "step": step,
            "metrics": {
                "dev_loss": val_loss,
                "dev_sequence_accuracy": accuracy,
                "train_loss": mean_loss,
            },
        }
        log_handle.write(json.dumps(record, sort_keys=True) + "\n")
        log_handle.flush()
        if config.keep_all:
            _save(out_dir / f"step_{step:07d}.pt", model, vocab, config, step, accuracy, val_loss)
        if val_loss < best_loss - 1e-9:
            best_loss = val_loss
            best_step = step
            evals_since_best = 0
            _save(out_dir / "best.pt", model, vocab, config, step, accuracy, val_loss)
        else:
            evals_since_best += 1
        best_accuracy = max(best_accuracy, accuracy)
        last_accuracy = accuracy
        last_loss = val_loss
        model.train()

    model.train()
    epoch = 0
    for epoch in range(1, config.max_epochs + 1):
        epoch_rng = Random(config.seed * 1_000_003 + epoch)
        for batch in batches(train_pairs, vocab, config.batch_size, epoch_rng):
            optimizer.zero_grad()
            logits = model(batch.sources, batch.source_lengths, batch.decoder_input)
            loss = loss_fn(logits.reshape(-1, logits.shape[-1]), batch.decoder_target.reshape(-1))
            loss.backward()
            optimizer.step()
            step += 1
            running_loss += loss.item()
            running_count += 1
            if step % config.eval_every == 0:
                evaluate_now()
                if (
                    epoch > config.min_epochs
                    and evals_since_best >= config.patience
                ):
                    stop = True
                    break
        if stop:
            break

    if step % config.eval_every != 0:
        evaluate_now()
    _save(out_dir / "final.pt", model, vocab, config, step, last_accuracy, last_loss)
    log_handle.close()
    summary = {
        "steps": step,
        "epochs": epoch,
        "best_dev_loss": best_loss,
        "best_step": best_step,
        "best_dev_sequence_accuracy": best_accuracy,
        "stopped_early": stop,
    }
    (out_dir / "summary.json").write_text(
        json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return summary
