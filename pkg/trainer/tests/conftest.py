from pathlib import Path
from random import Random

import pytest

from seqtrainer.train import TrainConfig, train

ALPHABET = [f"w{i}" for i in range(12)]


def write_copy_file(path: Path, count: int, seed: int) -> None:
    """Toy task: copy the source minus its leading instruction token.

    The trainer never interprets markers, so the toy task can put its
    marker first, where the tiny fixture model converges quickly.
    """
    rng = Random(seed)
    lines = []
    for _ in range(count):
        tokens = [rng.choice(ALPHABET) for _ in range(rng.randint(3, 7))]
        lines.append(" ".join(["copy"] + tokens) + "\t" + " ".join(tokens))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


@pytest.fixture(scope="session")
def copy_data(tmp_path_factory) -> Path:
    root = tmp_path_factory.mktemp("copy_data")
    write_copy_file(root / "train.tsv", 600, seed=11)
    write_copy_file(root / "dev.tsv", 60, seed=12)
    write_copy_file(root / "test.tsv", 60, seed=13)
    return root


@pytest.fixture(scope="session")
def tiny_run(copy_data, tmp_path_factory):
    """One small training run shared by the checkpoint and predict tests."""
    out = tmp_path_factory.mktemp("tiny_run")
    # Sequence accuracy sits at zero for a while before the copy task
    # clicks, so the patience window has to be generous.
    config = TrainConfig(
        data_dir=str(copy_data),
        out_dir=str(out),
        architecture="lstm",
        seed=1,
        embedding_dim=32,
        hidden_dim=64,
        batch_size=32,
        learning_rate=1e-3,  # tiny model, tiny data; the default is too slow here
        max_epochs=100,
        eval_every=40,
        patience=12,
        min_epochs=2,
    )
    summary = train(config)
    return {"dir": out, "summary": summary, "data": copy_data}
