"""Reading pair files and turning them into padded batches.

The input format is tab-separated source/target token lines; the task
marker is expected to be part of the source string (its last token), so
nothing here interprets markers at all. Batches are grouped by source
length to keep padding small, shuffled with a seeded generator for
reproducible epochs.
"""

from __future__ import annotations

from pathlib import Path
from random import Random
from typing import Iterator, Sequence

import torch

from .errors import DataError
from .vocab import BOS, PAD, Vocab

Pair = tuple[list[str], list[str]]


def read_pairs(path: Path) -> list[Pair]:
    pairs = []
    try:
        handle = open(path, encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    with handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise DataError(
                    f"{path}:{lineno}: expected source<TAB>target, got {len(fields)} fields"
                )
            source, target = fields
            if not source.split() or not target.split():
                raise DataError(f"{path}:{lineno}: empty side")
            pairs.append((source.split(), target.split()))
    if not pairs:
        raise DataError(f"{path}: no examples")
    return pairs


class Batch:
    """Tensors for one step: padded source ids, source lengths, decoder
    input (BOS-prefixed target) and decoder output (EOS-suffixed)."""

    def __init__(self, sources, source_lengths, decoder_input, decoder_target):
        self.sources = sources
        self.source_lengths = source_lengths
        self.decoder_input = decoder_input
        self.decoder_target = decoder_target

    def __len__(self) -> int:
        return self.sources.shape[0]


def collate(pairs: Sequence[Pair], vocab: Vocab) -> Batch:
    sources = [vocab.encode(src) for src, _ in pairs]
    targets = [vocab.encode(tgt, add_eos=True) for _, tgt in pairs]
    max_src = max(len(s) for s in sources)
    max_tgt = max(len(t) for t in targets)
    src_tensor = torch.full((len(pairs), max_src), PAD, dtype=torch.long)
    dec_in = torch.full((len(pairs), max_tgt), PAD, dtype=torch.long)
    dec_out = torch.full((len(pairs), max_tgt), PAD, dtype=torch.long)
    lengths = torch.zeros(len(pairs), dtype=torch.long)
    for i, (src, tgt) in enumerate(zip(sources, targets)):
        src_tensor[i, : len(src)] = torch.tensor(src)
        lengths[i] = len(src)
        dec_in[i, 0] = BOS
        dec_in[i, 1 : len(tgt)] = torch.tensor(tgt[:-1])
        dec_out[i, : len(tgt)] = torch.tensor(tgt)
    return Batch(src_tensor, lengths, dec_in, dec_out)


def batches(
    pairs: Sequence[Pair],
    vocab: Vocab,
    batch_size: int,
    rng: Random,
    shuffle: bool = True,
) -> Iterator[Batch]:
    """Length-bucketed batches. Ordering depends only on the rng state,
    so a seeded run sees a reproducible sequence of batches."""
    order = list(range(len(pairs)))
    if shuffle:
        rng.shuffle(order)
        order.sort(key=lambda i: len(pairs[i][0]))  # stable: keeps shuffle within a length
    chunks = [order[i : i + batch_size] for i in range(0, len(order), batch_size)]
    if shuffle:
        rng.shuffle(chunks)
    for chunk in chunks:
        yield collate([pairs[i] for i in chunk], vocab)
