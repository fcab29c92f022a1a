"""Batched greedy decoding."""

from __future__ import annotations

from typing import Sequence

import torch

from .data import Pair
from .models import LstmSeq2Seq
from .vocab import BOS, EOS, PAD, Vocab


@torch.no_grad()
def greedy_decode(
    model,
    vocab: Vocab,
    sources: Sequence[list[str]],
    batch_size: int = 256,
    extra_length: int = 12,
) -> list[list[str]]:
    """One greedy decode per source. Length budget is the source length
    plus a margin; the transformations never grow a sentence more than
    a couple of tokens."""
    model.eval()
    outputs: list[list[str]] = []
    for start in range(0, len(sources), batch_size):
        chunk = sources[start : start + batch_size]
        encoded = [vocab.encode(src) for src in chunk]
        max_src = max(len(s) for s in encoded)
        src_tensor = torch.full((len(chunk), max_src), PAD, dtype=torch.long)
        lengths = torch.zeros(len(chunk), dtype=torch.long)
        for i, ids in enumerate(encoded):
            src_tensor[i, : len(ids)] = torch.tensor(ids)
            lengths[i] = len(ids)
        memory, state, mask = model.encode(src_tensor, lengths)
        limit = max_src + extra_length
        stepwise = isinstance(model, LstmSeq2Seq)
        tokens = torch.full((len(chunk), 1), BOS, dtype=torch.long)
        prefix = tokens
        finished = torch.zeros(len(chunk), dtype=torch.bool)
        produced = torch.full((len(chunk), limit), PAD, dtype=torch.long)
        for t in range(limit):
            if stepwise:
                logits, state = model.decode_step(tokens, state, memory, mask)
            else:
                logits, _ = model.decode_step(prefix, None, memory, mask)
            next_tokens = logits.argmax(dim=-1)
            next_tokens = torch.where(finished, torch.full_like(next_tokens, PAD), next_tokens)
            produced[:, t] = next_tokens
            finished |= next_tokens == EOS
            if bool(finished.all()):
                break
            tokens = next_tokens.unsqueeze(1)
            prefix = torch.cat([prefix, tokens], dim=1)
        # Budget is per item, not per batch, so decodes do not depend on
        # what an item was batched with.
        outputs.extend(
            vocab.decode(row[: len(ids) + extra_length].tolist())
            for ids, row in zip(encoded, produced)
        )
    return outputs


@torch.no_grad()
def sequence_accuracy(model, vocab: Vocab, pairs: Sequence[Pair], batch_size: int = 256) -> float:
    predictions = greedy_decode(model, vocab, [src for src, _ in pairs], batch_size)
    hits = sum(pred == tgt for pred, (_, tgt) in zip(predictions, pairs))
    return hits / len(pairs) if pairs else 0.0
