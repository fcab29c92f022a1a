"""Token vocabulary shared by source and target sides.

Built from the training file only; anything unseen later maps to the
unknown symbol. Index order is frozen by (frequency desc, token asc) so
the same corpus always yields the same ids.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Sequence

PAD, BOS, EOS, UNK = 0, 1, 2, 3
SPECIALS = ("<pad>", "<s>", "</s>", "<unk>")


class Vocab:
    def __init__(self, tokens: Sequence[str]):
        for i, special in enumerate(SPECIALS):
            if tokens[i] != special:
                raise ValueError(f"token {i} must be {special!r}, got {tokens[i]!r}")
        self.tokens = list(tokens)
        self.index = {tok: i for i, tok in enumerate(self.tokens)}
        if len(self.index) != len(self.tokens):
            raise ValueError("duplicate tokens in vocabulary")

    def __len__(self) -> int:
        return len(self.tokens)

    @classmethod
    def build(cls, sequences: Iterable[Sequence[str]]) -> "Vocab":
        counts: Counter = Counter()
        for seq in sequences:
            counts.update(seq)
        ordered = sorted(counts, key=lambda t: (-counts[t], t))
        return cls(list(SPECIALS) + [t for t in ordered if t not in SPECIALS])

    def encode(self, tokens: Sequence[str], add_eos: bool = False) -> list[int]:
        ids = [self.index.get(tok, UNK) for tok in tokens]
        if add_eos:
            ids.append(EOS)
        return ids

    def decode(self, ids: Sequence[int]) -> list[str]:
        out = []
        for i in ids:
            if i == EOS:
                break
            if i in (PAD, BOS):
                continue
            out.append(self.tokens[i])
        return out

    def count_unknown(self, tokens: Sequence[str]) -> int:
        return sum(1 for tok in tokens if tok not in self.index)

    def to_dict(self) -> dict:
        return {"tokens": self.tokens}

    @classmethod
    def from_dict(cls, payload: dict) -> "Vocab":
        return cls(payload["tokens"])
