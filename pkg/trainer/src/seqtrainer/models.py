"""The baseline architectures.

Deliberately small encoder-decoder models sharing one vocabulary: a
single-layer LSTM (with dot-product attention, or without attention so
the decoder sees only the encoder's final state) and a single-layer
Transformer with 4 heads. Teacher-forced training uses `forward`;
greedy decoding drives the per-step APIs.
"""

from __future__ import annotations

import math

import torch
from torch import nn

from .errors import DataError

from .vocab import PAD


def _source_mask(lengths: torch.Tensor, max_len: int) -> torch.Tensor:
    # True at padding positions
    positions = torch.arange(max_len, device=lengths.device)
    return positions.unsqueeze(0) >= lengths.unsqueeze(1)


class LstmSeq2Seq(nn.Module):
    def __init__(
        self,
        vocab_size: int,
        embedding_dim: int = 256,
        hidden_dim: int = 256,
        attention: bool = True,
    ):
        super().__init__()
        self.embedding = nn.Embedding(vocab_size, embedding_dim, padding_idx=PAD)
        self.encoder = nn.LSTM(embedding_dim, hidden_dim, batch_first=True)
        self.decoder = nn.LSTM(embedding_dim, hidden_dim, batch_first=True)
        self.attention = attention
        if attention:
            self.combine = nn.Linear(hidden_dim * 2, hidden_dim)
        self.out = nn.Linear(hidden_dim, vocab_size)
        self.hidden_dim = hidden_dim

    def encode(self, sources: torch.Tensor, lengths: torch.Tensor):
        embedded = self.embedding(sources)
        packed = nn.utils.rnn.pack_padded_sequence(
            embedded, lengths.cpu(), batch_first=True, enforce_sorted=False
        )
        outputs, state = self.encoder(packed)
        outputs, _ = nn.utils.rnn.pad_packed_sequence(
            outputs, batch_first=True, total_length=sources.shape[1]
        )
        mask = _source_mask(lengths, sources.shape[1])
        return outputs, state, mask

    def _attend(self, decoded, memory, memory_mask):
        if not self.attention:
            # the decoder is conditioned on the encoder state alone
            return self.out(decoded)
        # dot-product attention over encoder states
        scores = decoded @ memory.transpose(1, 2)
        scores = scores.masked_fill(memory_mask.unsqueeze(1), float("-inf"))
        context = torch.softmax(scores, dim=-1) @ memory
        mixed = torch.tanh(self.combine(torch.cat([decoded, context], dim=-1)))
        return self.out(mixed)

    def decode_step(self, tokens, state, memory, memory_mask):
        """One greedy step: tokens (batch, 1) -> logits (batch, vocab)."""
        decoded, state = self.decoder(self.embedding(tokens), state)
        logits = self._attend(decoded, memory, memory_mask)
        return logits.squeeze(1), state

    def forward(self, sources, lengths, decoder_input):
        memory, state, mask = self.encode(sources, lengths)
        decoded, _ = self.decoder(self.embedding(decoder_input), state)
        return self._attend(decoded, memory, mask)


class TransformerSeq2Seq(nn.Module):
    def __init__(
        self,
        vocab_size: int,
        embedding_dim: int = 256,
        heads: int = 4,
        feedforward_dim: int = 1024,
        dropout: float = 0.1,
        max_len: int = 128,
    ):
        super().__init__()
        self.embedding = nn.Embedding(vocab_size, embedding_dim, padding_idx=PAD)
        self.positions = nn.Embedding(max_len, embedding_dim)
        self.scale = math.sqrt(embedding_dim)
        self.dropout = nn.Dropout(dropout)
        encoder_layer = nn.TransformerEncoderLayer(
            embedding_dim, heads, feedforward_dim, dropout, batch_first=True
        )
        decoder_layer = nn.TransformerDecoderLayer(
            embedding_dim, heads, feedforward_dim, dropout, batch_first=True
        )
        # The nested-tensor fast path changes numerics between train and
        # eval and is still flagged experimental; keep it off.
        self.encoder = nn.TransformerEncoder(
            encoder_layer, num_layers=1, enable_nested_tensor=False
        )
        self.decoder = nn.TransformerDecoder(decoder_layer, num_layers=1)
        self.out = nn.Linear(embedding_dim, vocab_size)
        self.max_len = max_len

    def _embed(self, tokens: torch.Tensor) -> torch.Tensor:
        if tokens.shape[1] > self.max_len:
            raise ValueError(f"sequence length {tokens.shape[1]} exceeds {self.max_len}")
        indices = torch.arange(tokens.shape[1], device=tokens.device)
        return self.dropout(self.embedding(tokens) * self.scale + self.positions(indices))

    def encode(self, sources: torch.Tensor, lengths: torch.Tensor):
        mask = _source_mask(lengths, sources.shape[1])
        memory = self.encoder(self._embed(sources), src_key_padding_mask=mask)
        return memory, None, mask

    def _decode(self, decoder_input, memory, memory_mask):
        # Boolean causal mask; mixing float and bool masks is deprecated.
        steps = decoder_input.shape[1]
        causal = torch.triu(
            torch.ones(steps, steps, dtype=torch.bool, device=decoder_input.device),
            diagonal=1,
        )
        pad_mask = decoder_input == PAD
        decoded = self.decoder(
            self._embed(decoder_input),
            memory,
            tgt_mask=causal,
            tgt_key_padding_mask=pad_mask,
            memory_key_padding_mask=memory_mask,
        )
        return self.out(decoded)

    def decode_step(self, prefix, state, memory, memory_mask):
        """Greedy step over the whole prefix (batch, t); returns logits
        for the next token. state is the running prefix tensor."""
        logits = self._decode(prefix, memory, memory_mask)
        return logits[:, -1, :], state

    def forward(self, sources, lengths, decoder_input):
        memory, _, mask = self.encode(sources, lengths)
        return self._decode(decoder_input, memory, mask)


ARCHITECTURES = ("lstm", "lstm_noattn", "transformer")


def build_model(architecture: str, vocab_size: int, embedding_dim: int, hidden_dim: int) -> nn.Module:
    if architecture == "lstm":
        return LstmSeq2Seq(vocab_size, embedding_dim, hidden_dim)
    if architecture == "lstm_noattn":
        return LstmSeq2Seq(vocab_size, embedding_dim, hidden_dim, attention=False)
    if architecture == "transformer":
        return TransformerSeq2Seq(vocab_size, embedding_dim)
    raise DataError(f"unknown architecture {architecture!r}")
