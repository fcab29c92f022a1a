import pytest
import torch

from seqtrainer.data import collate
from seqtrainer.errors import DataError
from seqtrainer.models import (
    ARCHITECTURES,
    LstmSeq2Seq,
    TransformerSeq2Seq,
    build_model,
)
from seqtrainer.vocab import BOS, Vocab

PAIRS = [
    (["a", "b", "c", "go"], ["c", "b", "a"]),
    (["b", "go"], ["b"]),
    (["c", "a", "go"], ["a", "c"]),
]


def make(arch, seed=0, dim=16):
    torch.manual_seed(seed)
    vocab = Vocab.build([s for s, _ in PAIRS] + [t for _, t in PAIRS])
    model = build_model(arch, len(vocab), dim, dim)
    return model, vocab


@pytest.mark.parametrize("arch", ARCHITECTURES)
def test_forward_shape(arch):
    model, vocab = make(arch)
    batch = collate(PAIRS, vocab)
    logits = model(batch.sources, batch.source_lengths, batch.decoder_input)
    assert logits.shape == (3, batch.decoder_input.shape[1], len(vocab))
    assert torch.isfinite(logits).all()


@pytest.mark.parametrize("arch", ARCHITECTURES)
def test_seeded_construction_is_deterministic(arch):
    model_a, vocab = make(arch, seed=7)
    model_b, _ = make(arch, seed=7)
    batch = collate(PAIRS, vocab)
    model_a.eval()
    model_b.eval()
    with torch.no_grad():
        left = model_a(batch.sources, batch.source_lengths, batch.decoder_input)
        right = model_b(batch.sources, batch.source_lengths, batch.decoder_input)
    assert torch.equal(left, right)


def test_build_model_dispatch():
    assert isinstance(build_model("lstm", 10, 8, 8), LstmSeq2Seq)
    assert isinstance(build_model("transformer", 10, 8, 8), TransformerSeq2Seq)
    with pytest.raises(DataError):
        build_model("gru", 10, 8, 8)


def test_lstm_single_layer():
    model, _ = make("lstm")
    assert model.encoder.num_layers == 1
    assert model.decoder.num_layers == 1


def test_transformer_single_layer_four_heads():
    model, _ = make("transformer")
    assert model.encoder.num_layers == 1
    assert model.decoder.num_layers == 1
    assert model.encoder.layers[0].self_attn.num_heads == 4
    assert model.decoder.layers[0].self_attn.num_heads == 4


def test_lstm_stepwise_decode_matches_forward():
    """Teacher-forced forward and token-by-token decoding agree."""
    model, vocab = make("lstm")
    model.eval()
    batch = collate(PAIRS, vocab)
    with torch.no_grad():
        full = model(batch.sources, batch.source_lengths, batch.decoder_input)
        memory, state, mask = model.encode(batch.sources, batch.source_lengths)
        stepped = []
        for t in range(batch.decoder_input.shape[1]):
            logits, state = model.decode_step(
                batch.decoder_input[:, t : t + 1], state, memory, mask
            )
            stepped.append(logits)
    assert torch.allclose(full, torch.stack(stepped, dim=1), atol=1e-5)


def test_transformer_prefix_decode_matches_forward():
    """Last-position logits from a prefix equal the teacher-forced row."""
    model, vocab = make("transformer")
    model.eval()
    batch = collate(PAIRS, vocab)
    with torch.no_grad():
        full = model(batch.sources, batch.source_lengths, batch.decoder_input)
        memory, _, mask = model.encode(batch.sources, batch.source_lengths)
        for t in range(1, batch.decoder_input.shape[1] + 1):
            prefix = batch.decoder_input[:, :t]
            logits, _ = model.decode_step(prefix, None, memory, mask)
            assert torch.allclose(full[:, t - 1, :], logits, atol=1e-5)


@pytest.mark.parametrize("arch", ARCHITECTURES)
def test_padding_does_not_change_output(arch):
    """Extra padding columns on the source side are inert."""
    model, vocab = make(arch)
    model.eval()
    short = collate(PAIRS[1:2], vocab)
    padded_sources = torch.zeros((1, 6), dtype=torch.long)
    padded_sources[0, : short.sources.shape[1]] = short.sources[0]
    with torch.no_grad():
        base = model(short.sources, short.source_lengths, short.decoder_input)
        wide = model(padded_sources, short.source_lengths, short.decoder_input)
    assert torch.allclose(base, wide, atol=1e-5)


def test_transformer_rejects_overlong_input():
    torch.manual_seed(0)
    model = TransformerSeq2Seq(vocab_size=10, embedding_dim=8, max_len=4)
    tokens = torch.full((1, 5), BOS, dtype=torch.long)
    lengths = torch.tensor([5])
    with pytest.raises(ValueError):
        model.encode(tokens, lengths)
