from random import Random

import pytest
import torch

from seqtrainer.data import Batch, batches, collate, read_pairs
from seqtrainer.errors import DataError
from seqtrainer.vocab import BOS, EOS, PAD, Vocab


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


def test_read_pairs_parses_and_preserves_order(tmp_path):
    path = write(tmp_path / "d.tsv", "a b c go\tc b a\n\nx go\tx\n")
    pairs = read_pairs(path)
    assert pairs == [(["a", "b", "c", "go"], ["c", "b", "a"]), (["x", "go"], ["x"])]


def test_read_pairs_rejects_wrong_field_count(tmp_path):
    path = write(tmp_path / "d.tsv", "a b\tc d\nonly one field\n")
    with pytest.raises(DataError, match="line 2|:2"):
        read_pairs(path)
    path = write(tmp_path / "e.tsv", "a\tb\tc\n")
    with pytest.raises(DataError):
        read_pairs(path)


def test_read_pairs_rejects_empty_side(tmp_path):
    with pytest.raises(DataError):
        read_pairs(write(tmp_path / "d.tsv", "a b\t \n"))


def test_read_pairs_rejects_empty_file(tmp_path):
    with pytest.raises(DataError):
        read_pairs(write(tmp_path / "d.tsv", "\n\n"))


def test_read_pairs_missing_file_is_a_data_error(tmp_path):
    with pytest.raises(DataError):
        read_pairs(tmp_path / "absent.tsv")


def test_collate_shapes_and_padding():
    vocab = Vocab.build([["a", "b", "c"]])
    pairs = [(["a", "b", "c"], ["c", "b"]), (["b"], ["a", "b", "c"])]
    batch = collate(pairs, vocab)
    assert isinstance(batch, Batch)
    assert len(batch) == 2
    assert batch.sources.shape == (2, 3)
    assert batch.source_lengths.tolist() == [3, 1]
    # second source padded after its single token
    assert batch.sources[1, 1:].tolist() == [PAD, PAD]
    # decoder input is BOS plus the target without its final symbol
    a, b, c = (vocab.index[t] for t in "abc")
    assert batch.decoder_input[0].tolist() == [BOS, c, b, PAD]
    assert batch.decoder_target[0].tolist() == [c, b, EOS, PAD]
    assert batch.decoder_input[1].tolist() == [BOS, a, b, c]
    assert batch.decoder_target[1].tolist() == [a, b, c, EOS]


def test_batches_cover_every_pair_exactly_once():
    pairs = [([f"s{i}", "t"], [f"s{i}"]) for i in range(53)]
    vocab = Vocab.build([src for src, _ in pairs] + [tgt for _, tgt in pairs])
    seen = []
    for batch in batches(pairs, vocab, 8, Random(0)):
        assert len(batch) <= 8
        for row, length in zip(batch.sources, batch.source_lengths):
            seen.append(tuple(row[: int(length)].tolist()))
    assert len(seen) == 53
    assert len(set(seen)) == 53


def test_batches_are_reproducible_for_a_seed():
    pairs = [([f"s{i}", "t"], [f"s{i}"]) for i in range(40)]
    vocab = Vocab.build([src for src, _ in pairs] + [tgt for _, tgt in pairs])

    def flatten(rng):
        return [b.sources.tolist() for b in batches(pairs, vocab, 7, rng)]

    assert flatten(Random(5)) == flatten(Random(5))
    assert flatten(Random(5)) != flatten(Random(6))


def test_batches_without_shuffle_keep_file_order():
    pairs = [([f"s{i}", "t"], [f"s{i}"]) for i in range(10)]
    vocab = Vocab.build([src for src, _ in pairs] + [tgt for _, tgt in pairs])
    ids = []
    for batch in batches(pairs, vocab, 4, Random(0), shuffle=False):
        for row, length in zip(batch.sources, batch.source_lengths):
            ids.append(vocab.tokens[row[0].item()])
    assert ids == [f"s{i}" for i in range(10)]


def test_batches_group_similar_source_lengths():
    rng = Random(2)
    pairs = []
    for i in range(200):
        n = rng.randint(2, 9)
        pairs.append((["tok"] * n, ["tok"]))
    vocab = Vocab.build([["tok"]])
    for batch in batches(pairs, vocab, 16, Random(1)):
        lengths = batch.source_lengths.tolist()
        assert max(lengths) - min(lengths) <= 1


def test_batch_tensors_are_long_typed():
    vocab = Vocab.build([["a"]])
    batch = collate([(["a"], ["a"])], vocab)
    for tensor in (batch.sources, batch.source_lengths, batch.decoder_input, batch.decoder_target):
        assert tensor.dtype == torch.long
