import pytest

from seqtrainer.vocab import BOS, EOS, PAD, SPECIALS, UNK, Vocab


def test_special_ids():
    assert (PAD, BOS, EOS, UNK) == (0, 1, 2, 3)
    vocab = Vocab.build([["a", "b"], ["b"]])
    assert vocab.tokens[:4] == list(SPECIALS)


def test_build_orders_by_frequency_then_token():
    vocab = Vocab.build([["b", "a", "b"], ["c", "a"]])
    # a and b both occur twice, a wins alphabetically; c occurs once
    assert vocab.tokens[4:] == ["a", "b", "c"]


def test_build_is_deterministic_across_input_order():
    left = Vocab.build([["x", "y"], ["z", "x"]])
    right = Vocab.build([["z", "x"], ["x", "y"]])
    assert left.tokens == right.tokens


def test_build_ignores_special_literals_in_data():
    vocab = Vocab.build([["<unk>", "a", "<pad>"]])
    assert vocab.tokens.count("<unk>") == 1
    assert vocab.tokens.count("<pad>") == 1
    assert "a" in vocab.tokens


def test_encode_decode_roundtrip():
    vocab = Vocab.build([["a", "b", "c"]])
    tokens = ["c", "a", "b", "a"]
    assert vocab.decode(vocab.encode(tokens)) == tokens


def test_encode_appends_eos_on_request():
    vocab = Vocab.build([["a"]])
    assert vocab.encode(["a"], add_eos=True)[-1] == EOS
    assert vocab.encode(["a"])[-1] != EOS


def test_unknown_tokens_map_to_unk():
    vocab = Vocab.build([["a"]])
    assert vocab.encode(["novel"]) == [UNK]
    assert vocab.decode([UNK]) == ["<unk>"]


def test_decode_stops_at_eos_and_skips_padding():
    vocab = Vocab.build([["a", "b"]])
    a = vocab.index["a"]
    b = vocab.index["b"]
    assert vocab.decode([BOS, a, PAD, b, EOS, a, a]) == ["a", "b"]


def test_count_unknown():
    vocab = Vocab.build([["a", "b"]])
    assert vocab.count_unknown(["a", "x", "y", "b", "x"]) == 3


def test_dict_roundtrip():
    vocab = Vocab.build([["a", "b", "c"], ["c", "c"]])
    clone = Vocab.from_dict(vocab.to_dict())
    assert clone.tokens == vocab.tokens
    assert clone.index == vocab.index


def test_constructor_rejects_missing_specials():
    with pytest.raises(ValueError):
        Vocab(["a", "b", "c", "d"])


def test_constructor_rejects_duplicates():
    with pytest.raises(ValueError):
        Vocab(list(SPECIALS) + ["a", "a"])
