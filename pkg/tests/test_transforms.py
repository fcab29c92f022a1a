"""Transformation oracles against the hand-checked pairs, plus the edit
script replay invariant."""

from __future__ import annotations

import pytest

from syntrans import default_lexicon
from syntrans.parsing import parse_sentence
from syntrans.transforms import (
    identity,
    passiv_hierarchical,
    passiv_linear,
    quest_hierarchical,
    quest_linear,
    replay,
)

import golden_pairs

_LEX = {lang: default_lexicon(lang) for lang in ("en", "de")}


def _check(result, expected):
    assert " ".join(result.output) == expected
    assert replay(result) == result.output


@pytest.mark.parametrize("language,source,expected", golden_pairs.QUEST_HIERARCHICAL)
def test_quest_hierarchical_golden(language, source, expected):
    lexicon = _LEX[language]
    tree = parse_sentence(source, "quest", lexicon)
    assert tree.text() == source
    _check(quest_hierarchical(tree, lexicon), expected)


@pytest.mark.parametrize("language,source,expected", golden_pairs.QUEST_LINEAR)
def test_quest_linear_golden(language, source, expected):
    lexicon = _LEX[language]
    _check(quest_linear(source.split(), lexicon), expected)


@pytest.mark.parametrize("language,source,expected", golden_pairs.PASSIV_HIERARCHICAL)
def test_passiv_hierarchical_golden(language, source, expected):
    lexicon = _LEX[language]
    tree = parse_sentence(source, "passiv", lexicon)
    assert tree.text() == source
    _check(passiv_hierarchical(tree, lexicon), expected)


@pytest.mark.parametrize("language,source,expected", golden_pairs.PASSIV_LINEAR)
def test_passiv_linear_golden(language, source, expected):
    lexicon = _LEX[language]
    _check(passiv_linear(source.split(), lexicon), expected)


@pytest.mark.parametrize("language,task,source", golden_pairs.IDENTITY)
def test_identity_golden(language, task, source):
    result = identity(source.split())
    assert " ".join(result.output) == source
    assert replay(result) == result.output


def test_ops_cover_output_in_order():
    lexicon = _LEX["en"]
    tree = parse_sentence("my zebras have amused some walrus who has waited .", "quest", lexicon)
    result = quest_hierarchical(tree, lexicon)
    labels = [op.label for op in result.ops]
    assert labels[0] == "fronted_aux"
    assert labels[-1] == "punct"
    # copied spans reference real source positions
    for op in result.ops:
        if op.src is not None:
            lo, hi = op.src
            assert 0 <= lo <= hi <= len(result.source)
            if op.kind == "copy":
                assert result.source[lo:hi] == op.tokens
