"""Corpus mining for declarative/question sentence pairs.

The point of this module is an empirical question: how often does real
text pair a declarative with its corresponding polar question in a way
that reveals which auxiliary moved? We look for near-duplicate sentence
pairs inside a document where exactly one variant is auxiliary-initial,
then check whether the declarative has a relative clause on its subject
(the configuration that disambiguates a movement rule). Counts from a
sample can then be scaled to a corpus-sized expectation.

Everything here runs on raw text with per-language word lists; it does
not depend on the toy grammar.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import DataError

EN_AUXILIARIES = frozenset(
    """
    is are was were am be been being has have had do does did
    can could will would shall should may might must
    isn't aren't wasn't weren't hasn't haven't hadn't don't doesn't didn't
    can't couldn't won't wouldn't shan't shouldn't mightn't mustn't
    """.split()
)
EN_RELATIVE_PRONOUNS = frozenset("who whom whose which that".split())

DE_AUXILIARIES = frozenset(
    """
    ist sind war waren bin bist seid hat haben habe hast habt hatte hatten
    wird werden wurde wurden kann können kannst könnt konnte konnten
    muss müssen musste soll sollen sollte will wollen wollte
    darf dürfen durfte mag mögen mochte
    """.split()
)
DE_RELATIVE_PRONOUNS = frozenset(
    "der die das den dem denen deren dessen welche welcher welches welchem welchen".split()
)

DEFAULT_ABBREVIATIONS = frozenset(
    """
    mr mrs ms dr prof st etc vs jr sr inc fig no
    e.g i.e z.b bzw usw ca nr abb vgl
    """.split()
)

_WORD_TRIM = re.compile(r"^[^\w']+|[^\w']+$", re.UNICODE)


@dataclass(frozen=True)
class MinerConfig:
    language: str = "en"
    jaccard_threshold: float = 0.7
    multiset: bool = False
    window: int = 10  # max sentence distance within a document
    min_distinct_auxiliaries: int = 2
    auxiliaries: frozenset = field(default_factory=frozenset)
    relative_pronouns: frozenset = field(default_factory=frozenset)
    abbreviations: frozenset = DEFAULT_ABBREVIATIONS

    def __post_init__(self) -> None:
        if self.language not in ("en", "de"):
            raise DataError(f"unsupported language {self.language!r}")
        if not self.auxiliaries:
            words = EN_AUXILIARIES if self.language == "en" else DE_AUXILIARIES
            object.__setattr__(self, "auxiliaries", words)
        if not self.relative_pronouns:
            words = EN_RELATIVE_PRONOUNS if self.language == "en" else DE_RELATIVE_PRONOUNS
            object.__setattr__(self, "relative_pronouns", words)


@dataclass(frozen=True)
class MinedPair:
    doc_id: str
    declarative_index: int
    question_index: int
    declarative: str
    question: str
    similarity: float
    rc_on_subject: bool


@dataclass(frozen=True)
class DisambiguationEstimate:
    pair_probability: float
    rc_probability: float
    corpus_size: int
    expected_count: float


def segment(text: str, abbreviations: frozenset = DEFAULT_ABBREVIATIONS) -> list[str]:
    """Split text into sentences on ./!/? followed by whitespace, unless
    the period closes a known abbreviation or sits inside a number."""
    sentences = []
    start = 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in ".!?":
            end = i
            while end + 1 < len(text) and text[end + 1] in ".!?\"'”’)":
                end += 1
            at_break = end + 1 >= len(text) or text[end + 1].isspace()
            if at_break and ch == ".":
                preceding = text[start:i].split()
                last = preceding[-1].lower() if preceding else ""
                last = last.strip("\"'“”‘’()[]")
                if last in abbreviations or last.rstrip(".") in abbreviations:
                    at_break = False
                elif i + 1 < len(text) and text[i - 1 : i].isdigit() and text[i + 1 : i + 2].isdigit():
                    at_break = False
            if at_break:
                piece = text[start : end + 1].strip()
                if piece:
                    sentences.append(piece)
                start = end + 1
                i = end + 1
                continue
        i += 1
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def words(sentence: str) -> list[str]:
    """Lowercased word tokens with surrounding punctuation stripped;
    internal apostrophes and hyphens survive."""
    out = []
    for raw in sentence.split():
        token = _WORD_TRIM.sub("", raw).lower()
        if token:
            out.append(token)
    return out


def jaccard(a: Sequence[str], b: Sequence[str], multiset: bool = False) -> float:
    """Word overlap between two token sequences. The default compares
    type sets; multiset=True weights repeated tokens."""
    if not multiset:
        sa, sb = set(a), set(b)
        union = sa | sb
        return len(sa & sb) / len(union) if union else 0.0
    ca, cb = Counter(a), Counter(b)
    inter = sum((ca & cb).values())
    union = sum((ca | cb).values())
    return inter / union if union else 0.0


def _aux_initial(tokens: Sequence[str], config: MinerConfig) -> bool:
    return bool(tokens) and tokens[0] in config.auxiliaries


def _distinct_auxiliaries(tokens: Sequence[str], config: MinerConfig) -> int:
    return len({t for t in tokens if t in config.auxiliaries})


def detect_rc_on_subject(sentence: str, config: MinerConfig) -> bool:
    """True when a relative pronoun occurs before the first auxiliary,
    i.e. the clause modifies something in pre-auxiliary (subject)
    position. German relative pronouns are only counted after a comma,
    since the same forms are articles."""
    raw = sentence.split()
    first_rel: Optional[int] = None
    first_aux: Optional[int] = None
    previous = ""
    for position, token in enumerate(raw):
        word = _WORD_TRIM.sub("", token).lower()
        if not word:
            previous = token
            continue
        if first_aux is None and word in config.auxiliaries:
            first_aux = position
        if first_rel is None and word in config.relative_pronouns:
            comma_ok = config.language != "de" or previous.endswith(",")
            if comma_ok:
                first_rel = position
        previous = token
    return first_rel is not None and first_aux is not None and first_rel < first_aux


def scan_pairs(documents: Iterable[tuple[str, str]], config: MinerConfig) -> list[MinedPair]:
    """Find declarative/question pairs inside each document.

    A pair qualifies when the two sentences overlap above the jaccard
    threshold, exactly one of them starts with an auxiliary, and both
    contain at least min_distinct_auxiliaries distinct auxiliary types
    (so the pair could in principle show which one fronts).
    """
    pairs = []
    for doc_id, text in documents:
        sentences = segment(text, config.abbreviations)
        tokenized = [words(s) for s in sentences]
        for i in range(len(sentences)):
            upper = min(len(sentences), i + 1 + config.window)
            for j in range(i + 1, upper):
                first_initial = _aux_initial(tokenized[i], config)
                second_initial = _aux_initial(tokenized[j], config)
                if first_initial == second_initial:
                    continue
                score = jaccard(tokenized[i], tokenized[j], config.multiset)
                if score <= config.jaccard_threshold:
                    continue
                if (
                    _distinct_auxiliaries(tokenized[i], config) < config.min_distinct_auxiliaries
                    or _distinct_auxiliaries(tokenized[j], config) < config.min_distinct_auxiliaries
                ):
                    continue
                if first_initial:
                    quest_at, decl_at = i, j
                else:
                    decl_at, quest_at = i, j
                pairs.append(
                    MinedPair(
                        doc_id=doc_id,
                        declarative_index=decl_at,
                        question_index=quest_at,
                        declarative=sentences[decl_at],
                        question=sentences[quest_at],
                        similarity=score,
                        rc_on_subject=detect_rc_on_subject(sentences[decl_at], config),
                    )
                )
    pairs.sort(key=lambda p: (p.doc_id, p.declarative_index, p.question_index))
    return pairs


def estimate(
    pair_probability: Optional[float] = None,
    rc_probability: Optional[float] = None,
    corpus_size: int = 0,
    pair_count: Optional[int] = None,
    pair_sample: Optional[int] = None,
    rc_count: Optional[int] = None,
    rc_sample: Optional[int] = None,
) -> DisambiguationEstimate:
    """Expected number of disambiguating pairs in a corpus of
    corpus_size sentences. Each rate can be given directly as a
    probability or as a count over a sample size."""
    if pair_probability is None:
        if pair_count is None or not pair_sample:
            raise DataError("need pair_probability or pair_count with pair_sample")
        pair_probability = pair_count / pair_sample
    if rc_probability is None:
        if rc_count is None or not rc_sample:
            raise DataError("need rc_probability or rc_count with rc_sample")
        rc_probability = rc_count / rc_sample
    for name, value in (("pair", pair_probability), ("rc", rc_probability)):
        if not 0.0 <= value <= 1.0:
            raise DataError(f"{name} probability {value} outside [0, 1]")
    if corpus_size < 0:
        raise DataError("corpus_size must be non-negative")
    return DisambiguationEstimate(
        pair_probability=pair_probability,
        rc_probability=rc_probability,
        corpus_size=corpus_size,
        expected_count=pair_probability * rc_probability * corpus_size,
    )


def pairs_to_tsv(pairs: Sequence[MinedPair]) -> str:
    lines = ["doc_id\tdeclarative_index\tquestion_index\tsimilarity\trc_on_subject\tdeclarative\tquestion"]
    for p in pairs:
        lines.append(
            f"{p.doc_id}\t{p.declarative_index}\t{p.question_index}"
            f"\t{p.similarity:.4f}\t{int(p.rc_on_subject)}\t{p.declarative}\t{p.question}"
        )
    return "\n".join(lines) + "\n"


def summarize(pairs: Sequence[MinedPair], sentences_scanned: int) -> dict:
    with_rc = sum(1 for p in pairs if p.rc_on_subject)
    return {
        "pairs": len(pairs),
        "pairs_with_rc_on_subject": with_rc,
        "sentences_scanned": sentences_scanned,
        "pair_rate": len(pairs) / sentences_scanned if sentences_scanned else 0.0,
        "rc_share": with_rc / len(pairs) if pairs else 0.0,
    }
