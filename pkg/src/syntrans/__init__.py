"""Synthetic syntactic-transformation datasets with ground-truth oracles.

Generates English and German declarative sentences from a small
feature-constrained grammar, applies question-formation or passivization
under either a hierarchical or a positional rule, scores model predictions
against both, and mines real corpora for naturally disambiguating
declarative/question pairs.
"""

__version__ = "0.1.0"

from .errors import (
    AlignmentError,
    DataError,
    GrammarError,
    InsufficientLexiconError,
    InternalError,
    LexiconGapError,
    ParseError,
    SyntransError,
    TransformError,
    UsageError,
)
from .features import FeatureBundle, bundle
from .grammar import Grammar, default_grammar, load_grammar, sample_sentence
from .lexicon import LexicalEntry, Lexicon, default_lexicon, load_lexicon
from .structures import SentenceTree, StructureSpec, spec_for
from .dataset import (
    ComponentSpec,
    DatasetConfig,
    Row,
    build_rows,
    compose_crosslingual,
    read_split,
    write_manifest,
    write_split,
)
from .metrics import EvalReport, error_profile, evaluate_run, emit_curve, sequence_match
from .miner import DisambiguationEstimate, MinedPair, MinerConfig, estimate, jaccard, scan_pairs, segment
from .parsing import parse_sentence
from .transforms import TransformResult, hierarchical, identity, linear, replay

__all__ = [
    "AlignmentError",
    "ComponentSpec",
    "DataError",
    "DatasetConfig",
    "DisambiguationEstimate",
    "EvalReport",
    "FeatureBundle",
    "Grammar",
    "GrammarError",
    "InsufficientLexiconError",
    "InternalError",
    "LexicalEntry",
    "Lexicon",
    "LexiconGapError",
    "MinedPair",
    "MinerConfig",
    "ParseError",
    "Row",
    "SentenceTree",
    "StructureSpec",
    "SyntransError",
    "TransformError",
    "TransformResult",
    "UsageError",
    "build_rows",
    "bundle",
    "compose_crosslingual",
    "default_grammar",
    "default_lexicon",
    "emit_curve",
    "error_profile",
    "estimate",
    "evaluate_run",
    "hierarchical",
    "identity",
    "jaccard",
    "linear",
    "load_grammar",
    "load_lexicon",
    "parse_sentence",
    "read_split",
    "replay",
    "sample_sentence",
    "scan_pairs",
    "segment",
    "sequence_match",
    "spec_for",
    "write_manifest",
    "write_split",
    "__version__",
]
