"""Exception taxonomy.

UsageError maps to exit code 1, DataError to 2, InternalError to 3.
"""

from __future__ import annotations


class SyntransError(Exception):
    """Base class for all toolkit errors."""


class UsageError(SyntransError):
    """Bad invocation: unknown flags, missing arguments, invalid combinations."""


class DataError(SyntransError):
    """Malformed or inconsistent input data."""


class GrammarError(DataError):
    """Invalid grammar config, or a spec/grammar combination that cannot derive."""


class LexiconGapError(DataError):
    """A requested (lemma, category, features) key has no surface form."""


class ParseError(DataError):
    """A token sequence does not parse under the grammar."""


class TransformError(DataError):
    """A transformation was applied to an input it is not defined for."""


class AlignmentError(DataError):
    """Prediction and reference files do not line up."""


class InsufficientLexiconError(DataError):
    """Dedup-on generation ran out of distinct sentences for a structure cell."""


class InternalError(SyntransError):
    """An internal invariant was violated; indicates a bug, not bad input."""
