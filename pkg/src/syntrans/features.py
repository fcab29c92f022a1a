"""Morphosyntactic feature bundles and the closed category inventory.

Features are plain strings so bundles stay cheap to build, hash, and
serialize. "none" is a real value meaning "not marked for this feature"
(case on English words, polarity on everything except the English
auxiliaries, number on prepositions, and so on).
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import DataError

NUMBERS = ("sg", "pl", "none")
CASES = ("nom", "acc", "dat", "none")
GENDERS = ("masc", "fem", "neut", "none")
POLARITIES = ("pos", "neg", "none")
VERBFORMS = ("finite", "infinitive", "past-participle", "preterite", "none")

CATEGORIES = (
    "Det",
    "Noun",
    "VTrans",
    "VIntrans",
    "Aux",
    "Modal",
    "Prep",
    "RelPron",
    "Negation",
)

FEATURE_DOMAINS = {
    "number": NUMBERS,
    "case": CASES,
    "gender": GENDERS,
    "polarity": POLARITIES,
    "verbform": VERBFORMS,
}


class FeatureBundle(NamedTuple):
    number: str = "none"
    case: str = "none"
    gender: str = "none"
    polarity: str = "none"
    verbform: str = "none"

    def validate(self) -> "FeatureBundle":
        for name, domain in FEATURE_DOMAINS.items():
            value = getattr(self, name)
            if value not in domain:
                raise DataError(f"feature {name}={value!r} not in {domain}")
        return self

    def matches(self, constraints: dict[str, str]) -> bool:
        """True when every constrained feature equals the bundle's value."""
        for name, value in constraints.items():
            if getattr(self, name) != value:
                return False
        return True


def bundle(**features: str) -> FeatureBundle:
    return FeatureBundle(**features).validate()


def complement(feature: str, value: str) -> str:
    """The other value of a two-valued feature (polarity today)."""
    if feature == "polarity" and value in ("pos", "neg"):
        return "neg" if value == "pos" else "pos"
    raise DataError(f"no complement defined for {feature}={value!r}")
