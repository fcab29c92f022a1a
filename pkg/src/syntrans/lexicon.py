"""Lexical entries and inflection lookup.

A lexicon is a flat set of (lemma, category, features) -> surface rows.
The shipped JSON data files use a compact paradigm layout (one object per
lemma); the loader expands paradigms into individual entries so lookup
stays a dict hit. All surfaces are lowercase; tokens never contain
sentence punctuation, but word-internal hyphens and apostrophes are kept
("orang-utan", "hasn't").
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import DataError, LexiconGapError
from .features import CATEGORIES, FeatureBundle, bundle

_DE_CASES = ("nom", "acc", "dat")


@dataclass(frozen=True)
class LexicalEntry:
    lemma: str
    category: str
    features: FeatureBundle
    surface: str

    def __post_init__(self) -> None:
        if self.category not in CATEGORIES:
            raise DataError(f"unknown category {self.category!r} for {self.lemma!r}")
        self.features.validate()


class Lexicon:
    def __init__(self, language: str, entries: list[LexicalEntry], agent_marker: str = ""):
        self.language = language
        self.agent_marker = agent_marker  # "by" / "von", surface of the demoted-subject marker
        self.entries = tuple(entries)
        self._exact: dict[tuple[str, str, FeatureBundle], LexicalEntry] = {}
        self.by_category: dict[str, list[LexicalEntry]] = {}
        self.by_surface: dict[str, list[LexicalEntry]] = {}
        self.noun_gender: dict[str, str] = {}
        for entry in self.entries:
            key = (entry.lemma, entry.category, entry.features)
            if key in self._exact:
                raise DataError(f"duplicate lexicon key {key}")
            self._exact[key] = entry
            self.by_category.setdefault(entry.category, []).append(entry)
            self.by_surface.setdefault(entry.surface, []).append(entry)
            if entry.category == "Noun":
                self.noun_gender.setdefault(entry.lemma, entry.features.gender)
        # finite Aux/Modal surfaces are what the linear question rule scans for
        self.aux_surfaces = frozenset(
            e.surface
            for cat in ("Aux", "Modal")
            for e in self.by_category.get(cat, [])
            if e.features.verbform == "finite"
        )
        self._candidate_cache: dict[tuple, list[LexicalEntry]] = {}

    def candidates(self, category: str, constraints: dict[str, str]) -> list[LexicalEntry]:
        """All entries of a category matching the constrained features."""
        key = (category, tuple(sorted(constraints.items())))
        hit = self._candidate_cache.get(key)
        if hit is None:
            hit = [
                e
                for e in self.by_category.get(category, [])
                if e.features.matches(constraints)
            ]
            self._candidate_cache[key] = hit
        return hit

    def inflect(self, lemma: str, category: str, **features: str) -> str:
        """Surface form for a lemma under the given feature constraints.

        Unstated features are wildcards; the match must be unique. Noun
        gender is filled in from the lemma when not supplied.
        """
        if category == "Noun" and "gender" not in features and lemma in self.noun_gender:
            features = {**features, "gender": self.noun_gender[lemma]}
        matches = [
            e
            for e in self.by_category.get(category, [])
            if e.lemma == lemma and e.features.matches(features)
        ]
        if not matches:
            raise LexiconGapError(
                f"no entry for lemma={lemma!r} category={category} features={features}"
            )
        surfaces = {e.surface for e in matches}
        if len(surfaces) > 1:
            raise LexiconGapError(
                f"ambiguous inflection for lemma={lemma!r} category={category} "
                f"features={features}: {sorted(surfaces)}"
            )
        return matches[0].surface

    def readings(self, token: str) -> list[LexicalEntry]:
        return self.by_surface.get(token, [])

    def lemmas(self, category: str) -> list[str]:
        seen: list[str] = []
        for entry in self.by_category.get(category, []):
            if entry.lemma not in seen:
                seen.append(entry.lemma)
        return seen


def _en_entries(doc: dict) -> list[LexicalEntry]:
    entries: list[LexicalEntry] = []
    for det in doc["determiners"]:
        for number in ("sg", "pl"):
            entries.append(LexicalEntry(det, "Det", bundle(number=number), det))
    for noun in doc["nouns"]:
        entries.append(LexicalEntry(noun["lemma"], "Noun", bundle(number="sg"), noun["sg"]))
        entries.append(LexicalEntry(noun["lemma"], "Noun", bundle(number="pl"), noun["pl"]))
    for verb in doc["verbs"]:
        cat = "VTrans" if verb["transitive"] else "VIntrans"
        entries.append(
            LexicalEntry(verb["lemma"], cat, bundle(verbform="past-participle"), verb["participle"])
        )
        entries.append(
            LexicalEntry(verb["lemma"], cat, bundle(verbform="preterite"), verb["past"])
        )
    for aux in doc["auxiliaries"]:
        if "finite" in aux:
            for number, by_pol in aux["finite"].items():
                for polarity, surface in by_pol.items():
                    entries.append(
                        LexicalEntry(
                            aux["lemma"],
                            "Aux",
                            bundle(number=number, polarity=polarity, verbform="finite"),
                            surface,
                        )
                    )
        if "preterite" in aux:
            for number, surface in aux["preterite"].items():
                entries.append(
                    LexicalEntry(
                        aux["lemma"], "Aux", bundle(number=number, verbform="preterite"), surface
                    )
                )
    for prep in doc["prepositions"]:
        entries.append(LexicalEntry(prep, "Prep", bundle(), prep))
    marker = doc["agent_marker"]
    entries.append(LexicalEntry(marker, "Prep", bundle(), marker))
    for rel in doc["relative_pronouns"]:
        entries.append(LexicalEntry(rel, "RelPron", bundle(), rel))
    return entries


def _de_entries(doc: dict) -> list[LexicalEntry]:
    entries: list[LexicalEntry] = []
    for det in doc["determiners"]:
        forms = det["forms"]
        for gender in ("masc", "fem", "neut"):
            if gender not in forms:
                continue
            for case, surface in zip(_DE_CASES, forms[gender]):
                entries.append(
                    LexicalEntry(
                        det["lemma"], "Det", bundle(number="sg", case=case, gender=gender), surface
                    )
                )
        if "pl" in forms:
            # plural surfaces collapse gender but entries keep it marked
            for gender in ("masc", "fem", "neut"):
                for case, surface in zip(_DE_CASES, forms["pl"]):
                    entries.append(
                        LexicalEntry(
                            det["lemma"],
                            "Det",
                            bundle(number="pl", case=case, gender=gender),
                            surface,
                        )
                    )
    for noun in doc["nouns"]:
        gender = noun["gender"]
        for number in ("sg", "pl"):
            for case, surface in zip(_DE_CASES, noun[number]):
                entries.append(
                    LexicalEntry(
                        noun["lemma"],
                        "Noun",
                        bundle(number=number, case=case, gender=gender),
                        surface,
                    )
                )
    for verb in doc["verbs"]:
        cat = "VTrans" if verb["transitive"] else "VIntrans"
        lemma = verb["lemma"]
        entries.append(LexicalEntry(lemma, cat, bundle(verbform="infinitive"), verb["infinitive"]))
        entries.append(
            LexicalEntry(lemma, cat, bundle(verbform="past-participle"), verb["participle"])
        )
        for number, surface in verb["preterite"].items():
            entries.append(
                LexicalEntry(lemma, cat, bundle(number=number, verbform="preterite"), surface)
            )
    for aux in doc["auxiliaries"]:
        cat = aux.get("category", "Aux")
        for form_name, verbform in (("finite", "finite"), ("preterite", "preterite")):
            if form_name in aux:
                for number, surface in aux[form_name].items():
                    entries.append(
                        LexicalEntry(
                            aux["lemma"], cat, bundle(number=number, verbform=verbform), surface
                        )
                    )
    for prep in doc["prepositions"]:
        entries.append(LexicalEntry(prep, "Prep", bundle(), prep))
    marker = doc["agent_marker"]
    entries.append(LexicalEntry(marker, "Prep", bundle(), marker))
    rel = doc["relative_pronouns"]
    for gender in ("masc", "fem", "neut"):
        for case, surface in zip(("nom", "acc"), rel[gender]):
            entries.append(
                LexicalEntry("der", "RelPron", bundle(number="sg", case=case, gender=gender), surface)
            )
        for case, surface in zip(("nom", "acc"), rel["pl"]):
            entries.append(
                LexicalEntry("der", "RelPron", bundle(number="pl", case=case, gender=gender), surface)
            )
    return entries


def load_lexicon(source: str | Path | dict) -> Lexicon:
    """Load a lexicon from a JSON file path or an already-parsed dict."""
    if isinstance(source, dict):
        doc = source
    else:
        doc = json.loads(Path(source).read_text(encoding="utf-8"))
    language = doc.get("language")
    if language == "en":
        entries = _en_entries(doc)
    elif language == "de":
        entries = _de_entries(doc)
    else:
        raise DataError(f"unsupported lexicon language {language!r}")
    return Lexicon(language, entries, doc["agent_marker"])


def default_lexicon_path(language: str) -> Path:
    name = f"lexicon_{language}.json"
    with resources.as_file(resources.files("syntrans.data").joinpath(name)) as path:
        return Path(path)


def default_lexicon(language: str) -> Lexicon:
    return load_lexicon(default_lexicon_path(language))
