"""Scoring for model predictions against oracle targets.

Beyond plain sequence accuracy, the interesting measurements are
behavioral: did the model front the main auxiliary or the linearly
first one, did it move the syntactic object or the second noun phrase,
and which sub-steps of the transformation (deletion, reinflection,
agent phrase) it got right. Those diagnostics only make sense on
transformed rows, so identity rows count toward sequence accuracy and
nothing else.

All per-item checks are pure token comparisons against the two oracle
outputs (hierarchical and linear) recomputed from the source, which
keeps the scorer independent of how predictions were produced.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .errors import DataError
from .lexicon import Lexicon
from .structures import TASKS
from .transforms import linear

Tokens = Sequence[str]

# token position where the two rules first disagree on disambiguating input
DIAGNOSTIC_INDEX = {"quest": 0, "passiv": 1}


def exact_match(prediction: Tokens, reference: Tokens) -> bool:
    return list(prediction) == list(reference)


def is_subsequence(inner: Tokens, outer: Tokens) -> bool:
    it = iter(outer)
    return all(token in it for token in inner)


def sequence_match(prediction: Tokens, reference: Tokens, mode: str = "exact") -> bool:
    """mode "exact" requires identity; "subsequence" accepts any
    prediction that contains the full reference in order (insertions
    allowed, deletions not)."""
    if mode == "exact":
        return exact_match(prediction, reference)
    if mode == "subsequence":
        return is_subsequence(reference, prediction)
    raise DataError(f"unknown match mode {mode!r}")


def main_aux_accuracy_item(prediction: Tokens, reference: Tokens) -> bool:
    return bool(prediction) and prediction[0] == reference[0]


def object_noun_accuracy_item(prediction: Tokens, reference: Tokens) -> bool:
    return len(prediction) >= 2 and list(prediction[:2]) == list(reference[:2])


def linear_rule_item(source: Tokens, prediction: Tokens, task: str, lexicon: Lexicon) -> bool:
    """Did the prediction take the linear rule's choice at the position
    where the two rules can part ways?"""
    k = DIAGNOSTIC_INDEX[task]
    try:
        linear_output = linear(source, task, lexicon).output
    except DataError:
        return False
    return len(prediction) > k and prediction[k] == linear_output[k]


# --- error profiles -----------------------------------------------------


def _aux_reading(lexicon: Lexicon, token: str):
    for entry in lexicon.readings(token):
        if entry.category in ("Aux", "Modal") and entry.features.verbform == "finite":
            return entry
    return None


def _contiguous(chunk: Tokens, tokens: Tokens) -> bool:
    chunk = list(chunk)
    tokens = list(tokens)
    if not chunk:
        return True
    for start in range(len(tokens) - len(chunk) + 1):
        if tokens[start : start + len(chunk)] == chunk:
            return True
    return False


def quest_profile(
    source: Tokens,
    prediction: Tokens,
    reference: Tokens,
    lexicon: Lexicon,
) -> dict[str, Optional[bool]]:
    """Break a question-formation prediction into named behaviors.

    reference must be the hierarchical target, whose first token is the
    main auxiliary. Keys with value None did not apply to this item.
    """
    source = list(source)
    prediction = list(prediction)
    reference = list(reference)
    rel_surfaces = {e.surface for e in lexicon.by_category.get("RelPron", [])}
    has_rc = any(tok in rel_surfaces for tok in source)
    profile: dict[str, Optional[bool]] = {
        "main_aux_fronted": False,
        "original_aux_deleted": False,
        "wrong_polarity_aux_fronted": False,
        "rc_dropped": None,
        "unaligned": False,
    }
    if has_rc:
        profile["rc_dropped"] = False
    if len(prediction) < 2:
        profile["unaligned"] = True
        if has_rc:
            profile["rc_dropped"] = True
        return profile
    main_aux = reference[0]
    profile["main_aux_fronted"] = prediction[0] == main_aux
    if main_aux in source:
        aux_at = source.index(main_aux)
        body = source[:aux_at] + source[aux_at + 1 : -1]
        profile["original_aux_deleted"] = prediction[1:-1] == body
    fronted = _aux_reading(lexicon, prediction[0])
    main_entry = _aux_reading(lexicon, main_aux)
    if (
        fronted is not None
        and main_entry is not None
        and prediction[0] != main_aux
        and fronted.lemma == main_entry.lemma
        and fronted.features.number == main_entry.features.number
        and fronted.features.polarity != main_entry.features.polarity
        and "none" not in (fronted.features.polarity, main_entry.features.polarity)
    ):
        profile["wrong_polarity_aux_fronted"] = True
    if has_rc:
        profile["rc_dropped"] = not any(tok in rel_surfaces for tok in prediction)
    return profile


def passiv_profile(
    source: Tokens,
    prediction: Tokens,
    reference: Tokens,
    lexicon: Lexicon,
) -> dict[str, Optional[bool]]:
    """Break a passivization prediction into named behaviors.

    reference must be the hierarchical target: fronted object first,
    then the passive auxiliary, with the agent phrase after the marker.
    Case keys only apply to languages whose noun phrases inflect, and
    are judged against the linear oracle's positionally-picked noun
    phrases so they stay meaningful even when the wrong phrase moved.
    """
    source = list(source)
    prediction = list(prediction)
    reference = list(reference)
    inflects = lexicon.language == "de"
    profile: dict[str, Optional[bool]] = {
        "object_np_moved": False,
        "subject_in_by_phrase": False,
        "pp_on_second_np_preserved": None,
        "first_np_case_reinflected": None,
        "second_np_case_reinflected": None,
        "tense_reinflected": False,
        "passive_aux_inserted_inflected": False,
        "unaligned": False,
    }
    marker = lexicon.agent_marker
    if marker not in reference:
        raise DataError(f"reference lacks agent marker {marker!r}: {' '.join(reference)}")
    marker_at = reference.index(marker)
    agent_np = reference[marker_at + 1 : marker_at + 3]
    agent_tail = reference[marker_at + 1 : -1]
    if lexicon.language == "de":
        # clause-final participle sits between the agent phrase and "."
        agent_tail = reference[marker_at + 1 : -2]
    carried_pp = agent_tail[2:]
    if carried_pp:
        profile["pp_on_second_np_preserved"] = False
    if inflects:
        profile["first_np_case_reinflected"] = False
        profile["second_np_case_reinflected"] = False
    if len(prediction) < 2:
        profile["unaligned"] = True
        return profile
    profile["object_np_moved"] = prediction[:2] == reference[:2]
    profile["subject_in_by_phrase"] = _contiguous([marker] + agent_np, prediction)
    if carried_pp:
        profile["pp_on_second_np_preserved"] = _contiguous(carried_pp, prediction)
    if inflects:
        try:
            linear_output = list(linear(source, "passiv", lexicon).output)
        except DataError:
            linear_output = []
        if linear_output:
            lin_marker_at = linear_output.index(marker)
            lin_agent = linear_output[lin_marker_at + 1 : lin_marker_at + 3]
            profile["first_np_case_reinflected"] = (
                _contiguous(lin_agent, prediction) or _contiguous(agent_np, prediction)
            )
            profile["second_np_case_reinflected"] = (
                prediction[:2] == linear_output[:2] or prediction[:2] == reference[:2]
            )
    # en: "<np> <aux> <participle> by <agent> ."
    # de: "<np> <aux> von <agent> <participle> ."
    if inflects:
        passive_aux = reference[marker_at - 1]
        participle = reference[-2]
    else:
        passive_aux = reference[marker_at - 2]
        participle = reference[marker_at - 1]
    profile["passive_aux_inserted_inflected"] = passive_aux in prediction
    profile["tense_reinflected"] = participle in prediction
    return profile


def error_profile(
    source: Tokens,
    prediction: Tokens,
    reference: Tokens,
    task: str,
    lexicon: Lexicon,
) -> dict[str, Optional[bool]]:
    if task == "quest":
        return quest_profile(source, prediction, reference, lexicon)
    if task == "passiv":
        return passiv_profile(source, prediction, reference, lexicon)
    raise DataError(f"unknown task {task!r}")


# --- aggregation --------------------------------------------------------


@dataclass
class EvalReport:
    task: str
    language: str
    total: int = 0
    transformed: int = 0
    exact_match: float = 0.0
    subsequence_match: float = 0.0
    main_aux_accuracy: Optional[float] = None
    object_noun_accuracy: Optional[float] = None
    linear_rule_frequency: Optional[float] = None
    unaligned: int = 0
    profile: dict = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {
            "task": self.task,
            "language": self.language,
            "total": self.total,
            "transformed": self.transformed,
            "exact_match": self.exact_match,
            "subsequence_match": self.subsequence_match,
            "main_aux_accuracy": self.main_aux_accuracy,
            "object_noun_accuracy": self.object_noun_accuracy,
            "linear_rule_frequency": self.linear_rule_frequency,
            "unaligned": self.unaligned,
            "profile": self.profile,
        }
        return json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True)


def evaluate_run(
    rows: Iterable,
    predictions: Iterable[Tokens],
    task: str,
    lexicon: Lexicon,
) -> EvalReport:
    """Score predictions row by row. rows are dataset rows (source,
    target, marker); predictions align with them one to one."""
    if task not in TASKS:
        raise DataError(f"unknown task {task!r}")
    rows = list(rows)
    predictions = [list(p) for p in predictions]
    if len(rows) != len(predictions):
        raise DataError(
            f"{len(rows)} references but {len(predictions)} predictions"
        )
    report = EvalReport(task=task, language=lexicon.language, total=len(rows))
    if not rows:
        return report
    exact = 0
    subseq = 0
    front = 0
    obj = 0
    lin = 0
    profile_true: dict[str, int] = {}
    profile_n: dict[str, int] = {}
    for row, prediction in zip(rows, predictions):
        reference = list(row.target)
        exact += exact_match(prediction, reference)
        subseq += sequence_match(prediction, reference, "subsequence")
        if not row.transformed:
            continue
        report.transformed += 1
        front += main_aux_accuracy_item(prediction, reference)
        obj += object_noun_accuracy_item(prediction, reference)
        lin += linear_rule_item(row.source, prediction, task, lexicon)
        item = error_profile(row.source, prediction, reference, task, lexicon)
        report.unaligned += bool(item.get("unaligned"))
        for key, value in item.items():
            if key == "unaligned" or value is None:
                continue
            profile_n[key] = profile_n.get(key, 0) + 1
            profile_true[key] = profile_true.get(key, 0) + bool(value)
    report.exact_match = exact / report.total
    report.subsequence_match = subseq / report.total
    if report.transformed:
        if task == "quest":
            report.main_aux_accuracy = front / report.transformed
        else:
            report.object_noun_accuracy = obj / report.transformed
        report.linear_rule_frequency = lin / report.transformed
        report.profile = {
            key: profile_true[key] / profile_n[key] for key in sorted(profile_n)
        }
    return report


def emit_curve(records: Iterable[tuple[int, str, float]], path: Path) -> None:
    """Write (checkpoint, metric, value) records as a CSV with a header
    row, sorted so repeated runs emit identical bytes."""
    ordered = sorted(records, key=lambda r: (r[0], r[1]))
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["checkpoint", "metric", "value"])
        for checkpoint, metric, value in ordered:
            writer.writerow([checkpoint, metric, f"{value:.6f}"])
