"""Transformation oracles.

Each transform returns a TransformResult whose ops form an edit script:
reading the ops in order and concatenating their tokens reproduces the
output exactly (see replay). "copy" moves a source span unchanged, "emit"
inserts new material, "reinflect" replaces a source span with recomputed
forms. Labels name what each piece is for ("fronted_aux", "agent_np", ...)
so error analysis can match prediction spans against oracle spans.

The hierarchical transforms read the derivation tree; the linear ones see
only the token string, by design. The linear question rule fronts the
first auxiliary-looking token; the linear passivization rule pretends the
first determiner+noun pair is the by-phrase and the second one (plus any
prepositional phrases right after it) is the promoted subject, discarding
the rest of the sentence.
"""

from __future__ import annotations

from typing import NamedTuple, Optional, Sequence

from .errors import TransformError
from .lexicon import LexicalEntry, Lexicon
from .structures import Leaf, Node, SentenceTree


class TransformOp(NamedTuple):
    kind: str  # copy | emit | reinflect
    src: Optional[tuple[int, int]]
    tokens: tuple[str, ...]
    label: str


class TransformResult(NamedTuple):
    rule: str
    source: tuple[str, ...]
    output: tuple[str, ...]
    ops: tuple[TransformOp, ...]


def replay(result: TransformResult) -> tuple[str, ...]:
    """Concatenate the edit script; must equal result.output."""
    out: list[str] = []
    for op in result.ops:
        out.extend(op.tokens)
    return tuple(out)


class _Script:
    def __init__(self, source: Sequence[str]):
        self.source = tuple(source)
        self.ops: list[TransformOp] = []

    def copy(self, lo: int, hi: int, label: str) -> None:
        if lo < hi:
            self.ops.append(TransformOp("copy", (lo, hi), self.source[lo:hi], label))

    def emit(self, tokens: Sequence[str], label: str) -> None:
        self.ops.append(TransformOp("emit", None, tuple(tokens), label))

    def reinflect(self, lo: int, hi: int, tokens: Sequence[str], label: str) -> None:
        self.ops.append(TransformOp("reinflect", (lo, hi), tuple(tokens), label))

    def done(self, rule: str) -> TransformResult:
        output: list[str] = []
        for op in self.ops:
            output.extend(op.tokens)
        return TransformResult(rule, self.source, tuple(output), tuple(self.ops))


def identity(tokens: Sequence[str]) -> TransformResult:
    script = _Script(tokens)
    script.copy(0, len(script.source), "all")
    return script.done("identity")


def _front_aux(tokens: Sequence[str], aux_index: int, rule: str) -> TransformResult:
    n = len(tokens)
    if n < 2 or tokens[-1] != ".":
        raise TransformError(f"not a declarative: {' '.join(tokens)!r}")
    script = _Script(tokens)
    script.copy(aux_index, aux_index + 1, "fronted_aux")
    script.copy(0, aux_index, "body")
    script.copy(aux_index + 1, n - 1, "body")
    script.reinflect(n - 1, n, ("?",), "punct")
    return script.done(rule)


def quest_hierarchical(tree: SentenceTree, lexicon: Optional[Lexicon] = None) -> TransformResult:
    """Front the auxiliary of the main clause."""
    maux = tree.matrix_aux
    if maux is None or maux.span is None:
        raise TransformError("tree has no matrix auxiliary to front")
    return _front_aux(tree.tokens(), maux.span[0], "quest-hierarchical")


def quest_linear(tokens: Sequence[str], lexicon: Lexicon) -> TransformResult:
    """Front the first auxiliary-looking token, wherever it is."""
    for index, token in enumerate(tokens):
        if token in lexicon.aux_surfaces:
            return _front_aux(tokens, index, "quest-linear")
    raise TransformError(f"no auxiliary token in {' '.join(tokens)!r}")


def _passive_aux(lexicon: Lexicon, number: str) -> str:
    candidates = lexicon.candidates("Aux", {"verbform": "preterite", "number": number})
    if len(candidates) != 1:
        raise TransformError(f"no unique passive auxiliary for number={number}")
    return candidates[0].surface


def _participle(lexicon: Lexicon, lemma: str) -> str:
    return lexicon.inflect(lemma, "VTrans", verbform="past-participle")


def _np_pieces(np: Node) -> tuple[Leaf, Leaf, list[Node]]:
    """Top-level determiner and head of an NP, plus any attached modifiers."""
    det = head = None
    rest: list[Node] = []
    for child in np.children:
        if isinstance(child, Leaf) and child.role == "det":
            det = child
        elif isinstance(child, Leaf) and child.role == "head":
            head = child
        elif isinstance(child, Node):
            rest.append(child)
    if det is None or head is None or det.entry is None or head.entry is None:
        raise TransformError("noun phrase is missing its determiner or head")
    return det, head, rest


def _np_in_case(np: Node, case: str, lexicon: Lexicon) -> list[str]:
    """NP tokens with determiner and head recast to the given case; nested
    material (a PP on the NP) is carried over verbatim. English forms do
    not mark case, so the tokens come back unchanged there."""
    det, head, rest = _np_pieces(np)
    if lexicon.language == "en":
        tokens = [det.surface, head.surface]
    else:
        feats = head.entry.features
        tokens = [
            lexicon.inflect(det.entry.lemma, "Det", case=case, number=feats.number, gender=feats.gender),
            lexicon.inflect(head.entry.lemma, "Noun", case=case, number=feats.number, gender=feats.gender),
        ]
    for node in rest:
        tokens.extend(node.tokens())
    return tokens


def passiv_hierarchical(tree: SentenceTree, lexicon: Lexicon) -> TransformResult:
    """Promote the object, demote the subject into a by-phrase."""
    obj = tree.object_np
    if obj is None or obj.span is None:
        raise TransformError("tree has no object to promote")
    subject = tree.subject_np
    verb = tree.matrix_verb
    if subject.span is None or verb.span is None or verb.entry is None:
        raise TransformError("tree is missing subject or matrix verb")
    tokens = tree.tokens()
    n = len(tokens)
    if tokens[-1] != ".":
        raise TransformError(f"not a declarative: {' '.join(tokens)!r}")
    _, obj_head, _ = _np_pieces(obj)
    aux = _passive_aux(lexicon, obj_head.entry.features.number)
    participle = _participle(lexicon, verb.entry.lemma)
    fronted = _np_in_case(obj, "nom", lexicon)
    agent = _np_in_case(subject, "dat", lexicon)

    script = _Script(tokens)
    if lexicon.language == "en":
        script.copy(obj.span[0], obj.span[1], "fronted_object")
        script.emit((aux,), "passive_aux")
        script.reinflect(verb.span[0], verb.span[1], (participle,), "verb")
        script.emit((lexicon.agent_marker,), "agent_marker")
        script.copy(subject.span[0], subject.span[1], "agent_np")
    else:
        script.reinflect(obj.span[0], obj.span[1], tuple(fronted), "fronted_object")
        script.emit((aux,), "passive_aux")
        script.emit((lexicon.agent_marker,), "agent_marker")
        script.reinflect(subject.span[0], subject.span[1], tuple(agent), "agent_np")
        script.reinflect(verb.span[0], verb.span[1], (participle,), "verb")
    script.copy(n - 1, n, "punct")
    return script.done("passiv-hierarchical")


def _det_noun_pairs(tokens: Sequence[str], lexicon: Lexicon) -> list[int]:
    pairs = []
    for i in range(len(tokens) - 1):
        det_ok = any(e.category == "Det" for e in lexicon.readings(tokens[i]))
        noun_ok = any(e.category == "Noun" for e in lexicon.readings(tokens[i + 1]))
        if det_ok and noun_ok:
            pairs.append(i)
    return pairs


def _resolve_pair(
    det_token: str, noun_token: str, lexicon: Lexicon, case_pref: str
) -> tuple[str, str, str, str]:
    """Consistent (det lemma, noun lemma, number, gender) reading of a
    surface determiner+noun pair, preferring the expected case."""
    combos: list[tuple[LexicalEntry, LexicalEntry]] = []
    for det in lexicon.readings(det_token):
        if det.category != "Det":
            continue
        for noun in lexicon.readings(noun_token):
            if noun.category != "Noun":
                continue
            df, nf = det.features, noun.features
            if df.number == nf.number and df.gender == nf.gender and df.case == nf.case:
                combos.append((det, noun))
    if not combos:
        raise TransformError(f"cannot read {det_token!r} {noun_token!r} as a noun phrase")
    preferred = [c for c in combos if c[0].features.case == case_pref]
    if preferred:
        combos = preferred
    combos.sort(key=lambda c: (c[1].features.number, c[1].features.gender, c[0].lemma, c[1].lemma))
    det, noun = combos[0]
    return det.lemma, noun.lemma, noun.features.number, noun.features.gender


def _pair_in_case(
    det_lemma: str, noun_lemma: str, number: str, gender: str, case: str, lexicon: Lexicon
) -> list[str]:
    if lexicon.language == "en":
        return [
            lexicon.inflect(det_lemma, "Det", number=number),
            lexicon.inflect(noun_lemma, "Noun", number=number),
        ]
    return [
        lexicon.inflect(det_lemma, "Det", case=case, number=number, gender=gender),
        lexicon.inflect(noun_lemma, "Noun", case=case, number=number, gender=gender),
    ]


def passiv_linear(tokens: Sequence[str], lexicon: Lexicon) -> TransformResult:
    """Positional passivization: second determiner+noun pair (with any
    trailing PPs) is promoted, first pair lands in the by-phrase, and
    everything else is dropped."""
    n = len(tokens)
    if n < 2 or tokens[-1] != ".":
        raise TransformError(f"not a declarative: {' '.join(tokens)!r}")
    pairs = _det_noun_pairs(tokens, lexicon)
    if len(pairs) < 2:
        raise TransformError(f"need two noun phrases in {' '.join(tokens)!r}")
    first, second = pairs[0], pairs[1]

    # PPs immediately after the second pair travel with it
    carried_end = second + 2
    while (
        carried_end + 2 < n
        and any(e.category == "Prep" for e in lexicon.readings(tokens[carried_end]))
        and carried_end + 1 in pairs
    ):
        carried_end += 3

    verb_index = None
    for i, token in enumerate(tokens):
        if any(
            e.category == "VTrans" and e.features.verbform == "preterite"
            for e in lexicon.readings(token)
        ):
            verb_index = i
            break
    if verb_index is None:
        # tolerate a non-preterite matrix verb form; the participle comes
        # from the lemma either way
        for i, token in enumerate(tokens):
            if any(e.category == "VTrans" for e in lexicon.readings(token)):
                verb_index = i
                break
    if verb_index is None:
        raise TransformError(f"no transitive verb in {' '.join(tokens)!r}")
    verb_lemma = next(
        e.lemma for e in lexicon.readings(tokens[verb_index]) if e.category == "VTrans"
    )

    second_pref = (
        "dat"
        if lexicon.language == "de"
        and second > 0
        and any(e.category == "Prep" for e in lexicon.readings(tokens[second - 1]))
        else "acc"
    )
    d2, n2, num2, gen2 = _resolve_pair(tokens[second], tokens[second + 1], lexicon, second_pref)
    d1, n1, num1, gen1 = _resolve_pair(tokens[first], tokens[first + 1], lexicon, "nom")

    fronted = _pair_in_case(d2, n2, num2, gen2, "nom", lexicon)
    agent = _pair_in_case(d1, n1, num1, gen1, "dat", lexicon)
    aux = _passive_aux(lexicon, num2)
    participle = _participle(lexicon, verb_lemma)

    script = _Script(tokens)
    script.reinflect(second, second + 2, tuple(fronted), "fronted_object")
    script.copy(second + 2, carried_end, "fronted_object_pp")
    script.emit((aux,), "passive_aux")
    if lexicon.language == "en":
        script.reinflect(verb_index, verb_index + 1, (participle,), "verb")
        script.emit((lexicon.agent_marker,), "agent_marker")
        script.reinflect(first, first + 2, tuple(agent), "agent_np")
    else:
        script.emit((lexicon.agent_marker,), "agent_marker")
        script.reinflect(first, first + 2, tuple(agent), "agent_np")
        script.reinflect(verb_index, verb_index + 1, (participle,), "verb")
    script.copy(n - 1, n, "punct")
    return script.done("passiv-linear")


def hierarchical(tree: SentenceTree, lexicon: Lexicon) -> TransformResult:
    if tree.structure.task == "quest":
        return quest_hierarchical(tree, lexicon)
    return passiv_hierarchical(tree, lexicon)


def linear(tokens: Sequence[str], task: str, lexicon: Lexicon) -> TransformResult:
    if task == "quest":
        return quest_linear(tokens, lexicon)
    if task == "passiv":
        return passiv_linear(tokens, lexicon)
    raise TransformError(f"unknown task {task!r}")
