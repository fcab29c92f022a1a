"""Deterministic parsing of declarative sentences back into trees.

The parser accepts exactly the sentence shapes the grammars emit, but is
deliberately more forgiving than the sampler: it does not require the
auxiliary-distinctness or gap-recoverability constraints to hold, and at
verb positions it falls back to any reading of the right category when
the expected form is missing. A transitive German relative clause whose
gap type is genuinely not recoverable from the surface is read as an
object gap.

Trees built here carry the same roles as generated ones, so the
transforms work identically on both.
"""

from __future__ import annotations

from typing import Optional

from .errors import ParseError
from .lexicon import LexicalEntry, Lexicon
from .structures import Leaf, Node, SentenceTree, spec_for


def _tokens(source) -> list[str]:
    if isinstance(source, str):
        return source.split()
    return list(source)


class _Parser:
    def __init__(self, tokens: list[str], task: str, lexicon: Lexicon):
        self.toks = tokens
        self.task = task
        self.lex = lexicon
        self.i = 0
        self.modifier = "none"
        self.rc_gap = "none"
        self.transitivity = "trans"

    # --- cursor helpers -------------------------------------------------

    def peek(self, ahead: int = 0) -> str:
        j = self.i + ahead
        return self.toks[j] if j < len(self.toks) else ""

    def fail(self, expected: str) -> ParseError:
        got = self.peek() or "<end>"
        return ParseError(
            f"expected {expected} at token {self.i} ({got!r}) in {' '.join(self.toks)!r}"
        )

    def readings(self, token: str, category: str, **feats: str) -> list[LexicalEntry]:
        return [
            e
            for e in self.lex.readings(token)
            if e.category == category and e.features.matches(feats)
        ]

    def has(self, token: str, category: str, **feats: str) -> bool:
        return bool(self.readings(token, category, **feats))

    def take_literal(self, literal: str, role: str = "") -> Leaf:
        if self.peek() != literal:
            raise self.fail(repr(literal))
        self.i += 1
        return Leaf(literal, role)

    def take(self, category: str, role: str, prefer: Optional[dict] = None, **feats) -> Leaf:
        """Consume one token as the given category. `feats` must hold;
        `prefer` narrows further when possible (form leniency)."""
        token = self.peek()
        options = self.readings(token, category, **feats)
        if not options:
            raise self.fail(category)
        if prefer:
            narrowed = [e for e in options if e.features.matches(prefer)]
            if narrowed:
                options = narrowed
        self.i += 1
        return Leaf(token, role, options[0])

    # --- noun phrases ---------------------------------------------------

    def np_combos(self, det_tok: str, noun_tok: str) -> list[tuple[LexicalEntry, LexicalEntry]]:
        combos = []
        for det in self.readings(det_tok, "Det"):
            for noun in self.readings(noun_tok, "Noun"):
                df, nf = det.features, noun.features
                if df.number == nf.number and df.gender == nf.gender and df.case == nf.case:
                    combos.append((det, noun))
        return combos

    def parse_np(self, role: str, case_pref: str = "", allow_modifier: bool = False) -> Node:
        det_tok, noun_tok = self.peek(), self.peek(1)
        combos = self.np_combos(det_tok, noun_tok)
        if not combos:
            # tolerate a case mismatch as long as number and gender agree
            combos = [
                (det, noun)
                for det in self.readings(det_tok, "Det")
                for noun in self.readings(noun_tok, "Noun")
                if det.features.number == noun.features.number
                and det.features.gender == noun.features.gender
            ]
        if not combos:
            raise self.fail(f"noun phrase ({role})")
        chosen = [c for c in combos if c[0].features.case == case_pref] or combos
        chosen.sort(key=lambda c: (c[1].features.number, c[1].features.gender, c[0].lemma))
        det_entry, noun_entry = chosen[0]
        det = Leaf(det_tok, "det", det_entry)
        head = Leaf(noun_tok, "head", noun_entry)
        self.i += 2
        children: list = [det, head]
        if allow_modifier:
            placement = "on-subject" if role == "subject" else "on-object"
            if self.task == "quest":
                rc = self.maybe_rc(noun_entry)
                if rc is not None:
                    children.append(rc)
                    self.modifier = placement
            else:
                if self.has(self.peek(), "Prep"):
                    children.append(self.parse_pp())
                    self.modifier = placement
        node = Node("NP", role, children=children)
        node.attrs = {
            "number": noun_entry.features.number,
            "gender": noun_entry.features.gender,
            "case": noun_entry.features.case,
        }
        return node

    def parse_pp(self) -> Node:
        prep = self.take("Prep", "prep")
        pobj = self.parse_np("pobj", case_pref="dat")
        return Node("PP", "modifier", children=[prep, pobj])

    # --- relative clauses ----------------------------------------------

    def maybe_rc(self, head: LexicalEntry) -> Optional[Node]:
        if self.lex.language == "en":
            if self.has(self.peek(), "RelPron"):
                return self.parse_rc_en(head)
            return None
        if self.peek() == "," and self.has(self.peek(1), "RelPron"):
            return self.parse_rc_de(head)
        return None

    def parse_rc_en(self, head: LexicalEntry) -> Node:
        rel = self.take("RelPron", "rel")
        children: list = [rel]
        if self.has(self.peek(), "Aux", verbform="finite"):
            self.rc_gap = "subject"
            children.append(self.take("Aux", "raux", verbform="finite"))
            verb_tok = self.peek()
            if self.has(verb_tok, "VTrans"):
                children.append(
                    self.take("VTrans", "rverb", prefer={"verbform": "past-participle"})
                )
                children.append(self.parse_np("robj"))
            else:
                children.append(
                    self.take("VIntrans", "rverb", prefer={"verbform": "past-participle"})
                )
        else:
            self.rc_gap = "object"
            children.append(self.parse_np("rsubj"))
            children.append(self.take("Aux", "raux", verbform="finite"))
            children.append(self.take("VTrans", "rverb", prefer={"verbform": "past-participle"}))
        return Node("RC", "modifier", children=children)

    def _german_gap(self, head: LexicalEntry, rel_tok: str) -> str:
        """Decide subject vs object gap for a transitive German RC at the
        cursor (layout: rel NP verb aux). Falls back to object gap."""
        rel_readings = self.readings(
            rel_tok, "RelPron", number=head.features.number, gender=head.features.gender
        )
        cases = {e.features.case for e in rel_readings}
        if cases == {"nom"}:
            return "subject"
        if cases == {"acc"}:
            return "object"
        combos = [
            c
            for c in self.np_combos(self.peek(1), self.peek(2))
            if c[0].features.case in ("nom", "acc")
        ]
        inner_cases = {c[0].features.case for c in combos}
        if inner_cases == {"acc"}:
            return "subject"
        if inner_cases == {"nom"}:
            return "object"
        inner_numbers = {c[1].features.number for c in combos}
        aux_readings = [
            e
            for e in self.lex.readings(self.peek(4))
            if e.category in ("Aux", "Modal") and e.features.verbform == "finite"
        ]
        aux_numbers = {e.features.number for e in aux_readings}
        if len(inner_numbers) == 1 and len(aux_numbers) == 1:
            inner_number = inner_numbers.pop()
            aux_number = aux_numbers.pop()
            if inner_number != head.features.number:
                return "subject" if aux_number == head.features.number else "object"
        return "object"

    def parse_rc_de(self, head: LexicalEntry) -> Node:
        children: list = [self.take_literal(",")]
        rel_tok = self.peek()
        transitive = self.has(self.peek(1), "Det")
        if transitive:
            gap = self._german_gap(head, rel_tok)
        else:
            gap = "subject"
        self.rc_gap = gap
        rel_case = "nom" if gap == "subject" else "acc"
        children.append(
            self.take(
                "RelPron",
                "rel",
                case=rel_case,
                number=head.features.number,
                gender=head.features.gender,
            )
        )
        if transitive:
            if gap == "subject":
                children.append(self.parse_np("robj", case_pref="acc"))
            else:
                children.append(self.parse_np("rsubj", case_pref="nom"))
            children.append(self._german_nonfinite("rverb", "VTrans", self.peek(1)))
        else:
            children.append(self._german_nonfinite("rverb", "VIntrans", self.peek(1)))
        aux_tok = self.peek()
        if self.has(aux_tok, "Modal", verbform="finite"):
            children.append(self.take("Modal", "raux", verbform="finite"))
        else:
            children.append(self.take("Aux", "raux", verbform="finite"))
        children.append(self.take_literal(","))
        return Node("RC", "modifier", children=children)

    def _german_nonfinite(self, role: str, category: str, following_aux: str) -> Leaf:
        # expected form follows from the auxiliary kind behind the verb
        expect = (
            "infinitive"
            if self.has(following_aux, "Modal", verbform="finite")
            else "past-participle"
        )
        return self.take(category, role, prefer={"verbform": expect})

    # --- sentences ------------------------------------------------------

    def parse(self) -> Node:
        if self.task == "quest":
            root = self.parse_quest_de() if self.lex.language == "de" else self.parse_quest_en()
        else:
            root = self.parse_passiv()
        if self.i != len(self.toks):
            raise self.fail("end of sentence")
        return root

    def parse_quest_en(self) -> Node:
        subject = self.parse_np("subject", allow_modifier=True)
        maux = self.take("Aux", "maux", verbform="finite")
        children: list = [subject, maux]
        if self.has(self.peek(), "VTrans"):
            children.append(self.take("VTrans", "mverb", prefer={"verbform": "past-participle"}))
            children.append(self.parse_np("object", allow_modifier=True))
            self.transitivity = "trans"
        else:
            children.append(self.take("VIntrans", "mverb", prefer={"verbform": "past-participle"}))
            self.transitivity = "intrans"
        children.append(self.take_literal(".", "punct"))
        return Node("S", children=children)

    def parse_quest_de(self) -> Node:
        subject = self.parse_np("subject", case_pref="nom", allow_modifier=True)
        aux_tok = self.peek()
        if self.has(aux_tok, "Modal", verbform="finite"):
            maux = self.take("Modal", "maux", verbform="finite")
            expect = "infinitive"
        else:
            maux = self.take("Aux", "maux", verbform="finite")
            expect = "past-participle"
        children: list = [subject, maux]
        if self.has(self.peek(), "Det"):
            children.append(self.parse_np("object", case_pref="acc", allow_modifier=True))
            children.append(self.take("VTrans", "mverb", prefer={"verbform": expect}))
            self.transitivity = "trans"
        else:
            children.append(self.take("VIntrans", "mverb", prefer={"verbform": expect}))
            self.transitivity = "intrans"
        children.append(self.take_literal(".", "punct"))
        return Node("S", children=children)

    def parse_passiv(self) -> Node:
        case = "nom" if self.lex.language == "de" else ""
        subject = self.parse_np("subject", case_pref=case, allow_modifier=True)
        subject_number = subject.attrs.get("number", "")
        mverb = self.take(
            "VTrans",
            "mverb",
            prefer={"verbform": "preterite", "number": subject_number},
        )
        obj_case = "acc" if self.lex.language == "de" else ""
        obj = self.parse_np("object", case_pref=obj_case, allow_modifier=True)
        punct = self.take_literal(".", "punct")
        return Node("S", children=[subject, mverb, obj, punct])


def parse_sentence(source, task: str, lexicon: Lexicon) -> SentenceTree:
    """Parse a declarative source sentence for the given task."""
    tokens = _tokens(source)
    parser = _Parser(tokens, task, lexicon)
    root = parser.parse()
    spec = spec_for(task, parser.modifier, parser.transitivity, parser.rc_gap)
    return SentenceTree(lexicon.language, spec, root)
