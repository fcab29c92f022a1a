"""Sentence shape descriptors and derivation trees.

A StructureSpec says what kind of sentence to build (task, modifier
placement, transitivity, relative-clause gap). The derivation tree keeps
every sampled lexical entry plus role marks on the nodes the transforms
need to find again: subject, object, maux, mverb, modifier, punct at the
top level; det/head inside noun phrases; rel/raux/rverb/rsubj/robj inside
relative clauses; prep/pobj inside prepositional phrases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from .errors import DataError
from .lexicon import LexicalEntry

TASKS = ("quest", "passiv")
PLACEMENTS = ("none", "on-subject", "on-object")
MODIFIER_KINDS = ("none", "rc", "pp")
TRANSITIVITIES = ("trans", "intrans")
RC_GAPS = ("none", "subject", "object")

# which modifier kind each task's grammar uses
TASK_MODIFIER_KIND = {"quest": "rc", "passiv": "pp"}


@dataclass(frozen=True)
class StructureSpec:
    task: str
    modifier: str = "none"
    modifier_kind: str = "none"
    transitivity: str = "trans"
    rc_gap: str = "none"

    def __post_init__(self) -> None:
        checks = (
            (self.task, TASKS, "task"),
            (self.modifier, PLACEMENTS, "modifier"),
            (self.modifier_kind, MODIFIER_KINDS, "modifier_kind"),
            (self.transitivity, TRANSITIVITIES, "transitivity"),
            (self.rc_gap, RC_GAPS, "rc_gap"),
        )
        for value, domain, name in checks:
            if value not in domain:
                raise DataError(f"bad {name} {value!r}, expected one of {domain}")
        if (self.modifier == "none") != (self.modifier_kind == "none"):
            raise DataError("modifier placement and modifier_kind must be none together")
        if (self.modifier_kind == "rc") != (self.rc_gap != "none"):
            raise DataError("rc_gap is set exactly when the modifier is a relative clause")
        if self.modifier != "none" and self.modifier_kind != TASK_MODIFIER_KIND[self.task]:
            raise DataError(
                f"task {self.task} takes {TASK_MODIFIER_KIND[self.task]} modifiers, "
                f"not {self.modifier_kind}"
            )
        if self.task == "passiv" and self.transitivity != "trans":
            raise DataError("passivization requires a transitive matrix verb")
        if self.modifier == "on-object" and self.transitivity != "trans":
            raise DataError("an on-object modifier requires an object")

    def context(self) -> dict[str, str]:
        return {
            "task": self.task,
            "modifier": self.modifier,
            "modifier_kind": self.modifier_kind,
            "transitivity": self.transitivity,
            "rc_gap": self.rc_gap,
        }


def spec_for(task: str, modifier: str, transitivity: str, rc_gap: str = "none") -> StructureSpec:
    """Build a StructureSpec filling in the task's modifier kind."""
    kind = "none" if modifier == "none" else TASK_MODIFIER_KIND[task]
    if kind == "rc" and rc_gap == "none":
        raise DataError("relative-clause structures need an explicit rc_gap")
    if kind != "rc":
        rc_gap = "none"
    return StructureSpec(task, modifier, kind, transitivity, rc_gap)


@dataclass
class Leaf:
    surface: str
    role: str = ""
    entry: Optional[LexicalEntry] = None
    span: Optional[tuple[int, int]] = None

    def tokens(self) -> list[str]:
        return [self.surface]

    def walk(self) -> Iterator["TreePart"]:
        yield self


@dataclass
class Node:
    symbol: str
    role: str = ""
    attrs: dict[str, str] = field(default_factory=dict)
    children: list["TreePart"] = field(default_factory=list)
    span: Optional[tuple[int, int]] = None

    def tokens(self) -> list[str]:
        out: list[str] = []
        for child in self.children:
            out.extend(child.tokens())
        return out

    def walk(self) -> Iterator["TreePart"]:
        yield self
        for child in self.children:
            yield from child.walk()

    def find(self, role: str) -> Optional["TreePart"]:
        """First node or leaf with the role, in pre-order."""
        for part in self.walk():
            if part.role == role:
                return part
        return None

    def leaves(self) -> list[Leaf]:
        return [part for part in self.walk() if isinstance(part, Leaf)]


TreePart = Union[Node, Leaf]


@dataclass
class SentenceTree:
    language: str
    structure: StructureSpec
    root: Node

    def __post_init__(self) -> None:
        self._annotate_spans()

    def _annotate_spans(self) -> None:
        pos = 0

        def visit(part: TreePart) -> None:
            nonlocal pos
            start = pos
            if isinstance(part, Leaf):
                pos += 1
            else:
                for child in part.children:
                    visit(child)
            part.span = (start, pos)

        visit(self.root)

    def tokens(self) -> list[str]:
        return self.root.tokens()

    def text(self) -> str:
        return " ".join(self.tokens())

    def find(self, role: str) -> Optional[TreePart]:
        return self.root.find(role)

    @property
    def subject_np(self) -> Node:
        node = self.find("subject")
        if not isinstance(node, Node):
            raise DataError("tree has no subject noun phrase")
        return node

    @property
    def object_np(self) -> Optional[Node]:
        node = self.find("object")
        return node if isinstance(node, Node) else None

    @property
    def matrix_aux(self) -> Optional[Leaf]:
        leaf = self.find("maux")
        return leaf if isinstance(leaf, Leaf) else None

    @property
    def matrix_verb(self) -> Leaf:
        leaf = self.find("mverb")
        if not isinstance(leaf, Leaf):
            raise DataError("tree has no matrix verb")
        return leaf

    @property
    def modifier(self) -> Optional[Node]:
        node = self.find("modifier")
        return node if isinstance(node, Node) else None
