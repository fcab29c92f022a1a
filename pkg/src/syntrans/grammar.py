"""Feature-constrained CFG loading and sentence sampling.

Grammars live in JSON. A production is

    {"lhs": "NP",
     "when": {"role": "subject", "modifier": ["none", "on-object"]},
     "rhs": [{"sym": "Det", "role": "det", "feats": {"number": "$number"}},
             {"sym": "Noun", "role": "head", "feats": {"number": "$number"}}],
     "order": [1, 0],
     "attrs": {"number": "$number"}}

Guards ("when") test the structure context (task, modifier, modifier_kind,
transitivity, rc_gap), the sentence-level latents, and the role the parent
assigned; a list value matches any member. Feature values in "feats" are
constants, "$var" references, or "!$var" complements. A "$var" that is
still unbound when its reference is expanded samples freely and binds the
variable afterwards from the child (bind-back); productions export the
features parents may bind against through "attrs". "order" overrides the
sampling order (surface order is always rhs order) so e.g. a noun can fix
gender before its determiner is drawn. Literal tokens use {"lit": ","}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from random import Random

from .errors import GrammarError, InternalError
from .features import CATEGORIES, FEATURE_DOMAINS, complement
from .lexicon import Lexicon
from .structures import Leaf, Node, SentenceTree, StructureSpec

# sentence draws per spec before giving up on the well-formedness constraints
MAX_DRAWS = 500

_CTX_KEYS = ("task", "modifier", "modifier_kind", "transitivity", "rc_gap", "role")


@dataclass(frozen=True)
class Ref:
    """One right-hand-side element: a symbol reference or a literal token."""

    sym: str = ""
    lit: str = ""
    role: str = ""
    feats: tuple[tuple[str, str], ...] = ()
    lemmas: tuple[str, ...] = ()


@dataclass(frozen=True)
class Production:
    lhs: str
    when: tuple[tuple[str, tuple[str, ...]], ...]
    rhs: tuple[Ref, ...]
    order: tuple[int, ...]
    attrs: tuple[tuple[str, str], ...]

    def matches(self, ctx: dict[str, str]) -> bool:
        return all(ctx.get(key) in values for key, values in self.when)


class Grammar:
    def __init__(
        self,
        language: str,
        start: str,
        latents: dict[str, tuple[str, ...]],
        productions: list[Production],
    ):
        self.language = language
        self.start = start
        self.latents = latents
        self.productions = tuple(productions)
        self.by_lhs: dict[str, list[Production]] = {}
        for prod in self.productions:
            self.by_lhs.setdefault(prod.lhs, []).append(prod)
        self._validate()

    def _validate(self) -> None:
        if self.start not in self.by_lhs:
            raise GrammarError(f"start symbol {self.start!r} has no productions")
        known_guard_keys = set(_CTX_KEYS) | set(self.latents)
        for prod in self.productions:
            for key, _ in prod.when:
                if key not in known_guard_keys:
                    raise GrammarError(f"unknown guard key {key!r} in {prod.lhs} production")
            if sorted(prod.order) != list(range(len(prod.rhs))):
                raise GrammarError(f"order is not a permutation in {prod.lhs} production")
            for feat, var in prod.attrs:
                if feat not in FEATURE_DOMAINS or not var.startswith("$"):
                    raise GrammarError(f"bad attrs entry {feat}={var!r} in {prod.lhs}")
            for ref in prod.rhs:
                if ref.lit:
                    continue
                if ref.sym not in CATEGORIES and ref.sym not in self.by_lhs:
                    raise GrammarError(f"symbol {ref.sym!r} has no productions and is not lexical")
                for feat, value in ref.feats:
                    if feat not in FEATURE_DOMAINS:
                        raise GrammarError(f"unknown feature {feat!r} on {ref.sym}")
                    if not value.startswith(("$", "!$")) and value not in FEATURE_DOMAINS[feat]:
                        raise GrammarError(f"bad constant {value!r} for feature {feat}")


def _parse_ref(raw: dict) -> Ref:
    if "lit" in raw:
        return Ref(lit=raw["lit"], role=raw.get("role", ""))
    lemmas = raw.get("lemma", ())
    if isinstance(lemmas, str):
        lemmas = (lemmas,)
    return Ref(
        sym=raw["sym"],
        role=raw.get("role", ""),
        feats=tuple(raw.get("feats", {}).items()),
        lemmas=tuple(lemmas),
    )


def load_grammar(source: str | Path | dict) -> Grammar:
    if isinstance(source, dict):
        doc = source
    else:
        doc = json.loads(Path(source).read_text(encoding="utf-8"))
    latents = {name: tuple(choices) for name, choices in doc.get("latents", {}).items()}
    productions = []
    for raw in doc["productions"]:
        rhs = tuple(_parse_ref(r) for r in raw["rhs"])
        when = tuple(
            (key, tuple(value) if isinstance(value, list) else (value,))
            for key, value in raw.get("when", {}).items()
        )
        order = tuple(raw.get("order", range(len(rhs))))
        attrs = tuple(raw.get("attrs", {}).items())
        productions.append(Production(raw["lhs"], when, rhs, order, attrs))
    return Grammar(doc["language"], doc.get("start", "S"), latents, productions)


def default_grammar_path(language: str) -> Path:
    name = f"grammar_{language}.json"
    with resources.as_file(resources.files("syntrans.data").joinpath(name)) as path:
        return Path(path)


def default_grammar(language: str) -> Grammar:
    return load_grammar(default_grammar_path(language))


def _resolve_feats(
    ref: Ref, env: dict[str, str], latents: dict[str, str]
) -> tuple[dict[str, str], list[tuple[str, str]]]:
    """Split a ref's feature specs into concrete constraints and deferred binds."""
    constraints: dict[str, str] = {}
    deferred: list[tuple[str, str]] = []
    for feat, value in ref.feats:
        if value.startswith("!$"):
            name = value[2:]
            bound = env.get(name, latents.get(name))
            if bound is None:
                raise GrammarError(f"complement of unbound variable ${name} on {ref.sym}")
            constraints[feat] = complement(feat, bound)
        elif value.startswith("$"):
            name = value[1:]
            bound = env.get(name, latents.get(name))
            if bound is None:
                deferred.append((feat, name))
            else:
                constraints[feat] = bound
        else:
            constraints[feat] = value
    return constraints, deferred


def _expand_ref(
    grammar: Grammar,
    lexicon: Lexicon,
    ref: Ref,
    constraints: dict[str, str],
    ctx: dict[str, str],
    latents: dict[str, str],
    rng: Random,
):
    if ref.sym in CATEGORIES:
        candidates = lexicon.candidates(ref.sym, constraints)
        if ref.lemmas:
            candidates = [e for e in candidates if e.lemma in ref.lemmas]
        if not candidates:
            raise GrammarError(
                f"no {ref.sym} entry satisfies {constraints} (lemmas {ref.lemmas or 'any'})"
            )
        entry = rng.choice(candidates)
        leaf = Leaf(entry.surface, ref.role, entry)
        return leaf, dict(entry.features._asdict())
    node_ctx = {**ctx, "role": ref.role}
    options = [p for p in grammar.by_lhs.get(ref.sym, []) if p.matches(node_ctx)]
    if not options:
        raise GrammarError(f"no production for {ref.sym} under context {node_ctx}")
    prod = rng.choice(options)
    env = dict(constraints)
    children: dict[int, Leaf | Node] = {}
    for idx in prod.order:
        child_ref = prod.rhs[idx]
        if child_ref.lit:
            children[idx] = Leaf(child_ref.lit, child_ref.role)
            continue
        child_constraints, deferred = _resolve_feats(child_ref, env, latents)
        child, child_attrs = _expand_ref(
            grammar, lexicon, child_ref, child_constraints, ctx, latents, rng
        )
        children[idx] = child
        for feat, var in deferred:
            value = child_attrs.get(feat)
            if value is None:
                raise GrammarError(
                    f"cannot bind ${var}: child {child_ref.sym} exposes no {feat!r}"
                )
            env[var] = value
    node = Node(symbol=ref.sym, role=ref.role, children=[children[i] for i in range(len(prod.rhs))])
    attrs = dict(constraints)
    for feat, var in prod.attrs:
        value = env.get(var[1:])
        if value is None:
            raise GrammarError(f"attrs variable {var} never bound in {prod.lhs} production")
        attrs[feat] = value
    node.attrs = attrs
    return node, attrs


def _rc_aux_distinct(tree: SentenceTree) -> bool:
    modifier = tree.modifier
    maux = tree.matrix_aux
    if modifier is None or maux is None:
        return True
    raux = modifier.find("raux")
    if not isinstance(raux, Leaf):
        return True
    return raux.surface != maux.surface


def _german_rc_parseable(tree: SentenceTree, spec: StructureSpec) -> bool:
    """Transitive German RCs must expose their gap type on the surface.

    The gap is recoverable when the head or the clause-internal noun phrase
    is masculine singular (nom/acc determiner forms differ) or when the two
    differ in number (the clause-final auxiliary gives it away).
    """
    modifier = tree.modifier
    if modifier is None:
        return True
    internal = modifier.find("rsubj") or modifier.find("robj")
    if internal is None:
        return True
    host = tree.subject_np if spec.modifier == "on-subject" else tree.object_np
    if host is None:
        return True
    head = host.find("head")
    inner_head = internal.find("head")
    assert isinstance(head, Leaf) and isinstance(inner_head, Leaf)
    assert head.entry is not None and inner_head.entry is not None
    hf = head.entry.features
    nf = inner_head.entry.features
    if hf.gender == "masc" and hf.number == "sg":
        return True
    if nf.gender == "masc" and nf.number == "sg":
        return True
    return hf.number != nf.number


def _pp_heads_distinct(tree: SentenceTree) -> bool:
    pobj = tree.subject_np.find("pobj")
    obj = tree.object_np
    if not isinstance(pobj, Node) or obj is None:
        return True
    pobj_head = pobj.find("head")
    obj_head = obj.find("head")
    assert isinstance(pobj_head, Leaf) and isinstance(obj_head, Leaf)
    assert pobj_head.entry is not None and obj_head.entry is not None
    return pobj_head.entry.lemma != obj_head.entry.lemma


def satisfies_constraints(tree: SentenceTree, spec: StructureSpec) -> bool:
    """Well-formedness beyond the CFG: the constraints a single derivation
    cannot express. Sampled sentences are redrawn until these hold."""
    if spec.task == "quest" and spec.modifier_kind == "rc":
        if spec.modifier == "on-subject" and not _rc_aux_distinct(tree):
            return False
        if tree.language == "de" and not _german_rc_parseable(tree, spec):
            return False
    if spec.task == "passiv" and spec.modifier == "on-subject":
        if not _pp_heads_distinct(tree):
            return False
    return True


def sample_sentence(
    grammar: Grammar,
    lexicon: Lexicon,
    spec: StructureSpec,
    rng: Random,
) -> SentenceTree:
    """Draw one sentence for the given structure, redrawing until the
    surface-form constraints hold."""
    for _ in range(MAX_DRAWS):
        latents = {name: rng.choice(list(choices)) for name, choices in grammar.latents.items()}
        ctx = {**spec.context(), **latents}
        root_ref = Ref(sym=grammar.start)
        root, _ = _expand_ref(grammar, lexicon, root_ref, {}, ctx, latents, rng)
        if not isinstance(root, Node):
            raise InternalError("start symbol expanded to a leaf")
        tree = SentenceTree(grammar.language, spec, root)
        if satisfies_constraints(tree, spec):
            return tree
    raise InternalError(f"no acceptable sentence after {MAX_DRAWS} draws for {spec}")
