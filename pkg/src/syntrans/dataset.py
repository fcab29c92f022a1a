"""Dataset construction, TSV serialization, and the crosslingual mixer.

A manifest is four splits: train/dev/test hold a mix of identity
("decl") rows and transformed rows whose modifiers never sit on the
subject; gen holds only transformed rows with the modifier on the
subject, the configuration train is ambiguous about. The gen split is
drawn first so its sources are reserved before train fills up.

Serialization is line-per-example TSV, source and target separated by a
tab. The task marker is either prefixed to the source ("quest: the yak
has eaten .") or appended after it ("the yak has eaten . quest").
Identity rows use the marker "decl"; targets never carry a marker.

Every row's random stream is seeded from (seed, language, task, split,
index, round), so builds are reproducible byte for byte and any row can
be regenerated in isolation.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import asdict, dataclass
from pathlib import Path
from random import Random
from typing import Iterable, NamedTuple, Optional

from . import __version__
from .errors import DataError, InsufficientLexiconError
from .grammar import Grammar, default_grammar, sample_sentence
from .lexicon import Lexicon, default_lexicon
from .structures import TASKS, StructureSpec, spec_for
from .transforms import hierarchical, identity

MARKERS = ("quest", "passiv", "decl")
FORMATS = ("prefix", "suffix")
SPLITS = ("train", "dev", "test", "gen")

# redraw attempts per row before declaring the lexicon too small
MAX_ROUNDS = 256


class Row(NamedTuple):
    source: tuple[str, ...]
    target: tuple[str, ...]
    marker: str
    structure: str = ""

    @property
    def transformed(self) -> bool:
        return self.marker != "decl"


@dataclass(frozen=True)
class DatasetConfig:
    language: str
    task: str
    seed: int = 0
    train_size: int = 100_000
    dev_size: int = 1_000
    test_size: int = 10_000
    gen_size: int = 10_000
    transform_fraction: float = 0.5
    trans_weight: float = 0.9
    dedup: bool = True
    format: str = "prefix"

    def __post_init__(self) -> None:
        if self.language not in ("en", "de"):
            raise DataError(f"unsupported language {self.language!r}")
        if self.task not in TASKS:
            raise DataError(f"unknown task {self.task!r}")
        if self.format not in FORMATS:
            raise DataError(f"unknown format {self.format!r}, expected prefix or suffix")
        for name in ("train_size", "dev_size", "test_size", "gen_size"):
            if getattr(self, name) < 0:
                raise DataError(f"{name} must be non-negative")
        for name in ("transform_fraction", "trans_weight"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise DataError(f"{name} must be within [0, 1]")


def derive_seed(*parts) -> int:
    joined = ":".join(str(part) for part in parts)
    digest = hashlib.sha256(joined.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def _structure_for(rng: Random, cfg: DatasetConfig, split: str) -> tuple[str, StructureSpec]:
    """Sample the row kind and sentence shape. Draw order is fixed; do not
    reorder these rng calls or existing datasets change."""
    if split == "gen":
        marker = cfg.task
        modifier = "on-subject"
    elif rng.random() < cfg.transform_fraction:
        marker = cfg.task
        modifier = rng.choice(["none", "on-object"])
    else:
        marker = "decl"
        modifier = rng.choice(["none", "on-subject", "on-object"])
    if cfg.task == "passiv" or modifier == "on-object":
        transitivity = "trans"
    else:
        transitivity = "trans" if rng.random() < cfg.trans_weight else "intrans"
    rc_gap = "none"
    if cfg.task == "quest" and modifier != "none":
        rc_gap = rng.choice(["subject", "object"])
    return marker, spec_for(cfg.task, modifier, transitivity, rc_gap)


def _draw_row(
    cfg: DatasetConfig,
    grammar: Grammar,
    lexicon: Lexicon,
    split: str,
    index: int,
    seen: set[str],
) -> Row:
    for round_ in range(MAX_ROUNDS):
        rng = Random(derive_seed(cfg.seed, cfg.language, cfg.task, split, index, round_))
        marker, spec = _structure_for(rng, cfg, split)
        tree = sample_sentence(grammar, lexicon, spec, rng)
        text = tree.text()
        if cfg.dedup and text in seen:
            continue
        seen.add(text)
        if marker == "decl":
            result = identity(tree.tokens())
        else:
            result = hierarchical(tree, lexicon)
        tag = f"{spec.modifier}|{spec.transitivity}|{spec.rc_gap}"
        return Row(tuple(tree.tokens()), result.output, marker, tag)
    raise InsufficientLexiconError(
        f"no unseen sentence after {MAX_ROUNDS} draws "
        f"({cfg.language}/{cfg.task} split={split} index={index}); "
        "the lexicon is too small for the requested sizes with dedup on"
    )


def build_rows(cfg: DatasetConfig) -> dict[str, list[Row]]:
    grammar = default_grammar(cfg.language)
    lexicon = default_lexicon(cfg.language)
    seen: set[str] = set()
    sizes = {
        "gen": cfg.gen_size,
        "train": cfg.train_size,
        "dev": cfg.dev_size,
        "test": cfg.test_size,
    }
    splits: dict[str, list[Row]] = {}
    for split in ("gen", "train", "dev", "test"):
        splits[split] = [
            _draw_row(cfg, grammar, lexicon, split, index, seen)
            for index in range(sizes[split])
        ]
    return splits


# --- serialization ------------------------------------------------------


def format_row(row: Row, fmt: str) -> str:
    source = " ".join(row.source)
    target = " ".join(row.target)
    if fmt == "prefix":
        return f"{row.marker}: {source}\t{target}"
    return f"{source} {row.marker}\t{target}"


def parse_row(line: str, fmt: str) -> Row:
    fields = line.rstrip("\n").split("\t")
    if len(fields) != 2:
        raise DataError(f"expected 2 tab-separated fields, got {len(fields)}: {line!r}")
    source_field, target = fields
    source_tokens = source_field.split()
    if not source_tokens:
        raise DataError(f"empty source in {line!r}")
    if fmt == "prefix":
        head = source_tokens[0]
        if not head.endswith(":") or head[:-1] not in MARKERS:
            raise DataError(f"missing task prefix in {line!r}")
        marker = head[:-1]
        source = tuple(source_tokens[1:])
    else:
        marker = source_tokens[-1]
        if marker not in MARKERS:
            raise DataError(f"missing task marker in {line!r}")
        source = tuple(source_tokens[:-1])
    return Row(source, tuple(target.split()), marker)


def write_split(path: Path, rows: Iterable[Row], fmt: str) -> None:
    lines = [format_row(row, fmt) for row in rows]
    path.write_text("\n".join(lines) + "\n" if lines else "", encoding="utf-8")


def read_split(path: Path, fmt: str) -> list[Row]:
    rows = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            if line.strip():
                rows.append(parse_row(line, fmt))
    return rows


def file_sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _split_stats(rows: list[Row]) -> dict:
    structures = Counter(f"{row.marker}|{row.structure}" for row in rows)
    return {
        "rows": len(rows),
        "transformed": sum(1 for r in rows if r.transformed),
        "decl": sum(1 for r in rows if not r.transformed),
        "structures": dict(sorted(structures.items())),
    }


def write_manifest(
    cfg: DatasetConfig,
    out_dir: Path,
    rows: Optional[dict[str, list[Row]]] = None,
) -> dict:
    """Build all four splits, write TSVs plus a metadata sidecar, and
    return the metadata. Pass rows to serialize an already-built set."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    splits = build_rows(cfg) if rows is None else rows
    metadata: dict = {
        "version": __version__,
        "config": asdict(cfg),
        "splits": {},
    }
    for split in SPLITS:
        path = out_dir / f"{split}.tsv"
        write_split(path, splits[split], cfg.format)
        stats = _split_stats(splits[split])
        stats["sha256"] = file_sha256(path)
        metadata["splits"][split] = stats
    (out_dir / "metadata.json").write_text(
        json.dumps(metadata, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    return metadata


# --- crosslingual composition ------------------------------------------


@dataclass(frozen=True)
class ComponentSpec:
    directory: Path
    language: str
    include: str = "all"  # all | decl | transformed

    def __post_init__(self) -> None:
        if self.include not in ("all", "decl", "transformed"):
            raise DataError(f"bad include {self.include!r}")


def compose_crosslingual(
    components: list[ComponentSpec],
    out_dir: Path,
    seed: int = 0,
    fmt: str = "prefix",
) -> dict:
    """Merge per-language manifests into one training file. Train rows
    from all components are pooled and shuffled; dev/test/gen stay
    separate per language so generalization is measured in each language
    on its own."""
    if len({c.language for c in components}) != len(components):
        raise DataError("each component must use a distinct language")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    train: list[Row] = []
    for comp in components:
        rows = read_split(Path(comp.directory) / "train.tsv", fmt)
        if comp.include == "decl":
            rows = [r for r in rows if not r.transformed]
        elif comp.include == "transformed":
            rows = [r for r in rows if r.transformed]
        train.extend(rows)
    Random(derive_seed(seed, "compose", "train")).shuffle(train)
    write_split(out_dir / "train.tsv", train, fmt)
    metadata: dict = {
        "version": __version__,
        "seed": seed,
        "format": fmt,
        "components": [
            {"language": c.language, "include": c.include, "directory": str(c.directory)}
            for c in components
        ],
        "splits": {"train": {"rows": len(train), "sha256": file_sha256(out_dir / "train.tsv")}},
    }
    for comp in components:
        for split in ("dev", "test", "gen"):
            source_path = Path(comp.directory) / f"{split}.tsv"
            rows = read_split(source_path, fmt)
            name = f"{split}_{comp.language}"
            path = out_dir / f"{name}.tsv"
            write_split(path, rows, fmt)
            metadata["splits"][name] = {"rows": len(rows), "sha256": file_sha256(path)}
    (out_dir / "metadata.json").write_text(
        json.dumps(metadata, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    return metadata
