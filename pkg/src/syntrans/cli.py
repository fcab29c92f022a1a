"""Command line entry point.

Subcommands:
  generate   build a dataset manifest (or mix per-language manifests)
  oracle     apply a transformation rule to sentences from a file/stdin
  evaluate   score a predictions file against a reference TSV
  mine       scan text documents for declarative/question pairs
  report     turn a training log into a metric curve CSV

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .dataset import (
    ComponentSpec,
    DatasetConfig,
    compose_crosslingual,
    read_split,
    write_manifest,
)
from .errors import DataError, InternalError, SyntransError, UsageError
from .lexicon import default_lexicon, load_lexicon
from .metrics import emit_curve, evaluate_run
from .miner import MinerConfig, estimate, pairs_to_tsv, scan_pairs, segment, summarize
from .parsing import parse_sentence
from .structures import TASKS
from .transforms import hierarchical, linear


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad flags; we reserve 2 for data errors, so
    route usage problems through UsageError instead."""

    def error(self, message: str):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="syntrans", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"syntrans {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    gen = sub.add_parser("generate", help="build a dataset manifest", parents=[])
    gen.add_argument("--language", choices=["en", "de"], default="en")
    gen.add_argument("--task", choices=list(TASKS), default="quest")
    gen.add_argument("--out", required=True, help="output directory")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--train-size", type=int, default=100_000)
    gen.add_argument("--dev-size", type=int, default=1_000)
    gen.add_argument("--test-size", type=int, default=10_000)
    gen.add_argument("--gen-size", type=int, default=10_000)
    gen.add_argument("--transform-fraction", type=float, default=0.5)
    gen.add_argument("--trans-weight", type=float, default=0.9)
    gen.add_argument("--format", choices=["prefix", "suffix"], default="prefix")
    gen.add_argument("--no-dedup", action="store_true", help="allow repeated sources")
    gen.add_argument(
        "--mix",
        action="append",
        default=[],
        metavar="LANG=DIR[:INCLUDE]",
        help="compose existing manifests instead of sampling; INCLUDE is all, decl, or transformed",
    )

    orc = sub.add_parser("oracle", help="apply a transformation rule")
    orc.add_argument("--language", choices=["en", "de"], default="en")
    orc.add_argument("--task", choices=list(TASKS), default="quest")
    orc.add_argument("--rule", choices=["hierarchical", "linear"], default="hierarchical")
    orc.add_argument("--in", dest="infile", default="-", help="sentence-per-line input, - for stdin")
    orc.add_argument("--out", dest="outfile", default="-", help="output path, - for stdout")
    orc.add_argument("--lexicon", default="", help="override the built-in lexicon (json path)")

    ev = sub.add_parser("evaluate", help="score predictions against references")
    ev.add_argument("--language", choices=["en", "de"], default="en")
    ev.add_argument("--task", choices=list(TASKS), default="quest")
    ev.add_argument("--references", required=True, help="reference TSV")
    ev.add_argument("--predictions", required=True, help="prediction-per-line file")
    ev.add_argument("--format", choices=["prefix", "suffix"], default="prefix")
    ev.add_argument("--report", default="", help="also write the report JSON here")

    mine = sub.add_parser("mine", help="scan documents for declarative/question pairs")
    mine.add_argument("--language", choices=["en", "de"], default="en")
    mine.add_argument("--input", action="append", required=True, help="text file (one document)")
    mine.add_argument("--jaccard", type=float, default=0.7)
    mine.add_argument("--multiset", action="store_true", help="weight repeated words in overlap")
    mine.add_argument("--window", type=int, default=10)
    mine.add_argument("--pairs-out", default="", help="write mined pairs TSV here")
    mine.add_argument("--corpus-size", type=int, default=0, help="scale counts to this many sentences")

    rep = sub.add_parser("report", help="training log to metric curve CSV")
    rep.add_argument("--log", required=True, help="JSON or JSON-lines training log")
    rep.add_argument("--out", required=True, help="curve CSV path")
    return parser


def _read_lines(path: str) -> list[str]:
    if path == "-":
        return [line.rstrip("\n") for line in sys.stdin]
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    return text.splitlines()


def _write_lines(path: str, lines: list[str]) -> None:
    body = "\n".join(lines) + "\n" if lines else ""
    if path == "-":
        sys.stdout.write(body)
    else:
        Path(path).write_text(body, encoding="utf-8")


def _cmd_generate(args) -> int:
    if args.mix:
        components = []
        for item in args.mix:
            if "=" not in item:
                raise UsageError(f"--mix expects LANG=DIR[:INCLUDE], got {item!r}")
            lang, _, rest = item.partition("=")
            directory, _, include = rest.partition(":")
            components.append(
                ComponentSpec(Path(directory), lang.strip(), include.strip() or "all")
            )
        metadata = compose_crosslingual(
            components, Path(args.out), seed=args.seed, fmt=args.format
        )
    else:
        cfg = DatasetConfig(
            language=args.language,
            task=args.task,
            seed=args.seed,
            train_size=args.train_size,
            dev_size=args.dev_size,
            test_size=args.test_size,
            gen_size=args.gen_size,
            transform_fraction=args.transform_fraction,
            trans_weight=args.trans_weight,
            dedup=not args.no_dedup,
            format=args.format,
        )
        metadata = write_manifest(cfg, Path(args.out))
    for split in sorted(metadata["splits"]):
        info = metadata["splits"][split]
        print(f"{split}: {info['rows']} rows sha256={info['sha256'][:12]}")
    return 0


def _cmd_oracle(args) -> int:
    lexicon = load_lexicon(Path(args.lexicon)) if args.lexicon else default_lexicon(args.language)
    lines = _read_lines(args.infile)
    out = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            if args.rule == "hierarchical":
                tree = parse_sentence(line, args.task, lexicon)
                result = hierarchical(tree, lexicon)
            else:
                result = linear(line.split(), args.task, lexicon)
        except DataError as exc:
            raise DataError(f"line {lineno}: {exc}") from exc
        out.append(" ".join(result.output))
    _write_lines(args.outfile, out)
    return 0


def _cmd_evaluate(args) -> int:
    rows = read_split(Path(args.references), args.format)
    predictions = [line.split() for line in _read_lines(args.predictions)]
    while predictions and not predictions[-1]:
        predictions.pop()
    lexicon = default_lexicon(args.language)
    report = evaluate_run(rows, predictions, args.task, lexicon)
    text = report.to_json()
    print(text)
    if args.report:
        Path(args.report).write_text(text + "\n", encoding="utf-8")
    return 0


def _cmd_mine(args) -> int:
    config = MinerConfig(
        language=args.language,
        jaccard_threshold=args.jaccard,
        multiset=args.multiset,
        window=args.window,
    )
    documents = []
    scanned = 0
    for path in args.input:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise DataError(f"cannot read {path}: {exc}") from exc
        documents.append((Path(path).name, text))
        scanned += len(segment(text, config.abbreviations))
    pairs = scan_pairs(documents, config)
    summary = summarize(pairs, scanned)
    if args.corpus_size:
        projected = estimate(
            pair_probability=summary["pair_rate"],
            rc_probability=summary["rc_share"],
            corpus_size=args.corpus_size,
        )
        summary["expected_disambiguating"] = projected.expected_count
    if args.pairs_out:
        Path(args.pairs_out).write_text(pairs_to_tsv(pairs), encoding="utf-8")
    print(json.dumps(summary, ensure_ascii=False, indent=2, sort_keys=True))
    return 0


def _flatten_metrics(metrics: dict, prefix: str = "") -> list[tuple[str, float]]:
    out = []
    for key in sorted(metrics):
        value = metrics[key]
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            out.extend(_flatten_metrics(value, prefix=f"{name}."))
        elif isinstance(value, (int, float)) and not isinstance(value, bool):
            out.append((name, float(value)))
    return out


def _cmd_report(args) -> int:
    raw = Path(args.log)
    try:
        text = raw.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {args.log}: {exc}") from exc
    records = []
    stripped = text.lstrip()
    try:
        if stripped.startswith("["):
            records = json.loads(text)
        elif stripped.startswith("{") and "\n{" not in stripped:
            payload = json.loads(text)
            records = payload.get("checkpoints", []) if isinstance(payload, dict) else []
        else:
            records = [json.loads(line) for line in text.splitlines() if line.strip()]
    except json.JSONDecodeError as exc:
        raise DataError(f"bad training log {args.log}: {exc}") from exc
    curve = []
    for record in records:
        if not isinstance(record, dict) or "step" not in record:
            raise DataError(f"log record missing step: {record!r}")
        metrics = record.get("metrics", {})
        if not isinstance(metrics, dict):
            raise DataError(f"log record metrics must be an object: {record!r}")
        for name, value in _flatten_metrics(metrics):
            curve.append((int(record["step"]), name, value))
    emit_curve(curve, Path(args.out))
    print(f"wrote {len(curve)} curve points to {args.out}")
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "oracle": _cmd_oracle,
    "evaluate": _cmd_evaluate,
    "mine": _cmd_mine,
    "report": _cmd_report,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help()
        return 1
    return _COMMANDS[args.command](args)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        return run(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except SyntransError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
