"""Command line entry points for training and decoding."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import DataError, InternalError, TrainerError, UsageError
from .models import ARCHITECTURES
from .predict import predict_file
from .train import TrainConfig, train


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad flags; route through our own
    # error type so usage problems always map to exit code 1.
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="seqtrainer",
        description="Train and run small sequence-to-sequence baselines on "
        "tab-separated token files.",
    )
    parser.add_argument("--version", action="version", version="seqtrainer 0.1.0")
    sub = parser.add_subparsers(dest="command", required=True)

    train_p = sub.add_parser("train", parents=[], help="train a model on a data directory")
    train_p.add_argument("--data", required=True, help="directory with train.tsv and dev.tsv")
    train_p.add_argument("--out", required=True, help="output directory for checkpoints and logs")
    train_p.add_argument("--architecture", choices=ARCHITECTURES, default="lstm")
    train_p.add_argument("--seed", type=int, default=0)
    train_p.add_argument("--embedding-dim", type=int, default=256)
    train_p.add_argument("--hidden-dim", type=int, default=256)
    train_p.add_argument("--batch-size", type=int, default=128)
    train_p.add_argument("--learning-rate", type=float, default=1e-4)
    train_p.add_argument("--max-epochs", type=int, default=30)
    train_p.add_argument("--eval-every", type=int, default=500)
    train_p.add_argument("--patience", type=int, default=8)
    train_p.add_argument("--min-epochs", type=int, default=2)
    train_p.add_argument("--keep-all", action="store_true", help="keep a checkpoint per evaluation")
    train_p.add_argument(
        "--limit-train",
        type=int,
        default=0,
        help="use only the first N training examples (0 means all)",
    )

    predict_p = sub.add_parser("predict", help="decode a data file with a checkpoint")
    predict_p.add_argument("--run", help="run directory produced by train")
    predict_p.add_argument(
        "--checkpoint",
        default="best",
        help="best, final, or an explicit checkpoint path",
    )
    predict_p.add_argument("--data", required=True, help="TSV file to decode")
    predict_p.add_argument("--out", required=True, help="where to write one prediction per line")
    predict_p.add_argument("--batch-size", type=int, default=256)
    return parser


def _resolve_checkpoint(run: str | None, checkpoint: str) -> Path:
    if checkpoint in ("best", "final"):
        if not run:
            raise UsageError("--run is required when --checkpoint is best or final")
        return Path(run) / f"{checkpoint}.pt"
    return Path(checkpoint)


def _run(args: argparse.Namespace) -> int:
    if args.command == "train":
        config = TrainConfig(
            data_dir=args.data,
            out_dir=args.out,
            architecture=args.architecture,
            seed=args.seed,
            embedding_dim=args.embedding_dim,
            hidden_dim=args.hidden_dim,
            batch_size=args.batch_size,
            learning_rate=args.learning_rate,
            max_epochs=args.max_epochs,
            eval_every=args.eval_every,
            patience=args.patience,
            min_epochs=args.min_epochs,
            keep_all=args.keep_all,
            limit_train=args.limit_train,
        )
        summary = train(config)
        print(json.dumps(summary, sort_keys=True))
        return 0
    if args.command == "predict":
        path = _resolve_checkpoint(args.run, args.checkpoint)
        summary = predict_file(path, Path(args.data), Path(args.out), args.batch_size)
        print(json.dumps(summary, sort_keys=True))
        return 0
    raise InternalError(f"unhandled command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _run(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except TrainerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
