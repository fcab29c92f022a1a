#!/usr/bin/env python3
"""Optional driver: fine-tune a pre-trained text-to-text checkpoint on a
TSV pair directory.

This is a convenience script, not part of the tested package surface; it
needs the `transformers` package and a downloadable or local checkpoint.
Sources and targets are whitespace-joined and re-tokenized by the
checkpoint's own subword tokenizer. Defaults follow the small-batch
fine-tuning recipe commonly used for these models (batch 128, learning
rate 5e-5, greedy decoding).

Example:
    python3 scripts/finetune_pretrained.py \
        --model t5-small --data /data/en_quest_suffix --out /runs/t5_quest
"""

import argparse
import json
import sys
from pathlib import Path
from random import Random

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from seqtrainer.data import read_pairs  # noqa: E402
from seqtrainer.errors import TrainerError  # noqa: E402


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--model", required=True, help="checkpoint name or local path")
    parser.add_argument("--data", required=True, help="directory with train.tsv and dev.tsv")
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--epochs", type=int, default=10)
    parser.add_argument("--batch-size", type=int, default=128)
    parser.add_argument("--learning-rate", type=float, default=5e-5)
    parser.add_argument("--eval-every", type=int, default=500)
    parser.add_argument("--max-new-tokens", type=int, default=64)
    parser.add_argument("--seed", type=int, default=0)
    return parser.parse_args()


def main() -> int:
    args = parse_args()
    try:
        import torch
        from transformers import AutoModelForSeq2SeqLM, AutoTokenizer
    except ImportError as exc:
        print(f"this script needs the transformers package: {exc}", file=sys.stderr)
        return 1

    torch.manual_seed(args.seed)
    data_dir = Path(args.data)
    try:
        train_pairs = [
            (" ".join(s), " ".join(t)) for s, t in read_pairs(data_dir / "train.tsv")
        ]
        dev_pairs = [(" ".join(s), " ".join(t)) for s, t in read_pairs(data_dir / "dev.tsv")]
    except TrainerError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2

    tokenizer = AutoTokenizer.from_pretrained(args.model)
    model = AutoModelForSeq2SeqLM.from_pretrained(args.model)
    optimizer = torch.optim.AdamW(model.parameters(), lr=args.learning_rate)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    log = open(out_dir / "log.jsonl", "w", encoding="utf-8")

    def encode(chunk):
        batch = tokenizer(
            [src for src, _ in chunk],
            text_target=[tgt for _, tgt in chunk],
            padding=True,
            return_tensors="pt",
        )
        batch["labels"][batch["labels"] == tokenizer.pad_token_id] = -100
        return batch

    @torch.no_grad()
    def dev_accuracy() -> float:
        model.eval()
        hits = 0
        for start in range(0, len(dev_pairs), args.batch_size):
            chunk = dev_pairs[start : start + args.batch_size]
            inputs = tokenizer(
                [src for src, _ in chunk], padding=True, return_tensors="pt"
            )
            generated = model.generate(
                **inputs, max_new_tokens=args.max_new_tokens, do_sample=False, num_beams=1
            )
            texts = tokenizer.batch_decode(generated, skip_special_tokens=True)
            hits += sum(got.split() == tgt.split() for got, (_, tgt) in zip(texts, chunk))
        model.train()
        return hits / len(dev_pairs)

    best = -1.0
    step = 0
    rng = Random(args.seed)
    model.train()
    for epoch in range(1, args.epochs + 1):
        order = list(range(len(train_pairs)))
        rng.shuffle(order)
        for start in range(0, len(order), args.batch_size):
            chunk = [train_pairs[i] for i in order[start : start + args.batch_size]]
            optimizer.zero_grad()
            loss = model(**encode(chunk)).loss
            loss.backward()
            optimizer.step()
            step += 1
            if step % args.eval_every == 0:
                accuracy = dev_accuracy()
                log.write(
                    json.dumps(
                        {"step": step, "metrics": {"dev_sequence_accuracy": accuracy}}
                    )
                    + "\n"
                )
                log.flush()
                if accuracy > best:
                    best = accuracy
                    model.save_pretrained(out_dir / "best")
                    tokenizer.save_pretrained(out_dir / "best")
        print(f"epoch {epoch} done ({step} steps)", file=sys.stderr)

    model.save_pretrained(out_dir / "final")
    tokenizer.save_pretrained(out_dir / "final")
    log.close()
    print(json.dumps({"steps": step, "best_dev_sequence_accuracy": best}))
    return 0


if __name__ == "__main__":
    sys.exit(main())
