"""ctctrain command line: train on a manifest, transcribe to a manifest."""

from __future__ import annotations

import argparse
import sys

from .spec import TrainSpec


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="ctctrain", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="fine-tune per a TrainSpec JSON file")
    p.add_argument("--spec", required=True, help="TrainSpec JSON")
    p.add_argument("--manifest", help="override train_manifest")
    p.add_argument("--out", help="override output_dir")

    p = sub.add_parser("transcribe", help="greedy-decode a manifest's audio")
    p.add_argument("--model", required=True, help="trained model directory")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True, help="hypothesis manifest path")

    args = parser.parse_args(argv)

    if args.command == "train":
        from .train import train

        spec = TrainSpec.load(args.spec)
        if args.manifest:
            spec.train_manifest = args.manifest
        if args.out:
            spec.output_dir = args.out
        result = train(spec)
        print(
            f"trained {result.epochs} epoch(s), {len(result.losses)} steps, "
            f"final loss {result.losses[-1]:.4f} -> {result.model_dir}"
        )
        return 0

    from .transcribe import transcribe

    hypotheses = transcribe(args.model, args.manifest, args.out)
    print(f"wrote {len(hypotheses)} hypotheses -> {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
