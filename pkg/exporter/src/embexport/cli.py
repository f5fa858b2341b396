"""Command-line entry point: ``embexport export``."""

from __future__ import annotations

import argparse
import sys

from .exporter import LAYER_CHOICES, ExportConfig, export_embeddings
from .segment import EmptyBodyError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="embexport")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("export", help="write an embjsonl embedding file for a document")
    p.add_argument("--body", required=True, help="document body file")
    p.add_argument("--model", required=True, help="model name or local path")
    p.add_argument("--layer", choices=LAYER_CHOICES, default="last")
    p.add_argument("--granularity", choices=("sentence", "token"), default="sentence")
    p.add_argument("--out", required=True, help="output embjsonl path")
    p.add_argument("--format", choices=("plain", "markup"), default="markup")
    p.add_argument("--batch-size", type=int, default=8)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = ExportConfig(
        model_name=args.model,
        layer=args.layer,
        granularity=args.granularity,
        batch_size=args.batch_size,
        doc_format=args.format,
    )
    try:
        count = export_embeddings(args.body, config, args.out)
    except (OSError, EmptyBodyError) as exc:
        print(f"embexport: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # model loading/inference failures
        print(f"embexport: error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {count} sentences to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
