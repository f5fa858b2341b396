"""Command-line interface.

Subcommands: summarize (one document), evaluate (corpus at one
configuration), sweep (grid over k and metrics, with TSV and figure
rendered next to the JSON report), compare (paired significance test
between two evaluation reports).

Exit codes: 0 success, 1 usage error, 2 corpus/format error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .clustering import Metric
from .embedding import load_embeddings, test_embed
from .errors import ClustsumError, InvalidKError, InvalidRateError
from .harness import (
    RunConfig,
    compare_reports,
    evaluate_corpus,
    load_corpus,
    load_report,
    render_sweep_tsv,
    summary_report,
    sweep_parameters,
    write_report,
)
from .summarize import build_summary
from .textprep import prepare_document

USAGE_ERROR = 1
DATA_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _metric(value: str) -> Metric:
    try:
        return Metric(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown metric {value!r}")


def _metric_list(value: str) -> list[Metric]:
    metrics = []
    for name in value.split(","):
        metric = _metric(name.strip())
        if metric not in metrics:
            metrics.append(metric)
    return metrics


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="clustsum", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common_fmt = dict(choices=("plain", "markup"), default="markup",
                      help="body text format (default: markup)")

    p = sub.add_parser("summarize", help="summarize a single document")
    p.add_argument("--body", required=True, help="document body file")
    p.add_argument("--embeddings", help="embjsonl file aligned to the body")
    p.add_argument("--test-seed", type=int, help="use the deterministic test embedder")
    p.add_argument("--test-dim", type=int, default=32, help="test embedder dimension")
    p.add_argument("--k", type=int, required=True, help="number of clusters")
    p.add_argument("--metric", type=_metric, required=True, help="cosine or euclidean")
    p.add_argument("--rate", type=float, required=True, help="compression rate in (0,1]")
    p.add_argument("--out", required=True, help="summary text output file")
    p.add_argument("--report", help="optional JSON sidecar report")
    p.add_argument("--format", **common_fmt)

    p = sub.add_parser("evaluate", help="evaluate a corpus at one configuration")
    p.add_argument("--corpus", required=True, help="corpus root directory")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--metric", type=_metric, required=True)
    p.add_argument("--rate", type=float, required=True)
    p.add_argument("--report", required=True, help="JSON report output file")
    p.add_argument("--test-seed", type=int)
    p.add_argument("--test-dim", type=int, default=32)
    p.add_argument("--format", **common_fmt)

    p = sub.add_parser("sweep", help="sweep k and metrics over a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--k-min", type=int, required=True)
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--metrics", type=_metric_list, required=True,
                   help="comma-separated: cosine,euclidean")
    p.add_argument("--rate", type=float, required=True)
    p.add_argument("--report", required=True,
                   help="JSON report path; .tsv and .png are written alongside")
    p.add_argument("--test-seed", type=int)
    p.add_argument("--test-dim", type=int, default=32)
    p.add_argument("--format", **common_fmt)

    p = sub.add_parser("compare", help="Wilcoxon signed-rank test between two reports")
    p.add_argument("--report-a", required=True)
    p.add_argument("--report-b", required=True)
    p.add_argument("--metric", choices=("r1", "r2"), required=True)

    return parser


def _cmd_summarize(args) -> int:
    if (args.embeddings is None) == (args.test_seed is None):
        print("clustsum: error: provide exactly one of --embeddings or --test-seed",
              file=sys.stderr)
        return USAGE_ERROR
    body = Path(args.body).read_text(encoding="utf-8")
    doc_id = Path(args.body).stem
    _, sentences = prepare_document(body, format=args.format, doc_id=doc_id)
    if args.test_seed is not None:
        embeddings = test_embed(sentences, dim=args.test_dim, seed=args.test_seed)
    else:
        embeddings = load_embeddings(args.embeddings, expected_sentences=len(sentences))
    result = build_summary(sentences, embeddings, args.k, args.metric, args.rate)
    Path(args.out).write_text(result.text, encoding="utf-8")
    if args.report:
        config = RunConfig(k=args.k, metric=args.metric, rate=args.rate,
                           test_seed=args.test_seed, test_dim=args.test_dim,
                           doc_format=args.format)
        write_report(summary_report(doc_id, result, config), args.report)
    return 0


def _cmd_evaluate(args) -> int:
    config = RunConfig(k=args.k, metric=args.metric, rate=args.rate,
                       test_seed=args.test_seed, test_dim=args.test_dim,
                       doc_format=args.format)
    corpus = load_corpus(args.corpus)
    report = evaluate_corpus(corpus, config)
    write_report(report, args.report)
    return 0


def _cmd_sweep(args) -> int:
    if args.k_min < 1 or args.k_max < args.k_min:
        print("clustsum: error: need 1 <= k-min <= k-max", file=sys.stderr)
        return USAGE_ERROR
    corpus = load_corpus(args.corpus)
    report = sweep_parameters(
        corpus,
        k_values=range(args.k_min, args.k_max + 1),
        metrics=args.metrics,
        rate=args.rate,
        test_seed=args.test_seed,
        test_dim=args.test_dim,
        doc_format=args.format,
    )
    report_path = Path(args.report)
    write_report(report, report_path)
    report_path.with_suffix(".tsv").write_text(render_sweep_tsv(report), encoding="utf-8")
    from .plots import render_sweep_figure

    render_sweep_figure(report, report_path.with_suffix(".png"))
    return 0


def _cmd_compare(args) -> int:
    result = compare_reports(load_report(args.report_a), load_report(args.report_b), args.metric)
    print(f"W={result.statistic:g}")
    print(f"n_effective={result.n_effective}")
    print(f"p_value={result.p_value:.6f}")
    return 0


_COMMANDS = {
    "summarize": _cmd_summarize,
    "evaluate": _cmd_evaluate,
    "sweep": _cmd_sweep,
    "compare": _cmd_compare,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    try:
        return _COMMANDS[args.command](args)
    except (InvalidKError, InvalidRateError) as exc:
        print(f"clustsum: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except ClustsumError as exc:
        print(f"clustsum: error: {exc}", file=sys.stderr)
        return DATA_ERROR
    except OSError as exc:
        print(f"clustsum: error: {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
