"""Corpus evaluation, parameter sweeps, and report files.

A corpus is a directory of per-document subdirectories, each holding
``body.txt`` and ``abstract.txt`` (the reference summary) and optionally
``embeddings.jsonl``. Reports are JSON with a fixed key order and
6-decimal score rendering so identical runs produce identical bytes;
sweeps additionally emit a TSV table and a figure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .clustering import Metric
from .embedding import EmbeddingSet, load_embeddings, test_embed
from .errors import ClustsumError, CorpusError, ReportError
from .rouge import rouge_n
from .summarize import build_summary
from .textprep import SentenceRecord, prepare_document
from .wilcoxon import PairedTestResult, wilcoxon_signed_rank


@dataclass(frozen=True)
class CorpusEntry:
    doc_id: str
    body_path: Path
    abstract_path: Path
    embeddings_path: Path | None = None


@dataclass(frozen=True)
class RunConfig:
    """One evaluation configuration; test_seed=None means per-document files."""

    k: int
    metric: Metric
    rate: float
    test_seed: int | None = None
    test_dim: int = 32
    doc_format: str = "markup"

    def embedding_source(self) -> dict:
        if self.test_seed is not None:
            return {"source": "test", "seed": self.test_seed, "dim": self.test_dim}
        return {"source": "files"}


@dataclass
class PreparedDoc:
    doc_id: str
    sentences: list[SentenceRecord] = field(repr=False, default_factory=list)
    embeddings: EmbeddingSet | None = field(repr=False, default=None)
    reference: str = ""


def load_corpus(root: str | Path) -> list[CorpusEntry]:
    """Enumerate document directories under root, sorted by doc_id.

    Raises:
        CorpusError: root missing/unreadable or no document directories.
    """
    root = Path(root)
    if not root.is_dir():
        raise CorpusError(f"corpus root {root} is not a directory")
    entries = []
    for child in sorted(root.iterdir(), key=lambda p: p.name):
        if not child.is_dir():
            continue
        body = child / "body.txt"
        abstract = child / "abstract.txt"
        if not body.exists() and not abstract.exists():
            continue
        embeddings = child / "embeddings.jsonl"
        entries.append(
            CorpusEntry(
                doc_id=child.name,
                body_path=body,
                abstract_path=abstract,
                embeddings_path=embeddings if embeddings.exists() else None,
            )
        )
    if not entries:
        raise CorpusError(f"corpus root {root} holds no document directories")
    return entries


def _prepare_entry(entry: CorpusEntry, config: RunConfig) -> PreparedDoc:
    if not entry.body_path.is_file():
        raise CorpusError(f"missing body.txt for {entry.doc_id}")
    if not entry.abstract_path.is_file():
        raise CorpusError(f"missing abstract.txt for {entry.doc_id}")
    body = entry.body_path.read_text(encoding="utf-8")
    reference = entry.abstract_path.read_text(encoding="utf-8")
    if not reference.strip():
        raise CorpusError(f"empty abstract for {entry.doc_id}")
    _, sentences = prepare_document(body, format=config.doc_format, doc_id=entry.doc_id)
    if config.test_seed is not None:
        embeddings = test_embed(sentences, dim=config.test_dim, seed=config.test_seed)
    elif entry.embeddings_path is not None:
        embeddings = load_embeddings(entry.embeddings_path, expected_sentences=len(sentences))
    else:
        raise CorpusError(f"no embedding source for {entry.doc_id}")
    embeddings.doc_id = entry.doc_id
    return PreparedDoc(
        doc_id=entry.doc_id, sentences=sentences, embeddings=embeddings, reference=reference
    )


def _prepare_corpus(
    corpus: Sequence[CorpusEntry], config: RunConfig
) -> tuple[list[PreparedDoc], list[dict]]:
    prepared = []
    errors = []
    for entry in corpus:
        try:
            prepared.append(_prepare_entry(entry, config))
        except (ClustsumError, OSError) as exc:
            errors.append({"doc_id": entry.doc_id, "error": str(exc)})
    return prepared, errors


def _score_entry(score) -> dict:
    return {
        "recall": round(score.recall, 6),
        "precision": round(score.precision, 6),
        "f1": round(score.f1, 6),
    }


def _mean(values: list[float]) -> float | None:
    if not values:
        return None
    return round(sum(values) / len(values), 6)


def _evaluate_prepared(
    prepared: Sequence[PreparedDoc], k: int, metric: Metric, rate: float
) -> tuple[list[dict], list[dict]]:
    """Per-document report rows plus skip records for documents shorter than k."""
    documents = []
    skipped = []
    for doc in prepared:
        if k > len(doc.sentences):
            skipped.append(
                {
                    "doc_id": doc.doc_id,
                    "error": f"k={k} exceeds sentence count {len(doc.sentences)}",
                }
            )
            continue
        result = build_summary(doc.sentences, doc.embeddings, k, metric, rate)
        r1 = rouge_n(result.text, doc.reference, 1)
        r2 = rouge_n(result.text, doc.reference, 2)
        documents.append(
            {
                "doc_id": doc.doc_id,
                "r1": _score_entry(r1),
                "r2": _score_entry(r2),
                "selected": list(result.selected),
                "quotas": list(result.allocation.quotas),
            }
        )
    return documents, skipped


def evaluate_corpus(corpus: Sequence[CorpusEntry], config: RunConfig) -> dict:
    """Run the full pipeline over a corpus and assemble the report.

    Per-document failures (unreadable files, empty bodies, too few
    sentences for k) are recorded under ``errors`` and excluded from the
    means; they never abort the run.
    """
    prepared, errors = _prepare_corpus(corpus, config)
    documents, skipped = _evaluate_prepared(prepared, config.k, config.metric, config.rate)
    errors = errors + skipped
    return {
        "config": {
            "k": config.k,
            "metric": config.metric.value,
            "rate": config.rate,
            "format": config.doc_format,
            "embedding": config.embedding_source(),
        },
        "documents": documents,
        "errors": errors,
        "means": {
            "r1_recall": _mean([d["r1"]["recall"] for d in documents]),
            "r2_recall": _mean([d["r2"]["recall"] for d in documents]),
        },
    }


def sweep_parameters(
    corpus: Sequence[CorpusEntry],
    k_values: Sequence[int],
    metrics: Sequence[Metric],
    rate: float,
    test_seed: int | None = None,
    test_dim: int = 32,
    doc_format: str = "markup",
) -> dict:
    """Evaluate every (k, metric) cell; documents are prepared once.

    A document shorter than a cell's k is skipped for that cell and the
    skip is recorded; a cell with no scored documents gets null means.
    """
    if not k_values:
        raise ValueError("k_values must be non-empty")
    base = RunConfig(
        k=0, metric=metrics[0], rate=rate,
        test_seed=test_seed, test_dim=test_dim, doc_format=doc_format,
    )
    prepared, errors = _prepare_corpus(corpus, base)
    cells = []
    for k in sorted(k_values):
        for metric in metrics:
            documents, skipped = _evaluate_prepared(prepared, k, metric, rate)
            cells.append(
                {
                    "k": k,
                    "metric": metric.value,
                    "documents": [
                        {
                            "doc_id": d["doc_id"],
                            "r1_recall": d["r1"]["recall"],
                            "r2_recall": d["r2"]["recall"],
                        }
                        for d in documents
                    ],
                    "skipped": skipped,
                    "means": {
                        "r1_recall": _mean([d["r1"]["recall"] for d in documents]),
                        "r2_recall": _mean([d["r2"]["recall"] for d in documents]),
                    },
                }
            )
    return {
        "config": {
            "k_values": sorted(k_values),
            "metrics": [m.value for m in metrics],
            "rate": rate,
            "format": doc_format,
            "embedding": {"source": "test", "seed": test_seed, "dim": test_dim}
            if test_seed is not None
            else {"source": "files"},
        },
        "cells": cells,
        "errors": errors,
    }


def render_sweep_tsv(report: dict) -> str:
    """Tabular view of a sweep report: one row per k, metric columns."""
    metrics = report["config"]["metrics"]
    header = ["k"]
    for metric in metrics:
        header.extend([f"{metric}_r1", f"{metric}_r2"])
    by_cell = {(cell["k"], cell["metric"]): cell["means"] for cell in report["cells"]}
    lines = ["\t".join(header)]
    for k in report["config"]["k_values"]:
        row = [str(k)]
        for metric in metrics:
            means = by_cell.get((k, metric), {})
            for key in ("r1_recall", "r2_recall"):
                value = means.get(key)
                row.append("NA" if value is None else f"{value:.6f}")
        lines.append("\t".join(row))
    return "\n".join(lines) + "\n"


def summary_report(doc_id: str, result, config: RunConfig) -> dict:
    """Sidecar report for a single-document summarize run."""
    return {
        "config": {
            "k": config.k,
            "metric": config.metric.value,
            "rate": config.rate,
            "format": config.doc_format,
            "embedding": config.embedding_source(),
        },
        "doc_id": doc_id,
        "selected": list(result.selected),
        "quotas": list(result.allocation.quotas),
        "scores": [round(s, 6) for s in result.scores],
    }


def write_report(report: dict, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(report, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )


def load_report(path: str | Path) -> dict:
    path = Path(path)
    try:
        report = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ReportError(f"cannot read report {path}: {exc}") from exc
    if not isinstance(report, dict) or "documents" not in report:
        raise ReportError(f"{path} is not an evaluation report")
    return report


def compare_reports(report_a: dict, report_b: dict, metric_key: str) -> PairedTestResult:
    """Paired significance test between two evaluation reports.

    Documents are paired by doc_id over the recall values of the chosen
    ROUGE variant ("r1" or "r2"); both reports must cover the same set.

    Raises:
        ReportError: differing document sets or missing score fields.
    """
    if metric_key not in ("r1", "r2"):
        raise ValueError(f"metric_key must be 'r1' or 'r2', got {metric_key!r}")

    def recalls(report: dict) -> dict[str, float]:
        try:
            return {d["doc_id"]: d[metric_key]["recall"] for d in report["documents"]}
        except (KeyError, TypeError) as exc:
            raise ReportError(f"report lacks per-document {metric_key} recalls") from exc

    a = recalls(report_a)
    b = recalls(report_b)
    if set(a) != set(b):
        raise ReportError("reports cover different document sets")
    if not a:
        raise ReportError("reports contain no scored documents")
    doc_ids = sorted(a)
    return wilcoxon_signed_rank([a[d] for d in doc_ids], [b[d] for d in doc_ids])
