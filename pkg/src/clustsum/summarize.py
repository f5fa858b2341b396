"""Turn a clustering into a summary: budget, per-cluster quotas, scoring.

Clusters contribute sentences in proportion to their size; the fractional
quotas are resolved by largest-remainder apportionment. Within a cluster,
sentences are ranked by their mean similarity to the other members and the
top of the ranking fills the quota.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .clustering import (
    Cluster,
    Clustering,
    Metric,
    agglomerate,
    cosine_similarity,
    euclidean_distance,
)
from .embedding import EmbeddingSet
from .errors import InvalidMemberError, InvalidRateError
from .textprep import SentenceRecord


@dataclass(frozen=True)
class SummaryBudget:
    n_total: int
    compression_rate: float


@dataclass(frozen=True)
class Allocation:
    quotas: tuple[int, ...]


@dataclass(frozen=True)
class SummaryResult:
    """Selected sentence indices (document order) plus scoring provenance."""

    selected: tuple[int, ...]
    scores: tuple[float, ...]
    allocation: Allocation
    k: int
    metric: Metric
    compression_rate: float | None
    text: str


def round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def summary_budget(doc_size: int, compression_rate: float) -> SummaryBudget:
    """Target summary size: round half up, floored at 1, capped at doc_size.

    Raises:
        InvalidRateError: rate outside (0, 1].
    """
    if doc_size < 1:
        raise ValueError(f"doc_size must be >= 1, got {doc_size}")
    if not 0.0 < compression_rate <= 1.0:
        raise InvalidRateError(f"compression rate {compression_rate} outside (0, 1]")
    n_total = round_half_up(compression_rate * doc_size)
    n_total = max(1, min(n_total, doc_size))
    return SummaryBudget(n_total=n_total, compression_rate=compression_rate)


def allocate_quota(clustering: Clustering, budget: SummaryBudget) -> Allocation:
    """Split the budget across clusters in proportion to their sizes.

    Largest-remainder apportionment: floors first, then one extra seat per
    cluster by descending fractional remainder (remainder ties favor the
    larger cluster, then the earlier list position). A cluster never
    receives more than its size; overflow seats move down the same order.
    """
    sizes = [len(c) for c in clustering.clusters]
    doc_size = sum(sizes)
    n_total = budget.n_total
    raw = [n_total * size / doc_size for size in sizes]
    quotas = [math.floor(q) for q in raw]
    remainders = [q - math.floor(q) for q in raw]
    seats = n_total - sum(quotas)
    order = sorted(range(len(sizes)), key=lambda i: (-remainders[i], -sizes[i], i))
    while seats > 0:
        progressed = False
        for i in order:
            if seats == 0:
                break
            if quotas[i] < sizes[i]:
                quotas[i] += 1
                seats -= 1
                progressed = True
        if not progressed:
            raise AssertionError("quota seats exceed total cluster capacity")
    return Allocation(quotas=tuple(quotas))


def within_cluster_score(
    sentence_index: int, cluster: Cluster, vectors: EmbeddingSet, metric: Metric
) -> float:
    """Mean similarity of a sentence to the other members of its cluster.

    The sum over the other members is divided by the full cluster size; with
    the Euclidean metric the negated distance serves as the similarity, so a
    higher score always means a more central sentence. Singletons score 0.

    Raises:
        InvalidMemberError: sentence_index not in the cluster.
    """
    if sentence_index not in cluster.members:
        raise InvalidMemberError(f"sentence {sentence_index} not in cluster {cluster.members}")
    total = 0.0
    for other in cluster.members:
        if other == sentence_index:
            continue
        if metric is Metric.COSINE:
            total += cosine_similarity(vectors.vector(sentence_index), vectors.vector(other))
        else:
            total += -euclidean_distance(vectors.vector(sentence_index), vectors.vector(other))
    return total / len(cluster.members)


def generate_summary(
    doc: Sequence[SentenceRecord],
    clustering: Clustering,
    allocation: Allocation,
    vectors: EmbeddingSet,
    compression_rate: float | None = None,
) -> SummaryResult:
    """Pick the top-scored sentences per cluster and restore document order.

    Within a cluster, ties on the score go to the smaller sentence index.
    The summary text joins the selected sentences with single spaces and
    ends with a newline.
    """
    scores = [0.0] * len(doc)
    selected: list[int] = []
    for cluster, quota in zip(clustering.clusters, allocation.quotas):
        ranked = []
        for member in cluster.members:
            wcs = within_cluster_score(member, cluster, vectors, clustering.metric)
            scores[member] = wcs
            ranked.append((member, wcs))
        ranked.sort(key=lambda pair: (-pair[1], pair[0]))
        selected.extend(member for member, _ in ranked[:quota])
    selected.sort()
    text = " ".join(doc[i].text for i in selected) + "\n"
    return SummaryResult(
        selected=tuple(selected),
        scores=tuple(scores),
        allocation=allocation,
        k=clustering.k,
        metric=clustering.metric,
        compression_rate=compression_rate,
        text=text,
    )


def build_summary(
    doc: Sequence[SentenceRecord],
    vectors: EmbeddingSet,
    k: int,
    metric: Metric,
    rate: float,
) -> SummaryResult:
    """Full selection pipeline: cluster, allocate, score, select."""
    budget = summary_budget(len(doc), rate)
    clustering = agglomerate(vectors, k, metric)
    allocation = allocate_quota(clustering, budget)
    return generate_summary(doc, clustering, allocation, vectors, compression_rate=rate)
