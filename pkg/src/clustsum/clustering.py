"""Sentence similarity metrics and average-linkage agglomerative clustering.

The merge order is part of the contract: linkage means are computed over
cross pairs in (ascending first-cluster member, ascending second-cluster
member) order with pairwise tree summation, and ties on the best affinity
are broken toward the pair with the smallest member indices. Results are
reproducible bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .embedding import EmbeddingSet
from .errors import DimensionMismatchError, InvalidKError


class Metric(str, Enum):
    """Cosine is a similarity (higher = closer); Euclidean a distance."""

    COSINE = "cosine"
    EUCLIDEAN = "euclidean"

    @property
    def higher_is_closer(self) -> bool:
        return self is Metric.COSINE


@dataclass(frozen=True)
class Cluster:
    members: tuple[int, ...]

    def __post_init__(self):
        if not self.members:
            raise ValueError("cluster must be non-empty")
        if list(self.members) != sorted(set(self.members)):
            raise ValueError("cluster members must be strictly increasing")

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Clustering:
    """A partition of sentence indices 0..n-1 into k clusters."""

    clusters: tuple[Cluster, ...]
    k: int
    metric: Metric

    def __post_init__(self):
        if len(self.clusters) != self.k:
            raise ValueError(f"expected {self.k} clusters, got {len(self.clusters)}")
        seen: set[int] = set()
        for cluster in self.clusters:
            overlap = seen.intersection(cluster.members)
            if overlap:
                raise ValueError(f"clusters overlap on indices {sorted(overlap)}")
            seen.update(cluster.members)
        if seen != set(range(len(seen))) or not seen:
            raise ValueError("clusters must partition 0..n-1")
        mins = [c.members[0] for c in self.clusters]
        if mins != sorted(mins):
            raise ValueError("clusters must be listed by smallest member index")

    @property
    def n_sentences(self) -> int:
        return sum(len(c) for c in self.clusters)

    def assignments(self) -> list[int]:
        """Cluster position for each sentence index."""
        out = [0] * self.n_sentences
        for pos, cluster in enumerate(self.clusters):
            for member in cluster.members:
                out[member] = pos
        return out


def _check_dims(r: np.ndarray, q: np.ndarray) -> None:
    if r.shape != q.shape:
        raise DimensionMismatchError(f"vector dims differ: {r.shape[0]} vs {q.shape[0]}")


def cosine_similarity(r, q) -> float:
    """Dot product over the norm product; 0.0 when either norm is zero."""
    r = np.asarray(r, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    _check_dims(r, q)
    norm_r = float(np.linalg.norm(r))
    norm_q = float(np.linalg.norm(q))
    if norm_r == 0.0 or norm_q == 0.0:
        return 0.0
    return float(np.dot(r, q)) / (norm_r * norm_q)


def euclidean_distance(r, q) -> float:
    r = np.asarray(r, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    _check_dims(r, q)
    return float(np.sqrt(np.sum((r - q) ** 2)))


def pair_value(r, q, metric: Metric) -> float:
    if metric is Metric.COSINE:
        return cosine_similarity(r, q)
    return euclidean_distance(r, q)


def pairwise_sum(values: list[float]) -> float:
    """Tree summation: split at len//2, recurse. Fixed order, reproducible."""
    n = len(values)
    if n == 0:
        return 0.0
    if n == 1:
        return values[0]
    mid = n // 2
    return pairwise_sum(values[:mid]) + pairwise_sum(values[mid:])


def pair_matrix(vectors: EmbeddingSet, metric: Metric) -> np.ndarray:
    """Symmetric matrix of the pairwise metric over all sentences."""
    n = vectors.n_sentences
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            out[i, j] = out[j, i] = pair_value(vectors.vector(i), vectors.vector(j), metric)
    return out


def linkage_affinity(a: Cluster, b: Cluster, vectors: EmbeddingSet, metric: Metric) -> float:
    """Mean pairwise metric value over all cross pairs of two clusters."""
    values = [
        pair_value(vectors.vector(i), vectors.vector(j), metric)
        for i in a.members
        for j in b.members
    ]
    return pairwise_sum(values) / len(values)


def _cross_mean(matrix: np.ndarray, a: tuple[int, ...], b: tuple[int, ...]) -> float:
    values = [matrix[i, j] for i in a for j in b]
    return pairwise_sum(values) / len(values)


def agglomerate(vectors: EmbeddingSet, k: int, metric: Metric) -> Clustering:
    """Merge singletons bottom-up until exactly k clusters remain.

    Each step merges the pair with the best mean cross-pair value (highest
    for cosine, lowest for Euclidean); exact-affinity ties go to the pair
    whose sorted pair of smallest member indices is least.

    Raises:
        InvalidKError: k outside [1, number of sentences].
    """
    n = vectors.n_sentences
    if not 1 <= k <= n:
        raise InvalidKError(f"k={k} outside [1, {n}]")
    matrix = pair_matrix(vectors, metric)
    clusters: list[tuple[int, ...]] = [(i,) for i in range(n)]
    while len(clusters) > k:
        best_aff = None
        best_key = None
        best_pair = None
        for ai in range(len(clusters)):
            for bi in range(ai + 1, len(clusters)):
                aff = _cross_mean(matrix, clusters[ai], clusters[bi])
                lo, hi = sorted((clusters[ai][0], clusters[bi][0]))
                key = (lo, hi)
                if best_aff is None:
                    better = True
                elif aff == best_aff:
                    better = key < best_key
                elif metric.higher_is_closer:
                    better = aff > best_aff
                else:
                    better = aff < best_aff
                if better:
                    best_aff, best_key, best_pair = aff, key, (ai, bi)
        ai, bi = best_pair
        merged = tuple(sorted(clusters[ai] + clusters[bi]))
        clusters = [c for idx, c in enumerate(clusters) if idx not in (ai, bi)]
        clusters.append(merged)
    clusters.sort(key=lambda c: c[0])
    return Clustering(clusters=tuple(Cluster(members=c) for c in clusters), k=k, metric=metric)
