"""Paired Wilcoxon signed-rank test.

Zero differences are dropped, absolute-value ties receive average ranks,
and W is the smaller of the positive and negative rank sums. The two-sided
p-value comes from the exact sign-assignment distribution up to 25 pairs
and from a normal approximation with continuity and tie corrections above
that.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

EXACT_LIMIT = 25


@dataclass(frozen=True)
class PairedTestResult:
    statistic: float
    p_value: float
    n_effective: int
    w_plus: float
    w_minus: float


def _average_ranks(values: Sequence[float]) -> list[float]:
    """Ranks 1..n with ties sharing the average of their rank positions."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        avg = (i + j + 2) / 2  # positions are 1-based
        for pos in range(i, j + 1):
            ranks[order[pos]] = avg
        i = j + 1
    return ranks


def _exact_two_sided_p(ranks: list[float], w: float) -> float:
    """P(min rank sum <= w) over all 2^n equally likely sign assignments.

    Ranks are multiples of 0.5, so doubling them makes every subset sum an
    exact integer; the distribution is counted with a subset-sum table,
    which reproduces full enumeration without walking all 2^n assignments.
    """
    scaled = [round(2 * r) for r in ranks]
    total = sum(scaled)
    counts = Counter({0: 1})
    for s in scaled:
        step = Counter()
        for value, count in counts.items():
            step[value] += count
            step[value + s] += count
        counts = step
    threshold_low = round(2 * w)  # 2*w is an exact integer-valued float
    threshold_high = total - threshold_low
    favorable = sum(
        count
        for value, count in counts.items()
        if value <= threshold_low or value >= threshold_high
    )
    return min(1.0, favorable / 2 ** len(ranks))


def _approx_two_sided_p(ranks: list[float], w: float) -> float:
    """Normal approximation with continuity correction and tie correction."""
    n = len(ranks)
    mean = n * (n + 1) / 4
    tie_sizes = Counter(ranks).values()
    variance = n * (n + 1) * (2 * n + 1) / 24 - sum(t**3 - t for t in tie_sizes) / 48
    if variance <= 0:
        return 1.0
    z = (w - mean + 0.5) / math.sqrt(variance)
    p = 2 * 0.5 * math.erfc(-z / math.sqrt(2))
    return min(1.0, p)


def wilcoxon_signed_rank(scores_a: Sequence[float], scores_b: Sequence[float]) -> PairedTestResult:
    """Two-sided paired test on per-document score differences.

    All differences zero is a defined result (p = 1.0, n_effective = 0),
    not an error.

    Raises:
        ValueError: unequal lengths or empty input.
    """
    if len(scores_a) != len(scores_b):
        raise ValueError(f"paired samples differ in length: {len(scores_a)} vs {len(scores_b)}")
    if len(scores_a) == 0:
        raise ValueError("need at least one pair")
    diffs = [a - b for a, b in zip(scores_a, scores_b) if a - b != 0.0]
    n = len(diffs)
    if n == 0:
        return PairedTestResult(statistic=0.0, p_value=1.0, n_effective=0, w_plus=0.0, w_minus=0.0)
    ranks = _average_ranks([abs(d) for d in diffs])
    w_plus = float(sum(rank for d, rank in zip(diffs, ranks) if d > 0))
    w_minus = float(sum(rank for d, rank in zip(diffs, ranks) if d < 0))
    w = min(w_plus, w_minus)
    if n <= EXACT_LIMIT:
        p = _exact_two_sided_p(ranks, w)
    else:
        p = _approx_two_sided_p(ranks, w)
    return PairedTestResult(statistic=w, p_value=p, n_effective=n, w_plus=w_plus, w_minus=w_minus)
