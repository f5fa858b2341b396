"""ROUGE-1 / ROUGE-2 scoring with clipped n-gram counts.

Normalization is deliberately minimal: the shared tokenizer, lowercasing,
and punctuation-token removal. No stemming, no stopword lists. N-grams
never cross sentence boundaries. Recall is the headline number; precision
and F1 ride along.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .textprep import RawDocument, is_word_token, split_sentences, tokenize


@dataclass(frozen=True)
class RougeScore:
    n: int
    recall: float
    precision: float
    f1: float


def extract_ngrams(text: str, n: int) -> Counter:
    """Multiset of lowercase word n-grams, built sentence by sentence."""
    if n not in (1, 2):
        raise ValueError(f"n must be 1 or 2, got {n}")
    counts: Counter = Counter()
    if not text.strip():
        return counts
    for sentence in split_sentences(RawDocument(doc_id="rouge", body_text=text)):
        words = [t.lower() for t in tokenize(sentence).tokens if is_word_token(t)]
        counts.update(tuple(words[i : i + n]) for i in range(len(words) - n + 1))
    return counts


def rouge_n(candidate: str, reference: str, n: int) -> RougeScore:
    """Clipped n-gram overlap between a candidate and a reference text."""
    cand = extract_ngrams(candidate, n)
    ref = extract_ngrams(reference, n)
    overlap = sum(min(count, ref[gram]) for gram, count in cand.items())
    cand_total = sum(cand.values())
    ref_total = sum(ref.values())
    recall = overlap / ref_total if ref_total else 0.0
    precision = overlap / cand_total if cand_total else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return RougeScore(n=n, recall=recall, precision=precision, f1=f1)
