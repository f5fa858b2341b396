"""Sentence vector providers: embjsonl files, a deterministic test embedder,
and a client for a remote embedding service.

The engine never runs a neural model itself; vectors arrive either
precomputed in the embjsonl line format, from the hash-seeded test embedder,
or over HTTP. All three produce the same in-memory ``EmbeddingSet``.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np
import requests

from .errors import (
    AlignmentError,
    DimensionMismatchError,
    EmbeddingFormatError,
    EmptyPoolError,
    InvalidDimensionError,
    ProtocolError,
    TransportError,
)
from .textprep import SentenceRecord

_MASK64 = 0xFFFFFFFFFFFFFFFF
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


@dataclass(frozen=True)
class EmbeddingMeta:
    model: str
    dim: int
    layer: str
    granularity: str = "sentence"


@dataclass
class EmbeddingSet:
    """Per-document sentence vectors, aligned to sentence indices.

    ``vectors`` is a ``(num_sentences, dim)`` float64 matrix; row i is the
    vector of sentence i. ``token_counts`` records how many token vectors
    were pooled per sentence when known (0 = unknown).
    """

    doc_id: str
    meta: EmbeddingMeta
    vectors: np.ndarray
    token_counts: tuple[int, ...] | None = None

    def __post_init__(self):
        self.vectors = np.asarray(self.vectors, dtype=np.float64)
        if self.vectors.ndim != 2:
            raise EmbeddingFormatError("vectors must form a 2-D matrix")
        if self.vectors.shape[1] != self.meta.dim:
            raise DimensionMismatchError(
                f"vector dim {self.vectors.shape[1]} != meta.dim {self.meta.dim}"
            )
        if not np.all(np.isfinite(self.vectors)):
            raise EmbeddingFormatError("vectors contain non-finite values")

    @property
    def n_sentences(self) -> int:
        return self.vectors.shape[0]

    def vector(self, index: int) -> np.ndarray:
        return self.vectors[index]


def mean_pool(token_vectors: Sequence) -> np.ndarray:
    """Component-wise arithmetic mean of token vectors.

    Raises:
        EmptyPoolError: empty input list.
        DimensionMismatchError: vectors of unequal length.
    """
    if len(token_vectors) == 0:
        raise EmptyPoolError("cannot pool an empty list of vectors")
    rows = [np.asarray(v, dtype=np.float64) for v in token_vectors]
    dim = rows[0].shape
    for row in rows[1:]:
        if row.shape != dim:
            raise DimensionMismatchError(
                f"mixed vector dims in pool: {row.shape[0]} vs {dim[0]}"
            )
    return np.mean(np.stack(rows), axis=0)


# ---------------------------------------------------------------------------
# Deterministic test embedder
# ---------------------------------------------------------------------------


def fnv1a64(data: bytes) -> int:
    h = _FNV_OFFSET
    for byte in data:
        h = ((h ^ byte) * _FNV_PRIME) & _MASK64
    return h


class SplitMix64:
    """splitmix64 generator; bit-exact across platforms."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_unit(self) -> float:
        # u64 -> [-1, 1)
        return self.next_u64() / 2**63 - 1.0


def token_vector(token: str, dim: int, seed: int) -> np.ndarray:
    """Fixed pseudo-random vector for a token string.

    The token's UTF-8 bytes followed by the seed (8 little-endian bytes) are
    FNV-1a hashed; the hash seeds a splitmix64 stream that fills components
    0..dim-1.
    """
    gen = SplitMix64(fnv1a64(token.encode("utf-8") + seed.to_bytes(8, "little", signed=False)))
    return np.array([gen.next_unit() for _ in range(dim)], dtype=np.float64)


def test_embed(doc: Sequence[SentenceRecord], dim: int, seed: int) -> EmbeddingSet:
    """Deterministic stand-in embedder: mean of per-token hash vectors.

    Pure function of (token strings, dim, seed); unrelated sentences never
    influence each other.

    Raises:
        InvalidDimensionError: dim < 2.
    """
    if dim < 2:
        raise InvalidDimensionError(f"dim must be >= 2, got {dim}")
    if not doc:
        raise ValueError("cannot embed an empty document")
    seed = int(seed) & _MASK64
    cache: dict[str, np.ndarray] = {}
    rows = []
    counts = []
    for sentence in doc:
        vectors = []
        for token in sentence.tokens:
            if token not in cache:
                cache[token] = token_vector(token, dim, seed)
            vectors.append(cache[token])
        rows.append(mean_pool(vectors))
        counts.append(len(vectors))
    doc_id = "doc"
    meta = EmbeddingMeta(model="test-hash-embedder", dim=dim, layer="none")
    return EmbeddingSet(doc_id=doc_id, meta=meta, vectors=np.stack(rows), token_counts=tuple(counts))


# ---------------------------------------------------------------------------
# embjsonl file format
# ---------------------------------------------------------------------------

_HEADER_KEYS = ("format", "version", "doc_id", "model", "dim", "layer", "granularity", "num_sentences")


def _parse_vector(values, dim: int, where: str) -> np.ndarray:
    if not isinstance(values, list) or len(values) != dim:
        raise EmbeddingFormatError(f"{where}: vector must hold exactly {dim} floats")
    row = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(row)):
        raise EmbeddingFormatError(f"{where}: non-finite value")
    return row


def load_embeddings(path: str | Path, expected_sentences: int) -> EmbeddingSet:
    """Read an embjsonl file; token-granularity records are mean-pooled.

    Raises:
        EmbeddingFormatError: schema violation or non-finite value.
        AlignmentError: sentence count differs from expected_sentences.
    """
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise EmbeddingFormatError(f"{path}: empty file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise EmbeddingFormatError(f"{path}: bad header JSON: {exc}") from exc
    if not isinstance(header, dict) or any(key not in header for key in _HEADER_KEYS):
        raise EmbeddingFormatError(f"{path}: header must carry keys {_HEADER_KEYS}")
    if header["format"] != "embjsonl" or header["version"] != 1:
        raise EmbeddingFormatError(f"{path}: not an embjsonl v1 file")
    granularity = header["granularity"]
    if granularity not in ("sentence", "token"):
        raise EmbeddingFormatError(f"{path}: bad granularity {granularity!r}")
    dim = header["dim"]
    num = header["num_sentences"]
    if not isinstance(dim, int) or dim < 1 or not isinstance(num, int) or num < 0:
        raise EmbeddingFormatError(f"{path}: dim/num_sentences must be positive integers")
    if len(lines) - 1 != num:
        raise EmbeddingFormatError(
            f"{path}: header promises {num} records, file holds {len(lines) - 1}"
        )
    if num != expected_sentences:
        raise AlignmentError(
            f"{path}: {num} sentences in file, document has {expected_sentences}"
        )

    rows = []
    counts = []
    for lineno, line in enumerate(lines[1:], start=2):
        where = f"{path}:{lineno}"
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise EmbeddingFormatError(f"{where}: bad record JSON: {exc}") from exc
        if not isinstance(record, dict) or record.get("sentence_index") != lineno - 2:
            raise EmbeddingFormatError(f"{where}: records must follow sentence index order")
        if granularity == "sentence":
            if "vector" not in record or "num_tokens" not in record:
                raise EmbeddingFormatError(f"{where}: sentence record needs num_tokens and vector")
            rows.append(_parse_vector(record["vector"], dim, where))
            counts.append(int(record["num_tokens"]))
        else:
            tokens = record.get("tokens")
            if not isinstance(tokens, list) or not tokens:
                raise EmbeddingFormatError(f"{where}: token record needs a non-empty tokens list")
            rows.append(mean_pool([_parse_vector(tok, dim, where) for tok in tokens]))
            counts.append(len(tokens))

    meta = EmbeddingMeta(
        model=str(header["model"]), dim=dim, layer=str(header["layer"]), granularity="sentence"
    )
    vectors = np.stack(rows) if rows else np.zeros((0, dim))
    return EmbeddingSet(doc_id=str(header["doc_id"]), meta=meta, vectors=vectors,
                        token_counts=tuple(counts))


def format_float(value: float) -> str:
    """Decimal rendering with up to 9 significant digits."""
    return format(float(value), ".9g")


def write_embeddings(embeddings: EmbeddingSet, path: str | Path) -> None:
    """Write a sentence-granularity embjsonl file for an EmbeddingSet."""
    meta = embeddings.meta
    header = {
        "format": "embjsonl",
        "version": 1,
        "doc_id": embeddings.doc_id,
        "model": meta.model,
        "dim": meta.dim,
        "layer": meta.layer,
        "granularity": "sentence",
        "num_sentences": embeddings.n_sentences,
    }
    counts = embeddings.token_counts or (0,) * embeddings.n_sentences
    with Path(path).open("w", encoding="utf-8") as fh:
        fh.write(json.dumps(header, ensure_ascii=False, separators=(",", ":")) + "\n")
        for i in range(embeddings.n_sentences):
            rendered = ",".join(format_float(v) for v in embeddings.vectors[i])
            fh.write(
                f'{{"sentence_index":{i},"num_tokens":{counts[i]},"vector":[{rendered}]}}\n'
            )


# ---------------------------------------------------------------------------
# Remote embedding service
# ---------------------------------------------------------------------------


def fetch_embeddings(
    endpoint: str,
    doc: Sequence[SentenceRecord],
    model: str,
    max_attempts: int = 3,
    backoff: float = 0.5,
    timeout: float = 30.0,
) -> EmbeddingSet:
    """POST sentences to ``<endpoint>/embed`` and assemble the response.

    Network failures are retried with exponential backoff (``backoff``,
    doubling per attempt); malformed responses are not retried.

    Raises:
        TransportError: network failure after max_attempts.
        ProtocolError: malformed or incomplete response.
        DimensionMismatchError: server vectors of unequal length.
    """
    url = endpoint.rstrip("/") + "/embed"
    body = {
        "model": model,
        "sentences": [{"index": s.index, "tokens": list(s.tokens)} for s in doc],
    }
    response = None
    for attempt in range(max_attempts):
        try:
            response = requests.post(url, json=body, timeout=timeout)
        except requests.RequestException as exc:
            if attempt == max_attempts - 1:
                raise TransportError(f"embedding service unreachable: {exc}") from exc
            time.sleep(backoff * 2**attempt)
            continue
        if response.status_code >= 500:
            if attempt == max_attempts - 1:
                raise TransportError(f"embedding service error {response.status_code}")
            time.sleep(backoff * 2**attempt)
            continue
        break
    if response.status_code != 200:
        raise ProtocolError(f"embedding service returned status {response.status_code}")

    try:
        payload = response.json()
    except ValueError as exc:
        raise ProtocolError(f"response is not JSON: {exc}") from exc
    try:
        dim = int(payload["dim"])
        sentences = payload["sentences"]
        meta = EmbeddingMeta(
            model=str(payload["model"]), dim=dim, layer=str(payload["layer"])
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ProtocolError(f"response missing required fields: {exc}") from exc
    if not isinstance(sentences, list) or len(sentences) != len(doc):
        raise ProtocolError(
            f"expected {len(doc)} sentence vectors, got {len(sentences) if isinstance(sentences, list) else 'none'}"
        )

    by_index: dict[int, np.ndarray] = {}
    for item in sentences:
        try:
            idx = int(item["sentence_index"])
            values = item["vector"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ProtocolError(f"bad sentence record in response: {exc}") from exc
        if not isinstance(values, list):
            raise ProtocolError("sentence vector must be a list")
        if len(values) != dim:
            raise DimensionMismatchError(
                f"server sent a {len(values)}-dim vector, header says {dim}"
            )
        row = np.asarray(values, dtype=np.float64)
        if not np.all(np.isfinite(row)):
            raise ProtocolError("server sent non-finite values")
        by_index[idx] = row
    expected = {s.index for s in doc}
    if set(by_index) != expected:
        raise ProtocolError("response does not cover exactly the requested sentence indices")
    vectors = np.stack([by_index[s.index] for s in doc])
    return EmbeddingSet(doc_id="doc", meta=meta, vectors=vectors)
