"""Run a bidirectional transformer over document sentences and write
embjsonl embedding files.

Each sentence is encoded on its own (its sentence is its context window).
Sequence start/end marker tokens are excluded from pooling; the sentence
vector is the plain mean of the remaining subword vectors, so a
token-granularity export pools to the same vector the sentence-granularity
export records.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch
from transformers import AutoModel, AutoTokenizer

from .segment import prepare

LAYER_CHOICES = ("last", "mean_last4")


@dataclass(frozen=True)
class ExportConfig:
    model_name: str
    layer: str = "last"
    granularity: str = "sentence"
    batch_size: int = 8
    doc_format: str = "markup"

    def __post_init__(self):
        if self.layer not in LAYER_CHOICES:
            raise ValueError(f"layer must be one of {LAYER_CHOICES}")
        if self.granularity not in ("sentence", "token"):
            raise ValueError("granularity must be 'sentence' or 'token'")
        if self.batch_size < 1:
            raise ValueError("batch_size must be positive")


def format_float(value: float) -> str:
    return format(float(value), ".9g")


def _max_input_length(tokenizer, model) -> int:
    limit = getattr(tokenizer, "model_max_length", None)
    positions = getattr(model.config, "max_position_embeddings", None)
    candidates = [c for c in (limit, positions) if isinstance(c, int) and 0 < c < 10**6]
    return min(candidates) if candidates else 512


@dataclass
class SentenceVectors:
    token_vectors: np.ndarray  # (num_subwords, dim), special tokens excluded
    truncated: bool

    @property
    def sentence_vector(self) -> np.ndarray:
        return self.token_vectors.mean(axis=0)


def encode_sentences(texts, tokenizer, model, layer: str, batch_size: int) -> list[SentenceVectors]:
    """Hidden-state vectors per sentence, specials stripped, order preserved."""
    device = next(model.parameters()).device
    max_length = _max_input_length(tokenizer, model)
    results: list[SentenceVectors] = []
    need_all_layers = layer == "mean_last4"
    with torch.no_grad():
        for start in range(0, len(texts), batch_size):
            batch = list(texts[start : start + batch_size])
            full_lengths = [
                len(tokenizer(t, truncation=False)["input_ids"]) for t in batch
            ]
            encoded = tokenizer(
                batch,
                return_tensors="pt",
                padding=True,
                truncation=True,
                max_length=max_length,
                return_special_tokens_mask=True,
            )
            special_mask = encoded.pop("special_tokens_mask")
            encoded = {k: v.to(device) for k, v in encoded.items()}
            outputs = model(**encoded, output_hidden_states=need_all_layers)
            if need_all_layers:
                # mean over the last (up to) four transformer layers; index 0
                # of hidden_states is the embedding layer and is skipped
                layers = torch.stack(outputs.hidden_states[1:][-4:])
                hidden = layers.mean(dim=0)
            else:
                hidden = outputs.last_hidden_state
            attention = encoded["attention_mask"].cpu()
            for row in range(len(batch)):
                keep = (attention[row] == 1) & (special_mask[row] == 0)
                vectors = hidden[row][keep].cpu().numpy().astype(np.float64)
                if vectors.shape[0] == 0:
                    # sentence collapsed to specials only; fall back to all
                    # attended positions so every sentence gets a vector
                    keep = attention[row] == 1
                    vectors = hidden[row][keep].cpu().numpy().astype(np.float64)
                results.append(
                    SentenceVectors(
                        token_vectors=vectors,
                        truncated=full_lengths[row] > int(attention[row].sum()),
                    )
                )
    return results


def _render_record(index: int, sentence: SentenceVectors, granularity: str) -> str:
    truncated = ',"truncated":true' if sentence.truncated else ""
    if granularity == "sentence":
        rendered = ",".join(format_float(v) for v in sentence.sentence_vector)
        return (
            f'{{"sentence_index":{index},"num_tokens":{sentence.token_vectors.shape[0]},'
            f'"vector":[{rendered}]{truncated}}}'
        )
    rows = ",".join(
        "[" + ",".join(format_float(v) for v in row) + "]"
        for row in sentence.token_vectors
    )
    return f'{{"sentence_index":{index},"tokens":[{rows}]{truncated}}}'


def export_embeddings(body_file: str | Path, config: ExportConfig, out_file: str | Path) -> int:
    """Segment the body, run the model, write the embjsonl file.

    Returns the number of sentences written.
    """
    raw = Path(body_file).read_text(encoding="utf-8")
    _, texts, _ = prepare(raw, format=config.doc_format)

    tokenizer = AutoTokenizer.from_pretrained(config.model_name)
    model = AutoModel.from_pretrained(config.model_name)
    model.eval()

    sentences = encode_sentences(texts, tokenizer, model, config.layer, config.batch_size)
    dim = int(model.config.hidden_size)

    header = json.dumps(
        {
            "format": "embjsonl",
            "version": 1,
            "doc_id": Path(body_file).stem,
            "model": config.model_name,
            "dim": dim,
            "layer": config.layer,
            "granularity": config.granularity,
            "num_sentences": len(sentences),
        },
        ensure_ascii=False,
        separators=(",", ":"),
    )
    with Path(out_file).open("w", encoding="utf-8") as fh:
        fh.write(header + "\n")
        for index, sentence in enumerate(sentences):
            assert sentence.token_vectors.shape[1] == dim
            fh.write(_render_record(index, sentence, config.granularity) + "\n")
    return len(sentences)
