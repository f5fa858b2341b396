from pathlib import Path

import pytest
import torch
from transformers import BertConfig, BertModel, BertTokenizer

ENGINE_DATA = Path(__file__).resolve().parents[2] / "tests" / "data"

_VOCAB = [
    "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
    "the", "a", "an", "and", "of", "in", "to", "was", "were", "is",
    "enzyme", "receptor", "binds", "blocks", "pathway", "cell", "cells",
    "assay", "ran", "twice", "controls", "stayed", "inert", "effect",
    "alpha", "beta", "gamma", "protein", "bound", "strongly", "weakly",
    "sample", "samples", "trial", "cohort", "measured", "results",
    "showed", "strong", "binding", "final", "analysis", "confirmed",
    "replication", "held", "mice", "daily", "##s", "##ly", "##ing",
    ".", ",", "!", "?", "(", ")", "14", "12",
]


@pytest.fixture(scope="session")
def mini_bert(tmp_path_factory):
    """A full BERT architecture with base-model width but tiny depth and
    vocabulary, randomly initialized from a fixed seed. Deterministic,
    offline, fast on CPU; hidden size matches the base-model export dim."""
    model_dir = tmp_path_factory.mktemp("mini_bert")
    vocab_file = model_dir / "vocab.txt"
    vocab_file.write_text("\n".join(_VOCAB) + "\n", encoding="utf-8")

    torch.manual_seed(20240811)
    config = BertConfig(
        vocab_size=len(_VOCAB),
        hidden_size=768,
        num_hidden_layers=2,
        num_attention_heads=4,
        intermediate_size=128,
        max_position_embeddings=48,
    )
    model = BertModel(config)
    model.eval()
    model.save_pretrained(model_dir)
    tokenizer = BertTokenizer(str(vocab_file), do_lower_case=True)
    tokenizer.save_pretrained(model_dir)
    return model_dir
