from pathlib import Path

import numpy as np
import pytest

from clustsum.embedding import EmbeddingMeta, EmbeddingSet

DATA_DIR = Path(__file__).parent / "data"

# Deterministic word pools for synthetic corpus text. Sentences start
# uppercase and end with '. ' so the splitter sees clean boundaries.
_SUBJECTS = (
    "The enzyme", "A receptor", "The cohort", "Each sample", "The assay",
    "One transcript", "The protein", "A mutation", "The pathway", "Each patient",
)
_VERBS = (
    "modulates", "inhibits", "amplifies", "stabilizes", "degrades",
    "activates", "binds", "suppresses", "alters", "triggers",
)
_OBJECTS = (
    "the signaling cascade", "membrane transport", "the decay machinery",
    "glucose uptake", "the immune response", "chromatin structure",
    "vesicle formation", "the stress response", "lipid synthesis",
    "receptor turnover",
)


def vectors(rows, model="fixture", layer="last") -> EmbeddingSet:
    rows = np.asarray(rows, dtype=np.float64)
    meta = EmbeddingMeta(model=model, dim=rows.shape[1], layer=layer)
    return EmbeddingSet(doc_id="fixture", meta=meta, vectors=rows)


def synthetic_sentence(i: int) -> str:
    return (
        f"{_SUBJECTS[i % 10]} {_VERBS[(i * 3 + i // 10) % 10]} "
        f"{_OBJECTS[(i * 7 + i // 7) % 10]}."
    )


def make_corpus(root: Path, n_docs: int, sentences_per_doc: int) -> Path:
    """Synthetic corpus: n_docs directories with body.txt and abstract.txt."""
    for d in range(n_docs):
        doc_dir = root / f"doc{d:03d}"
        doc_dir.mkdir(parents=True)
        body = " ".join(
            synthetic_sentence(d * 31 + s) for s in range(sentences_per_doc)
        )
        abstract = " ".join(synthetic_sentence(d * 31 + s) for s in range(0, 3))
        (doc_dir / "body.txt").write_text(body + "\n", encoding="utf-8")
        (doc_dir / "abstract.txt").write_text(abstract + "\n", encoding="utf-8")
    return root


@pytest.fixture
def sweep_corpus(tmp_path):
    return make_corpus(tmp_path / "corpus", n_docs=10, sentences_per_doc=14)
