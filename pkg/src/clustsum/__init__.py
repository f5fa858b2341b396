"""Extractive summarization by clustering sentence embedding vectors.

Pipeline: rule-based sentence preparation, one contextual vector per
sentence (from files, a test embedder, or a remote service),
average-linkage agglomeration into k clusters, proportional quota
allocation, and within-cluster centrality ranking. A harness evaluates
summaries with ROUGE-1/2 against reference abstracts, sweeps parameters,
and runs paired significance tests.
"""

from .clustering import (
    Cluster,
    Clustering,
    Metric,
    agglomerate,
    cosine_similarity,
    euclidean_distance,
    linkage_affinity,
)
from .embedding import (
    EmbeddingMeta,
    EmbeddingSet,
    fetch_embeddings,
    load_embeddings,
    mean_pool,
    test_embed,
    write_embeddings,
)
from .errors import (
    AlignmentError,
    ClustsumError,
    CorpusError,
    DegenerateSentenceError,
    DimensionMismatchError,
    EmbeddingFormatError,
    EmptyDocumentError,
    EmptyPoolError,
    InvalidDimensionError,
    InvalidKError,
    InvalidMemberError,
    InvalidRateError,
    ProtocolError,
    ReportError,
    TransportError,
)
from .harness import (
    CorpusEntry,
    RunConfig,
    compare_reports,
    evaluate_corpus,
    load_corpus,
    render_sweep_tsv,
    sweep_parameters,
    write_report,
)
from .rouge import RougeScore, extract_ngrams, rouge_n
from .summarize import (
    Allocation,
    SummaryBudget,
    SummaryResult,
    allocate_quota,
    build_summary,
    generate_summary,
    summary_budget,
    within_cluster_score,
)
from .textprep import (
    RawDocument,
    SentenceRecord,
    prepare_document,
    preprocess_document,
    split_sentences,
    tokenize,
)
from .wilcoxon import PairedTestResult, wilcoxon_signed_rank

__version__ = "0.1.0"
