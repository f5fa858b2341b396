"""Transformer hidden-state embedding exporter for the embjsonl format."""

from .exporter import ExportConfig, export_embeddings
from .segment import prepare, split_sentences, tokenize

__version__ = "0.1.0"
