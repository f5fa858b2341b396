"""Exception hierarchy shared across the package."""


class ClustsumError(Exception):
    """Base class for all errors raised by this package."""


class EmptyDocumentError(ClustsumError):
    """Document body is empty after preprocessing."""


class DegenerateSentenceError(ClustsumError):
    """Sentence produced zero tokens; caller should drop it and reindex."""


class EmptyPoolError(ClustsumError):
    """Mean pooling was asked to average an empty list of vectors."""


class DimensionMismatchError(ClustsumError):
    """Vectors of unequal dimension were combined or compared."""


class InvalidDimensionError(ClustsumError):
    """Requested embedding dimension is too small."""


class EmbeddingFormatError(ClustsumError):
    """Embedding file violates the header/record schema or holds non-finite values."""


class AlignmentError(ClustsumError):
    """Embedding file sentence count does not match the document."""


class TransportError(ClustsumError):
    """Network failure talking to the embedding service (after retries)."""


class ProtocolError(ClustsumError):
    """Embedding service sent a malformed or unexpected response."""


class InvalidKError(ClustsumError):
    """Cluster count k outside [1, number of sentences]."""


class InvalidRateError(ClustsumError):
    """Compression rate outside (0, 1]."""


class InvalidMemberError(ClustsumError):
    """Sentence index is not a member of the cluster being scored."""


class CorpusError(ClustsumError):
    """Corpus directory is unreadable or contains no documents."""


class ReportError(ClustsumError):
    """Report file is malformed or reports are not comparable."""
