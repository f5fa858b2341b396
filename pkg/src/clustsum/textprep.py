"""Document preparation: markup stripping, sentence splitting, tokenization.

Everything here is rule-based and deterministic. Sentences are tracked with
character spans into the normalized body text so that the original document
can always be reconstructed from its sentence records.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

from .errors import DegenerateSentenceError, EmptyDocumentError

# Maximal runs of Unicode letters/digits, otherwise one punctuation char per
# token. Underscore is not part of a word run.
TOKEN_PATTERN = re.compile(r"[^\W_]+|[^\w\s]|_")

_WORD_RUN = re.compile(r"[^\W_]+$")
_HEADING = re.compile(r"^#{1,6} ")
_SPACE_RUN = re.compile(r"[ \t]+")

# A trailing '.' never ends a sentence when the text up to it ends with one
# of these (preceded by a non-alphanumeric boundary).
PROTECTED_ABBREVIATIONS = (
    "Dr.",
    "Mr.",
    "Mrs.",
    "Ms.",
    "Prof.",
    "Fig.",
    "et al.",
    "e.g.",
    "i.e.",
    "vs.",
    "etc.",
)

_TERMINATORS = frozenset(".!?")

_CAPTION_PREFIXES = ("Figure ", "Table ", "[FIGURE]", "[TABLE]")


@dataclass(frozen=True)
class RawDocument:
    """Body text retained for summarization, after non-body material is gone."""

    doc_id: str
    body_text: str


@dataclass(frozen=True)
class SentenceRecord:
    """One sentence with its stable position and (optionally) its tokens."""

    index: int
    text: str
    char_span: tuple[int, int]
    tokens: tuple[str, ...] = field(default=())


def _normalize_newlines(raw: str) -> str:
    return raw.replace("\r\n", "\n").replace("\r", "\n")


def _collapse_spaces(text: str) -> str:
    return _SPACE_RUN.sub(" ", text)


def _is_all_caps_heading(line: str) -> bool:
    stripped = line.strip()
    if not stripped or stripped != stripped.upper() or stripped == stripped.lower():
        return False
    return len(TOKEN_PATTERN.findall(stripped)) <= 8


def _strip_markup(text: str) -> str:
    kept = []
    for line in text.split("\n"):
        if line.strip().casefold() == "references":
            break
        if _HEADING.match(line) or _is_all_caps_heading(line):
            continue
        if line.startswith(_CAPTION_PREFIXES):
            continue
        kept.append(line)
    return "\n".join(kept)


def preprocess_document(raw: str, format: str = "plain", doc_id: str = "doc") -> RawDocument:
    """Normalize whitespace and, for ``format="markup"``, drop non-body lines.

    Markup mode removes heading lines (``#`` prefixes or short all-caps
    lines), figure/table caption lines, and everything from a ``References``
    line to the end of the file.

    Raises:
        EmptyDocumentError: nothing but whitespace survives.
        ValueError: unknown format name.
    """
    if format not in ("plain", "markup"):
        raise ValueError(f"unknown format: {format!r}")
    text = _normalize_newlines(raw)
    if format == "markup":
        text = _strip_markup(text)
    text = _collapse_spaces(text)
    if not text.strip():
        raise EmptyDocumentError(f"document {doc_id!r} is empty after preprocessing")
    return RawDocument(doc_id=doc_id, body_text=text)


def _protected_at(text: str, dot_index: int) -> bool:
    """True when the '.' at dot_index closes a protected abbreviation."""
    end = dot_index + 1
    for abbr in PROTECTED_ABBREVIATIONS:
        start = end - len(abbr)
        if start < 0 or text[start:end] != abbr:
            continue
        if start == 0 or not text[start - 1].isalnum():
            return True
    return False


def _sentence_boundaries(text: str) -> list[int]:
    """Indices one past each sentence-ending terminator.

    A terminator ends a sentence when it sits outside any parenthesized span
    and is followed by whitespace and then an uppercase letter or a digit.
    """
    boundaries = []
    depth = 0
    n = len(text)
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth = max(depth - 1, 0)
        elif ch in _TERMINATORS and depth == 0:
            j = i + 1
            if j >= n or not text[j].isspace():
                continue
            while j < n and text[j].isspace():
                j += 1
            if j >= n or not (text[j].isupper() or text[j].isdigit()):
                continue
            if ch == "." and _protected_at(text, i):
                continue
            boundaries.append(i + 1)
    return boundaries


def split_sentences(doc: RawDocument) -> list[SentenceRecord]:
    """Split body text into ordered sentence records (tokens left empty)."""
    text = doc.body_text
    records = []
    cursor = 0
    for boundary in _sentence_boundaries(text) + [len(text)]:
        segment = text[cursor:boundary]
        offset = len(segment) - len(segment.lstrip())
        start = cursor + offset
        end = cursor + len(segment.rstrip())
        cursor = boundary
        if start >= end:
            continue
        records.append(
            SentenceRecord(index=len(records), text=text[start:end], char_span=(start, end))
        )
    return records


def tokenize(sentence: SentenceRecord) -> SentenceRecord:
    """Fill the sentence's token list; original case is preserved.

    Raises:
        DegenerateSentenceError: no tokens found (whitespace-only text).
    """
    tokens = tuple(TOKEN_PATTERN.findall(sentence.text))
    if not tokens:
        raise DegenerateSentenceError(f"sentence {sentence.index} has no tokens")
    return replace(sentence, tokens=tokens)


def is_word_token(token: str) -> bool:
    """True for letter/digit runs, false for punctuation tokens."""
    return bool(_WORD_RUN.match(token))


def prepare_document(raw: str, format: str = "plain", doc_id: str = "doc") -> tuple[RawDocument, list[SentenceRecord]]:
    """Full preparation pipeline: preprocess, split, tokenize.

    Sentences that tokenize to nothing are dropped and the survivors are
    reindexed from 0, so downstream stages can rely on one vector per index.
    """
    doc = preprocess_document(raw, format=format, doc_id=doc_id)
    kept = []
    for record in split_sentences(doc):
        try:
            tokenized = tokenize(record)
        except DegenerateSentenceError:
            continue
        kept.append(replace(tokenized, index=len(kept)))
    if not kept:
        raise EmptyDocumentError(f"document {doc_id!r} has no tokenizable sentences")
    return doc, kept
