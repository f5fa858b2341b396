"""Sentence preparation rules, replicated from the summarization engine.

The exporter must count and delimit sentences exactly like the consumer of
its files, so these rules are kept bit-identical and are locked down by a
shared test-vector file (tests/data/textprep_vectors.json in the engine
repository).
"""

from __future__ import annotations

import re

TOKEN_PATTERN = re.compile(r"[^\W_]+|[^\w\s]|_")

_HEADING = re.compile(r"^#{1,6} ")
_SPACE_RUN = re.compile(r"[ \t]+")

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


class EmptyBodyError(ValueError):
    """Nothing but whitespace survives preprocessing."""


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


def preprocess(raw: str, format: str = "markup") -> str:
    if format not in ("plain", "markup"):
        raise ValueError(f"unknown format: {format!r}")
    text = raw.replace("\r\n", "\n").replace("\r", "\n")
    if format == "markup":
        text = _strip_markup(text)
    text = _SPACE_RUN.sub(" ", text)
    if not text.strip():
        raise EmptyBodyError("document is empty after preprocessing")
    return text


def _protected_at(text: str, dot_index: int) -> bool:
    end = dot_index + 1
    for abbr in PROTECTED_ABBREVIATIONS:
        start = end - len(abbr)
        if start < 0 or text[start:end] != abbr:
            continue
        if start == 0 or not text[start - 1].isalnum():
            return True
    return False


def split_sentences(text: str) -> list[str]:
    """Sentence texts in document order, same boundaries as the engine."""
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
    sentences = []
    cursor = 0
    for boundary in boundaries + [n]:
        segment = text[cursor:boundary].strip()
        cursor = boundary
        if segment:
            sentences.append(segment)
    return sentences


def tokenize(sentence: str) -> list[str]:
    return TOKEN_PATTERN.findall(sentence)


def prepare(raw: str, format: str = "markup") -> tuple[str, list[str], list[list[str]]]:
    """Body text, sentence texts, and token lists; tokenless sentences dropped."""
    body = preprocess(raw, format=format)
    texts = []
    tokens = []
    for sentence in split_sentences(body):
        sentence_tokens = tokenize(sentence)
        if not sentence_tokens:
            continue
        texts.append(sentence)
        tokens.append(sentence_tokens)
    if not texts:
        raise EmptyBodyError("document has no tokenizable sentences")
    return body, texts, tokens
