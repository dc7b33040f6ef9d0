"""Deterministic, language-neutral tokenization for the text task."""

from __future__ import annotations

import re

_TOKEN_RE = re.compile(r"[0-9a-z]+")


def tokenize(text: str) -> list[tuple[str, int]]:
    """Split *text* into lowercase alphanumeric runs with 0-based positions.

    Punctuation and whitespace separate tokens; empty input yields [].
    """
    return [(tok, i) for i, tok in enumerate(_TOKEN_RE.findall(text.lower()))]


def token_unit_id(token: str, position: int) -> str:
    """Unit identifier for one token occurrence, e.g. ``late@3``."""
    return f"{token}@{position}"


def join_tokens(tokens: list[str]) -> str:
    """Inverse-ish of tokenize: a space-joined stream that re-tokenizes to itself."""
    return " ".join(tokens)
