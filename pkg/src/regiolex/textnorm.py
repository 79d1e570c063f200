"""Tweet-style text normalization: tokenization plus token cleanup.

The pipeline mirrors common social-media preprocessing: whitespace chunks
that are hashtags, mentions or URLs are discarded whole; the rest is split
on punctuation boundaries; surviving tokens are downcased and elongated
vowels are trimmed ("woaaaaaa" -> "woaaa").
"""

from __future__ import annotations

import re
import unicodedata

# Runs of >3 identical vowels (incl. acute-accented Spanish vowels) collapse
# to exactly 3. Applied after downcasing, so only lowercase forms listed.
_VOWEL_RUN = re.compile(r"([aeiouáéíóú])\1{3,}")

_URL = re.compile(r"(?i)^(?:https?://|www\.)|://")


def _is_token_char(ch: str) -> bool:
    # Token characters are anything that is neither whitespace nor
    # punctuation. Symbols (emoji, $, <3 hearts) survive on purpose.
    if ch.isspace():
        return False
    return not unicodedata.category(ch).startswith("P")


def tokenize(text: str) -> list[str]:
    """Split text into raw word tokens.

    Whitespace chunks starting with '#' or '@' and URL-shaped chunks are
    dropped entirely; the remainder is split on punctuation boundaries.
    Punctuation-only chunks yield nothing. Case is preserved here; use
    normalize_token for downcasing.
    """
    tokens: list[str] = []
    for chunk in text.split():
        if chunk[0] in "#@":
            continue
        if _URL.search(chunk):
            continue
        current: list[str] = []
        for ch in chunk:
            if _is_token_char(ch):
                current.append(ch)
            elif current:
                tokens.append("".join(current))
                current = []
        if current:
            tokens.append("".join(current))
    return tokens


def normalize_token(token: str) -> str:
    """Downcase a token and collapse vowel runs longer than 3.

    Unicode-aware and idempotent: accents are composed (NFC) before the
    run scan so "á" spelled as two codepoints still collapses.
    """
    lowered = unicodedata.normalize("NFC", token.lower())
    return _VOWEL_RUN.sub(r"\1\1\1", lowered)


def extract_tokens(text: str) -> list[str]:
    """Full pipeline: tokenize then normalize each token."""
    return [normalize_token(t) for t in tokenize(text)]
