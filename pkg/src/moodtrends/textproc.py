"""Tokenization and stemming shared by lexicon compilation, scoring and
corpus statistics."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from . import porter

# Maximal runs of a-z letters and apostrophes; anything else separates.
# Leading/trailing apostrophes are stripped afterwards so only internal ones
# survive ("don't" stays one token, "'ello" loses its quote).
_TOKEN_RE = re.compile(r"[a-z']+")


def tokenize(text: str) -> list[str]:
    """Split text into lowercase word tokens.

    Digits, punctuation, symbols and any letter that does not lowercase into
    a-z act as separators; apostrophes are kept only word-internally.
    """
    out = []
    for run in _TOKEN_RE.findall(text.lower()):
        word = run.strip("'")
        if word:
            out.append(word)
    return out


@lru_cache(maxsize=262144)
def porter_stem(word: str) -> str:
    """Porter stem of a token; apostrophes are dropped before stemming."""
    if "'" in word:
        word = word.replace("'", "")
    return porter.stem(word)


@dataclass(frozen=True)
class Token:
    """A surface word paired with its stem."""

    surface: str
    stem: str

    @classmethod
    def from_surface(cls, surface: str) -> "Token":
        return cls(surface=surface, stem=porter_stem(surface))


def token_stream(text: str) -> list[Token]:
    return [Token.from_surface(w) for w in tokenize(text)]
