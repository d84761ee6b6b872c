"""Mood lexicon: main adjectives with scale assignments and extended synonym
phrases, compiled into a stem-sequence matcher.

Lexicon file format (line-oriented, hand-editable):

    # comment
    # version: 2024-01
    main_term | scale | phrase, phrase, ...

The third field is optional. Scales are the six fixed mood dimensions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import IO, Iterable

from .textproc import porter_stem, tokenize

MAX_PHRASE_WORDS = 4


class MoodScale(enum.Enum):
    """The six mood dimensions, in fixed vector order."""

    TENSION = "tension"
    DEPRESSION = "depression"
    ANGER = "anger"
    VIGOR = "vigor"
    FATIGUE = "fatigue"
    CONFUSION = "confusion"

    def __str__(self) -> str:
        return self.value


SCALES: tuple[MoodScale, ...] = tuple(MoodScale)
SCALE_INDEX: dict[MoodScale, int] = {s: i for i, s in enumerate(SCALES)}


class LexiconError(ValueError):
    """Raised when a lexicon file violates the format or its invariants."""


@dataclass(frozen=True)
class LexiconEntry:
    main_term: str
    scale: MoodScale
    extended: tuple[str, ...] = ()


@dataclass(frozen=True)
class MoodLexicon:
    entries: tuple[LexiconEntry, ...]
    version: str = "unversioned"

    def scales_covered(self) -> set[MoodScale]:
        return {e.scale for e in self.entries}


@dataclass(frozen=True)
class CompileWarning:
    """A stem-sequence collision resolved at compile time."""

    code: str
    term: str
    colliding_term: str
    sequence: tuple[str, ...]

    def as_line(self) -> str:
        return f"{self.code}\t{self.term}\t{self.colliding_term}\t{' '.join(self.sequence)}"


def _parse_entry_line(line: str, line_no: int) -> LexiconEntry:
    parts = [p.strip() for p in line.split("|")]
    if len(parts) not in (2, 3):
        raise LexiconError(f"line {line_no}: expected 'main | scale | phrases', got {line!r}")
    main_term, scale_label = parts[0], parts[1]
    if not main_term:
        raise LexiconError(f"line {line_no}: empty main term")
    if main_term != main_term.lower():
        raise LexiconError(f"line {line_no}: main term {main_term!r} must be lowercase")
    main_words = tokenize(main_term)
    if not main_words:
        raise LexiconError(f"line {line_no}: main term {main_term!r} has no alphabetic words")
    if len(main_words) > MAX_PHRASE_WORDS:
        raise LexiconError(
            f"line {line_no}: main term {main_term!r} longer than {MAX_PHRASE_WORDS} words")
    try:
        scale = MoodScale(scale_label.lower())
    except ValueError:
        raise LexiconError(f"line {line_no}: unknown scale {scale_label!r}") from None
    extended: list[str] = []
    if len(parts) == 3 and parts[2]:
        for raw in parts[2].split(","):
            phrase = " ".join(raw.split()).lower()
            if not phrase:
                raise LexiconError(f"line {line_no}: empty extended phrase under {main_term!r}")
            words = tokenize(phrase)
            if not words:
                raise LexiconError(
                    f"line {line_no}: phrase {phrase!r} has no alphabetic words")
            if len(words) > MAX_PHRASE_WORDS:
                raise LexiconError(
                    f"line {line_no}: phrase {phrase!r} longer than {MAX_PHRASE_WORDS} words")
            if phrase in extended:
                raise LexiconError(
                    f"line {line_no}: duplicate phrase {phrase!r} under {main_term!r}")
            extended.append(phrase)
    return LexiconEntry(main_term=main_term, scale=scale, extended=tuple(extended))


def load_lexicon(source: IO[str] | Iterable[str] | str) -> MoodLexicon:
    """Parse and validate a lexicon from a text stream, lines, or one string.

    Raises LexiconError naming the offending term/line on duplicate main
    terms, unknown scale labels, malformed phrases, or a scale with no
    entries.
    """
    if isinstance(source, str):
        source = source.splitlines()
    entries: list[LexiconEntry] = []
    seen: dict[str, int] = {}
    version = "unversioned"
    for line_no, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if body.lower().startswith("version:"):
                version = body.split(":", 1)[1].strip()
            continue
        entry = _parse_entry_line(line, line_no)
        if entry.main_term in seen:
            raise LexiconError(
                f"line {line_no}: duplicate main term {entry.main_term!r} "
                f"(first defined on line {seen[entry.main_term]})")
        seen[entry.main_term] = line_no
        entries.append(entry)
    if not entries:
        raise LexiconError("lexicon is empty")
    missing = [s.value for s in SCALES if s not in {e.scale for e in entries}]
    if missing:
        raise LexiconError(f"scales with no entries: {', '.join(missing)}")
    return MoodLexicon(entries=tuple(entries), version=version)


def load_lexicon_file(path: str | Path) -> MoodLexicon:
    with open(path, "r", encoding="utf-8") as fh:
        return load_lexicon(fh)


def load_default_lexicon() -> MoodLexicon:
    """The lexicon shipped with the package (a non-proprietary stand-in)."""
    text = resources.files("moodtrends.data").joinpath("default_lexicon.txt").read_text("utf-8")
    return load_lexicon(text.splitlines())


@dataclass
class CompiledMatcher:
    """Stem sequences mapped to main-term indices, ready for scanning.

    Single-stem sequences live in ``singles``, longer ones in ``phrases``;
    ``phrase_heads`` holds the first stem of every multi-stem sequence so the
    scorer can skip phrase lookups for most tokens.
    """

    main_terms: tuple[str, ...]
    scale_of: dict[str, MoodScale]
    singles: dict[str, int]
    phrases: dict[tuple[str, ...], int]
    phrase_heads: frozenset[str]
    max_phrase_len: int
    warnings: list[CompileWarning] = field(default_factory=list)

    def owner_of(self, sequence: tuple[str, ...]) -> str | None:
        """Main term owning a stem sequence, or None."""
        if len(sequence) == 1:
            idx = self.singles.get(sequence[0])
        else:
            idx = self.phrases.get(sequence)
        return None if idx is None else self.main_terms[idx]

    def scale_index_of(self, main_index: int) -> int:
        return self._scale_indices[main_index]

    def __post_init__(self) -> None:
        self._scale_indices = [SCALE_INDEX[self.scale_of[t]] for t in self.main_terms]

    def same_tables(self, other: "CompiledMatcher") -> bool:
        return (self.main_terms == other.main_terms
                and self.scale_of == other.scale_of
                and self.singles == other.singles
                and self.phrases == other.phrases
                and self.max_phrase_len == other.max_phrase_len)


def compile_lexicon(lex: MoodLexicon) -> CompiledMatcher:
    """Stem every main term and extended phrase and build the matcher.

    A stem sequence claimed by two different main terms is kept for the
    earlier entry (file order) and reported in the warning list, never
    dropped silently. Re-compiling the same lexicon yields identical tables.
    """
    main_terms = tuple(e.main_term for e in lex.entries)
    index_of = {t: i for i, t in enumerate(main_terms)}
    scale_of = {e.main_term: e.scale for e in lex.entries}
    singles: dict[str, int] = {}
    phrases: dict[tuple[str, ...], int] = {}
    warnings: list[CompileWarning] = []
    max_len = 1

    def insert(seq: tuple[str, ...], owner_idx: int) -> None:
        nonlocal max_len
        table = singles if len(seq) == 1 else phrases
        key = seq[0] if len(seq) == 1 else seq
        existing = table.get(key)
        if existing is not None:
            if existing != owner_idx:
                warnings.append(CompileWarning(
                    code="stem-collision",
                    term=main_terms[owner_idx],
                    colliding_term=main_terms[existing],
                    sequence=seq,
                ))
            return
        table[key] = owner_idx
        max_len = max(max_len, len(seq))

    for entry in lex.entries:
        owner = index_of[entry.main_term]
        for phrase in (entry.main_term, *entry.extended):
            seq = tuple(porter_stem(w) for w in tokenize(phrase))
            insert(seq, owner)

    return CompiledMatcher(
        main_terms=main_terms,
        scale_of=scale_of,
        singles=singles,
        phrases=phrases,
        phrase_heads=frozenset(seq[0] for seq in phrases),
        max_phrase_len=max_len,
        warnings=warnings,
    )
