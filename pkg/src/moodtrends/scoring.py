"""Document scoring: token stream -> per-main-term counts -> six-dimensional
mood vector -> unit-normalized vector -> per-delivery-year buckets."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .corpus import EmailRecord
from .lexicon import SCALES, CompiledMatcher, MoodScale
from .textproc import porter_stem, tokenize


class ZeroVectorError(ValueError):
    """Raised when normalizing a vector with no lexicon hits."""


@dataclass(frozen=True)
class MoodVector:
    """Six non-negative components in fixed scale order."""

    tension: float
    depression: float
    anger: float
    vigor: float
    fatigue: float
    confusion: float
    normalized: bool = False

    def as_tuple(self) -> tuple[float, float, float, float, float, float]:
        return (self.tension, self.depression, self.anger,
                self.vigor, self.fatigue, self.confusion)

    def component(self, scale: MoodScale) -> float:
        return self.as_tuple()[SCALES.index(scale)]

    def norm(self) -> float:
        return math.sqrt(sum(c * c for c in self.as_tuple()))

    @classmethod
    def from_components(cls, components: Sequence[float],
                        normalized: bool = False) -> "MoodVector":
        t, d, a, v, f, c = components
        return cls(t, d, a, v, f, c, normalized=normalized)


ZERO_VECTOR = MoodVector(0, 0, 0, 0, 0, 0)


def score_tokens(tokens: Sequence[str], matcher: CompiledMatcher) -> dict[str, int]:
    """Count lexicon matches over a token sequence.

    The stemmed stream is scanned left to right; at each position the longest
    matching stem sequence wins and is consumed whole (matches never
    overlap), otherwise the scan advances one token. Each match increments
    its owning main term by 1.
    """
    counts = _score_stems([porter_stem(t) for t in tokens], matcher)
    return {matcher.main_terms[i]: c for i, c in enumerate(counts) if c}


def _score_stems(stems: list[str], matcher: CompiledMatcher) -> list[int]:
    counts = [0] * len(matcher.main_terms)
    singles = matcher.singles
    phrases = matcher.phrases
    heads = matcher.phrase_heads
    max_len = matcher.max_phrase_len
    n = len(stems)
    i = 0
    while i < n:
        stem = stems[i]
        if stem in heads:
            matched = False
            for length in range(min(max_len, n - i), 1, -1):
                idx = phrases.get(tuple(stems[i:i + length]))
                if idx is not None:
                    counts[idx] += 1
                    i += length
                    matched = True
                    break
            if matched:
                continue
        idx = singles.get(stem)
        if idx is not None:
            counts[idx] += 1
        i += 1
    return counts


def to_mood_vector(scores: dict[str, int], matcher: CompiledMatcher) -> MoodVector:
    """Apply the scoring key: each scale's component is the sum of counts of
    the main terms assigned to it. The result is unnormalized."""
    components = [0.0] * len(SCALES)
    scale_of = matcher.scale_of
    for term, count in scores.items():
        components[SCALES.index(scale_of[term])] += count
    return MoodVector.from_components(components)


def normalize(v: MoodVector) -> MoodVector:
    """Scale to unit Euclidean length. A zero vector has no direction;
    raises ZeroVectorError so the caller can exclude the document."""
    norm = v.norm()
    if norm == 0.0:
        raise ZeroVectorError("all six components are zero")
    return MoodVector.from_components(
        [c / norm for c in v.as_tuple()], normalized=True)


@dataclass
class YearBucket:
    """All normalized per-document vectors delivered in one calendar year."""

    year: int
    vectors: list[MoodVector] = field(default_factory=list)
    zero_match_count: int = 0

    def components(self, scale: MoodScale) -> list[float]:
        idx = SCALES.index(scale)
        return [v.as_tuple()[idx] for v in self.vectors]

    def mean_vector(self) -> tuple[float, ...] | None:
        if not self.vectors:
            return None
        k = len(self.vectors)
        sums = [0.0] * len(SCALES)
        for v in self.vectors:
            for i, c in enumerate(v.as_tuple()):
                sums[i] += c
        return tuple(s / k for s in sums)


@dataclass(frozen=True)
class ScoredRecord:
    """Audit row for one document."""

    id: str
    delivery_year: int
    vector: MoodVector
    match_count: int


def score_record(rec: EmailRecord, matcher: CompiledMatcher) -> ScoredRecord:
    stems = [porter_stem(t) for t in tokenize(rec.body)]
    counts = _score_stems(stems, matcher)
    total = sum(counts)
    if total == 0:
        return ScoredRecord(rec.id, rec.delivery_year, ZERO_VECTOR, 0)
    components = [0.0] * len(SCALES)
    for main_idx, c in enumerate(counts):
        if c:
            components[matcher.scale_index_of(main_idx)] += c
    vec = normalize(MoodVector.from_components(components))
    return ScoredRecord(rec.id, rec.delivery_year, vec, total)


def score_corpus(records: Iterable[EmailRecord], matcher: CompiledMatcher,
                 year_range: tuple[int, int] | None = None) -> dict[int, YearBucket]:
    """Score every record into the bucket of its delivery year.

    Zero-match documents are counted per bucket but contribute no vector.
    Records outside year_range (inclusive), when given, are skipped.
    """
    buckets: dict[int, YearBucket] = {}
    for rec in records:
        year = rec.delivery_year
        if year_range is not None and not year_range[0] <= year <= year_range[1]:
            continue
        bucket = buckets.get(year)
        if bucket is None:
            bucket = buckets[year] = YearBucket(year=year)
        scored = score_record(rec, matcher)
        if scored.match_count == 0:
            bucket.zero_match_count += 1
        else:
            bucket.vectors.append(scored.vector)
    return buckets
