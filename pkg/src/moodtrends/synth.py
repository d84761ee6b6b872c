"""Seeded synthetic-corpus generator with plantable per-dimension trends.

Bodies are built from lexicon terms of the planted scales (one scored match
per sampled term, phrases kept contiguous) separated by neutral filler words
whose stems never appear in the lexicon, so expected match counts equal the
planted intensities exactly.
"""

from __future__ import annotations

import datetime as dt
import random
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Sequence

from .corpus import EmailRecord
from .lexicon import CompiledMatcher, MoodLexicon, MoodScale, compile_lexicon
from .textproc import porter_stem, tokenize


@dataclass(frozen=True)
class TrendSpec:
    """Planted intensity profile for one scale over the year index."""

    dimension: MoodScale
    profile: Callable[[int], float]
    profile_label: str
    noise_sd: float = 0.0

    def __post_init__(self) -> None:
        if self.noise_sd < 0:
            raise ValueError("noise_sd must be >= 0")


def constant(level: float) -> tuple[Callable[[int], float], str]:
    return (lambda i: level), f"constant({level:g})"


def linear(slope: float, intercept: float = 0.0) -> tuple[Callable[[int], float], str]:
    return (lambda i: intercept + slope * i), f"linear({slope:g},{intercept:g})"


def quadratic(a: float, b: float, c: float) -> tuple[Callable[[int], float], str]:
    return (lambda i: a + b * i + c * i * i), f"quadratic({a:g},{b:g},{c:g})"


def step(low: float, high: float, at_index: int) -> tuple[Callable[[int], float], str]:
    return (lambda i: high if i >= at_index else low), f"step({low:g},{high:g},{at_index:d})"


def make_trend_spec(dimension: MoodScale, profile_expr: str,
                    noise_sd: float = 0.0) -> TrendSpec:
    """Build a TrendSpec from a profile expression such as ``step(1, 6, 5)``,
    ``constant(3)``, ``linear(0.5)`` or ``quadratic(1, 0.2, -0.01)``."""
    fn, label = parse_profile(profile_expr)
    return TrendSpec(dimension=dimension, profile=fn, profile_label=label,
                     noise_sd=noise_sd)


def parse_profile(expr: str) -> tuple[Callable[[int], float], str]:
    text = expr.strip().lower()
    if "(" not in text or not text.endswith(")"):
        raise ValueError(f"bad profile expression {expr!r}")
    name, _, arg_text = text.partition("(")
    name = name.strip()
    args = [a.strip() for a in arg_text[:-1].split(",") if a.strip()]
    try:
        values = [float(a) for a in args]
    except ValueError:
        raise ValueError(f"bad profile arguments in {expr!r}") from None
    if name == "constant" and len(values) == 1:
        return constant(values[0])
    if name == "linear" and len(values) in (1, 2):
        return linear(*values)
    if name == "quadratic" and len(values) == 3:
        return quadratic(*values)
    if name == "step" and len(values) == 3:
        return step(values[0], values[1], int(values[2]))
    raise ValueError(f"unknown profile {expr!r}")


def load_filler_words() -> list[str]:
    text = resources.files("moodtrends.data").joinpath("filler_words.txt").read_text("utf-8")
    return [w.strip() for w in text.splitlines() if w.strip() and not w.startswith("#")]


# Every filler slot pairs one of these with a neutral noun so generated
# bodies always clear the pipeline's function-word-ratio language filter.
_FUNCTION_FILLERS = (
    "my", "your", "our", "was", "and", "that", "this", "with", "from",
    "when", "will", "would", "could", "should", "because", "about",
    "after", "before", "very", "also",
)


def _scale_terms(lexicon: MoodLexicon) -> dict[MoodScale, list[str]]:
    by_scale: dict[MoodScale, list[str]] = {}
    for entry in lexicon.entries:
        bucket = by_scale.setdefault(entry.scale, [])
        bucket.append(entry.main_term)
        bucket.extend(entry.extended)
    return by_scale


def _safe_fillers(matcher: CompiledMatcher, fillers: Sequence[str]) -> list[str]:
    # a filler is safe when its stem occurs nowhere in any stored sequence,
    # so no phrase can span across it and no single ever matches it
    used = set(matcher.singles)
    for seq in matcher.phrases:
        used.update(seq)
    safe = [w for w in fillers
            if all(porter_stem(t) not in used for t in tokenize(w))]
    if not safe:
        raise ValueError("no filler word survives the lexicon stem filter")
    return safe


def generate_corpus(specs: Sequence[TrendSpec], years: Sequence[int],
                    emails_per_year: int, lexicon: MoodLexicon, seed: int,
                    origin_year: int | None = None) -> list[EmailRecord]:
    """Emit a fully deterministic corpus with the planted per-scale trends.

    For each (year, email) a per-scale target intensity profile(i) +
    gauss(0, noise_sd) is drawn, clamped at zero and rounded to a term
    count; that many terms are sampled from the scale's lexicon entries.
    Documents are composed in origin_year and delivered in the bucket year.
    """
    years = sorted(years)
    if not years:
        raise ValueError("empty year range")
    if emails_per_year < 1:
        raise ValueError("emails_per_year must be >= 1")
    if origin_year is None:
        origin_year = years[0]
    if origin_year > years[0]:
        raise ValueError("origin_year must not exceed the first bucket year")
    terms_by_scale = _scale_terms(lexicon)
    for spec in specs:
        if not terms_by_scale.get(spec.dimension):
            raise ValueError(f"no lexicon entries for scale {spec.dimension}")
    seen_dims = set()
    for spec in specs:
        if spec.dimension in seen_dims:
            raise ValueError(f"duplicate trend spec for {spec.dimension}")
        seen_dims.add(spec.dimension)
    matcher = compile_lexicon(lexicon)
    nouns = _safe_fillers(matcher, load_filler_words())
    function_fillers = _safe_fillers(matcher, _FUNCTION_FILLERS)

    compose = dt.date(origin_year, 1, 1)
    records: list[EmailRecord] = []
    for year_idx, year in enumerate(years):
        delivery = dt.date(year, 7, 1)
        for email_idx in range(emails_per_year):
            rng = random.Random(f"{seed}:{year}:{email_idx}")
            chunks: list[str] = []
            for spec in specs:
                intensity = spec.profile(year_idx)
                if spec.noise_sd > 0:
                    intensity += rng.gauss(0.0, spec.noise_sd)
                count = max(0, round(intensity))
                terms = terms_by_scale[spec.dimension]
                for _ in range(count):
                    chunks.append(rng.choice(terms))
            rng.shuffle(chunks)
            # one function word + one noun per filler slot, so every body
            # clears the function-word-ratio language filter
            words = [f"{rng.choice(function_fillers)} {rng.choice(nouns)}"]
            for chunk in chunks:
                words.append(chunk)
                words.append(f"{rng.choice(function_fillers)} {rng.choice(nouns)}")
            body = " ".join(words)
            records.append(EmailRecord(
                id=f"synth-{year}-{email_idx:04d}",
                compose_date=compose,
                delivery_date=delivery,
                body=body,
            ))
    return records
