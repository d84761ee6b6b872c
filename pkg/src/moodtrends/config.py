"""Pipeline configuration: flat ``key = value`` files, every key overridable
by the CLI flag of the same name."""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path

from .corpus import DEFAULT_ENGLISH_THRESHOLD
from .stats import ALPHA_MARGINAL, ALPHA_SIGNIFICANT


class ConfigError(ValueError):
    """Bad configuration file or inconsistent settings."""


@dataclass
class PipelineConfig:
    corpus_path: str | None = None
    corpus_format: str = "tsv"
    lexicon_path: str | None = None
    origin_year: int | None = None
    year_min: int | None = None
    year_max: int | None = None
    english_threshold: float = DEFAULT_ENGLISH_THRESHOLD
    alpha_significant: float = ALPHA_SIGNIFICANT
    alpha_marginal: float = ALPHA_MARGINAL
    output_dir: str = "out"
    emit_svg: bool = False
    top_n: int = 20

    def validate(self) -> None:
        if not (0.0 < self.alpha_significant < self.alpha_marginal < 1.0):
            raise ConfigError(
                "need 0 < alpha_significant < alpha_marginal < 1 "
                f"(got {self.alpha_significant} and {self.alpha_marginal})")
        if (self.year_min is None) != (self.year_max is None):
            raise ConfigError("year_min and year_max must be set together")
        if self.year_min is not None and self.year_min > self.year_max:
            raise ConfigError(f"year_min {self.year_min} > year_max {self.year_max}")
        if self.corpus_format not in ("tsv", "jsonl"):
            raise ConfigError(f"corpus_format must be tsv or jsonl, got {self.corpus_format!r}")
        if not (0.0 <= self.english_threshold <= 1.0):
            raise ConfigError(f"english_threshold must be in [0, 1], got {self.english_threshold}")
        if self.top_n < 0:
            raise ConfigError("top_n must be >= 0")

    @property
    def year_range(self) -> tuple[int, int] | None:
        if self.year_min is None:
            return None
        return (self.year_min, self.year_max)


_BOOL_TRUE = {"1", "true", "yes", "on"}
_BOOL_FALSE = {"0", "false", "no", "off"}


def parse_kv_file(path: str | Path) -> dict[str, str]:
    """Read a flat key = value file; ``#`` starts a comment line."""
    pairs: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{line_no}: expected 'key = value', got {line!r}")
            key, _, value = line.partition("=")
            pairs[key.strip()] = value.strip()
    return pairs


def _coerce(name: str, value: str, target_type: type) -> object:
    try:
        if target_type is bool:
            low = value.lower()
            if low in _BOOL_TRUE:
                return True
            if low in _BOOL_FALSE:
                return False
            raise ValueError(value)
        if target_type is int:
            return int(value)
        if target_type is float:
            return float(value)
        return value
    except ValueError:
        raise ConfigError(f"bad value for {name}: {value!r}") from None


_FIELD_TYPES = {
    "corpus_path": str, "corpus_format": str, "lexicon_path": str,
    "origin_year": int, "year_min": int, "year_max": int,
    "english_threshold": float, "alpha_significant": float,
    "alpha_marginal": float, "output_dir": str, "emit_svg": bool,
    "top_n": int,
}


def load_config(path: str | Path) -> PipelineConfig:
    cfg = PipelineConfig()
    apply_overrides(cfg, parse_kv_file(path))
    return cfg


def apply_overrides(cfg: PipelineConfig, pairs: dict[str, str | None]) -> PipelineConfig:
    valid = {f.name for f in fields(PipelineConfig)}
    for key, value in pairs.items():
        if value is None:
            continue
        if key not in valid:
            raise ConfigError(f"unknown config key {key!r}")
        setattr(cfg, key, _coerce(key, str(value), _FIELD_TYPES[key]))
    return cfg
