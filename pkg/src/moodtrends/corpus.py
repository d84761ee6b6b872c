"""Corpus ingestion: parse and validate record files, filter non-English
documents, and compute descriptive statistics.

Record file formats
-------------------
tsv (delimited records, the native format)::

    id<TAB>compose_date<TAB>delivery_date<TAB>body

  Dates are ISO-8601 (YYYY-MM-DD). The body is backslash-escaped: ``\\t``,
  ``\\n``, ``\\r``, ``\\\\``. One record per line.

jsonl (one JSON object per line)::

    {"id": ..., "compose_date": "YYYY-MM-DD", "delivery_date": ..., "body": ...}

Malformed lines never abort a parse; each produces a rejection report with
its line number and a stable reason code.
"""

from __future__ import annotations

import datetime as dt
import json
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from typing import BinaryIO, Iterable

from .textproc import tokenize

DEFAULT_ENGLISH_THRESHOLD = 0.15
MIN_TOKENS_TO_JUDGE = 5

REJECT_BAD_ENCODING = "unknown-character-encoding"
REJECT_BAD_FIELDS = "malformed-record"
REJECT_BAD_DATE = "invalid-date"
REJECT_BAD_JSON = "invalid-json"
REJECT_ORDER = "delivery-precedes-compose"


@dataclass(frozen=True)
class EmailRecord:
    """One document: when it was written, when it is due, and its text."""

    id: str
    compose_date: dt.date
    delivery_date: dt.date
    body: str

    def __post_init__(self) -> None:
        if self.delivery_date < self.compose_date:
            raise ValueError(
                f"record {self.id!r}: delivery {self.delivery_date} precedes "
                f"compose {self.compose_date}")

    @property
    def delivery_year(self) -> int:
        return self.delivery_date.year

    def lag_years(self) -> float:
        """Delivery minus compose date in fractional (decimal) years."""
        return _decimal_year(self.delivery_date) - _decimal_year(self.compose_date)


def _decimal_year(d: dt.date) -> float:
    start = dt.date(d.year, 1, 1)
    days = 366 if d.year % 4 == 0 and (d.year % 100 != 0 or d.year % 400 == 0) else 365
    return d.year + (d.toordinal() - start.toordinal()) / days


@dataclass(frozen=True)
class RejectionReport:
    line_no: int
    record_id: str
    code: str
    detail: str = ""

    def as_line(self) -> str:
        return f"{self.line_no}\t{self.record_id}\t{self.code}\t{self.detail}"


@dataclass
class CorpusStats:
    """Delivery-year histogram plus per-origin-year mean lag."""

    per_year_counts: dict[int, int] = field(default_factory=dict)
    mean_lag_years: dict[int, float] = field(default_factory=dict)
    total_records: int = 0
    rejected_language: int = 0
    rejected_encoding: int = 0

    def to_json_dict(self) -> dict:
        return {
            "per_year_counts": {str(y): c for y, c in sorted(self.per_year_counts.items())},
            "mean_lag_years": {str(y): v for y, v in sorted(self.mean_lag_years.items())},
            "total_records": self.total_records,
            "rejected_language": self.rejected_language,
            "rejected_encoding": self.rejected_encoding,
        }

    def histogram_rows(self) -> list[tuple[int, int]]:
        return sorted(self.per_year_counts.items())


_ESCAPES = {"\\": "\\\\", "\t": "\\t", "\n": "\\n", "\r": "\\r"}


def escape_body(body: str) -> str:
    out = []
    for ch in body:
        out.append(_ESCAPES.get(ch, ch))
    return "".join(out)


def unescape_body(text: str) -> str:
    out = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\\" and i + 1 < n:
            nxt = text[i + 1]
            if nxt == "t":
                out.append("\t")
            elif nxt == "n":
                out.append("\n")
            elif nxt == "r":
                out.append("\r")
            elif nxt == "\\":
                out.append("\\")
            else:
                out.append(nxt)
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def format_record_line(rec: EmailRecord) -> str:
    return (f"{rec.id}\t{rec.compose_date.isoformat()}"
            f"\t{rec.delivery_date.isoformat()}\t{escape_body(rec.body)}")


def _build_record(rec_id: str, compose: str, delivery: str, body: str,
                  line_no: int) -> EmailRecord | RejectionReport:
    try:
        compose_date = dt.date.fromisoformat(compose.strip())
        delivery_date = dt.date.fromisoformat(delivery.strip())
    except ValueError as exc:
        return RejectionReport(line_no, rec_id, REJECT_BAD_DATE, str(exc))
    if delivery_date < compose_date:
        return RejectionReport(line_no, rec_id, REJECT_ORDER,
                               "delivery precedes compose")
    return EmailRecord(id=rec_id, compose_date=compose_date,
                       delivery_date=delivery_date, body=body)


def parse_corpus(data: bytes | BinaryIO,
                 fmt: str = "tsv") -> tuple[list[EmailRecord], list[RejectionReport]]:
    """Parse a byte stream into records plus per-line rejection reports.

    fmt is "tsv" (delimited records) or "jsonl" (one JSON object per line).
    Undecodable lines are rejected with the unknown-character-encoding code;
    the parse itself never raises on malformed content.
    """
    if fmt not in ("tsv", "jsonl"):
        raise ValueError(f"unknown corpus format {fmt!r}")
    raw = data if isinstance(data, bytes) else data.read()
    if not isinstance(raw, bytes):
        raise TypeError("parse_corpus expects bytes or a binary stream; "
                        "open corpus files with mode 'rb'")
    records: list[EmailRecord] = []
    rejections: list[RejectionReport] = []
    for line_no, raw_line in enumerate(raw.split(b"\n"), start=1):
        if not raw_line.strip():
            continue
        try:
            line = raw_line.decode("utf-8")
        except UnicodeDecodeError as exc:
            rejections.append(RejectionReport(
                line_no, "", REJECT_BAD_ENCODING, str(exc)))
            continue
        if fmt == "tsv":
            parts = line.split("\t")
            if len(parts) != 4:
                rejections.append(RejectionReport(
                    line_no, parts[0] if parts else "", REJECT_BAD_FIELDS,
                    f"expected 4 tab-separated fields, got {len(parts)}"))
                continue
            rec_id, compose, delivery, body = parts
            if not rec_id.strip():
                rejections.append(RejectionReport(
                    line_no, "", REJECT_BAD_FIELDS, "empty record id"))
                continue
            result = _build_record(rec_id.strip(), compose, delivery,
                                   unescape_body(body), line_no)
        else:
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                rejections.append(RejectionReport(line_no, "", REJECT_BAD_JSON, str(exc)))
                continue
            if not isinstance(obj, dict):
                rejections.append(RejectionReport(
                    line_no, "", REJECT_BAD_JSON, "line is not a JSON object"))
                continue
            missing = [k for k in ("id", "compose_date", "delivery_date", "body")
                       if k not in obj]
            if missing:
                rejections.append(RejectionReport(
                    line_no, str(obj.get("id", "")), REJECT_BAD_FIELDS,
                    f"missing fields: {', '.join(missing)}"))
                continue
            result = _build_record(str(obj["id"]), str(obj["compose_date"]),
                                   str(obj["delivery_date"]), str(obj["body"]),
                                   line_no)
        if isinstance(result, RejectionReport):
            rejections.append(result)
        else:
            records.append(result)
    return records, rejections


def parse_corpus_file(path, fmt: str = "tsv"):
    with open(path, "rb") as fh:
        return parse_corpus(fh, fmt=fmt)


def load_function_words() -> frozenset[str]:
    text = resources.files("moodtrends.data").joinpath("function_words.txt").read_text("utf-8")
    return frozenset(w.strip() for w in text.splitlines()
                     if w.strip() and not w.startswith("#"))


def load_stopwords() -> frozenset[str]:
    text = resources.files("moodtrends.data").joinpath("stopwords.txt").read_text("utf-8")
    return frozenset(w.strip() for w in text.splitlines()
                     if w.strip() and not w.startswith("#"))


@dataclass
class FilterResult:
    kept: list[EmailRecord]
    rejected: list[EmailRecord]
    flagged_short: list[str]


def filter_english(records: Iterable[EmailRecord],
                   threshold: float = DEFAULT_ENGLISH_THRESHOLD,
                   function_words: frozenset[str] | None = None) -> FilterResult:
    """Partition records by function-word ratio.

    A record is kept when (function-word tokens / total tokens) >= threshold.
    Records with fewer than five tokens are too short to judge; they are kept
    and their ids flagged. kept + rejected is always the full input.
    """
    if function_words is None:
        function_words = load_function_words()
    kept: list[EmailRecord] = []
    rejected: list[EmailRecord] = []
    flagged: list[str] = []
    for rec in records:
        tokens = tokenize(rec.body)
        if len(tokens) < MIN_TOKENS_TO_JUDGE:
            kept.append(rec)
            flagged.append(rec.id)
            continue
        hits = sum(1 for t in tokens if t in function_words)
        if hits / len(tokens) >= threshold:
            kept.append(rec)
        else:
            rejected.append(rec)
    return FilterResult(kept=kept, rejected=rejected, flagged_short=flagged)


def word_frequency(records: Iterable[EmailRecord], top_n: int,
                   stopwords: frozenset[str] | None = None) -> list[tuple[str, int]]:
    """Top-N non-stopword surface tokens by raw occurrence count.

    Ties break toward ascending lexicographic order.
    """
    if top_n <= 0:
        return []
    if stopwords is None:
        stopwords = load_stopwords()
    counts: Counter[str] = Counter()
    for rec in records:
        for tok in tokenize(rec.body):
            if tok not in stopwords:
                counts[tok] += 1
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return ranked[:top_n]


def delivery_histogram(records: Iterable[EmailRecord],
                       rejected_language: int = 0,
                       rejected_encoding: int = 0) -> CorpusStats:
    """Per-delivery-year counts and per-origin-year mean lag in fractional
    years. An empty record list yields all-zero stats."""
    per_year: dict[int, int] = {}
    lag_sum: dict[int, float] = {}
    lag_n: dict[int, int] = {}
    total = 0
    for rec in records:
        total += 1
        y = rec.delivery_year
        per_year[y] = per_year.get(y, 0) + 1
        oy = rec.compose_date.year
        lag_sum[oy] = lag_sum.get(oy, 0.0) + rec.lag_years()
        lag_n[oy] = lag_n.get(oy, 0) + 1
    mean_lag = {y: lag_sum[y] / lag_n[y] for y in lag_sum}
    return CorpusStats(per_year_counts=per_year, mean_lag_years=mean_lag,
                       total_records=total, rejected_language=rejected_language,
                       rejected_encoding=rejected_encoding)
