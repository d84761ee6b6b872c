"""Command-line pipeline: ``stats``, ``score``, ``analyze``, ``synth`` and
``stem`` subcommands over the corpus -> lexicon -> scoring -> statistics
chain.

Exit codes: 0 success, 1 usage/config error, 2 data validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import corpus as corpus_mod
from . import scoring, stats, svg, synth
from .config import ConfigError, PipelineConfig, apply_overrides, load_config, parse_kv_file
from .corpus import parse_corpus_file
from .lexicon import SCALES, LexiconError, MoodScale, compile_lexicon, load_lexicon_file
from .scoring import MoodVector, YearBucket
from .textproc import porter_stem, tokenize

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _UsageExit(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; the CLI contract reserves 2 for
    # data errors, so route usage problems through exit code 1 instead
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        raise _UsageExit(message)


def _sig6(x: float) -> str:
    return f"{x:.6g}"


def _p4(p: float) -> str:
    return f"{p:.4f}"


def _build_config(args: argparse.Namespace) -> PipelineConfig:
    cfg = load_config(args.config) if getattr(args, "config", None) else PipelineConfig()
    overrides = {}
    for key in ("corpus_path", "corpus_format", "lexicon_path", "origin_year",
                "year_min", "year_max", "english_threshold", "alpha_significant",
                "alpha_marginal", "output_dir", "emit_svg", "top_n"):
        value = getattr(args, key, None)
        if value is not None and value is not False:
            overrides[key] = value
    apply_overrides(cfg, overrides)
    cfg.validate()
    return cfg


def _load_records(cfg: PipelineConfig):
    if not cfg.corpus_path:
        raise UsageError("no corpus path given (flag --corpus or config corpus_path)")
    path = Path(cfg.corpus_path)
    if not path.exists():
        raise DataError(f"corpus file not found: {path}")
    try:
        records, rejections = parse_corpus_file(path, fmt=cfg.corpus_format)
    except OSError as exc:
        raise DataError(f"cannot read corpus: {exc}") from exc
    return records, rejections


def _load_matcher(cfg: PipelineConfig):
    if not cfg.lexicon_path:
        raise UsageError("no lexicon path given (flag --lexicon or config lexicon_path)")
    path = Path(cfg.lexicon_path)
    if not path.exists():
        raise DataError(f"lexicon file not found: {path}")
    try:
        lexicon = load_lexicon_file(path)
    except LexiconError as exc:
        raise DataError(f"lexicon validation failed: {exc}") from exc
    matcher = compile_lexicon(lexicon)
    for warning in matcher.warnings:
        print(f"lexicon-warning\t{warning.as_line()}", file=sys.stderr)
    return matcher


def _score_chain(cfg: PipelineConfig):
    """parse -> filter -> score -> bucket; returns everything downstream
    commands need."""
    records, rejections = _load_records(cfg)
    matcher = _load_matcher(cfg)
    filtered = corpus_mod.filter_english(records, threshold=cfg.english_threshold)
    scored = [scoring.score_record(rec, matcher) for rec in filtered.kept]
    buckets: dict[int, YearBucket] = {}
    year_range = cfg.year_range
    kept_rows = []
    for sc in scored:
        year = sc.delivery_year
        if year_range is not None and not year_range[0] <= year <= year_range[1]:
            continue
        kept_rows.append(sc)
        bucket = buckets.get(year)
        if bucket is None:
            bucket = buckets[year] = YearBucket(year=year)
        if sc.match_count == 0:
            bucket.zero_match_count += 1
        else:
            bucket.vectors.append(sc.vector)
    return records, rejections, filtered, kept_rows, buckets


def _write_rejections(out_dir: Path, rejections, filtered) -> None:
    lines = [r.as_line() for r in rejections]
    lines += [f"-\t{rec.id}\tnon-english\t" for rec in filtered.rejected]
    lines += [f"-\t{rid}\tshort-flagged\t" for rid in filtered.flagged_short]
    (out_dir / "rejections.txt").write_text(
        "\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def _buckets_json(buckets: dict[int, YearBucket]) -> dict:
    out = {}
    for year in sorted(buckets):
        b = buckets[year]
        mean = b.mean_vector()
        out[str(year)] = {
            "year": year,
            "count": len(b.vectors),
            "zero_match_count": b.zero_match_count,
            "mean_vector": None if mean is None else [repr(c) for c in mean],
        }
    return out


def cmd_stats(args: argparse.Namespace) -> int:
    cfg = _build_config(args)
    records, rejections = _load_records(cfg)
    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    encoding_rejects = sum(1 for r in rejections
                           if r.code == corpus_mod.REJECT_BAD_ENCODING)
    cstats = corpus_mod.delivery_histogram(records, rejected_encoding=encoding_rejects)
    if not records:
        print("warning: corpus is empty", file=sys.stderr)

    hist_lines = ["delivery_year,count"]
    hist_lines += [f"{y},{c}" for y, c in cstats.histogram_rows()]
    (out_dir / "histogram.csv").write_text("\n".join(hist_lines) + "\n", encoding="utf-8")

    lag_lines = ["origin_year,mean_lag_years"]
    lag_lines += [f"{y},{_sig6(v)}" for y, v in sorted(cstats.mean_lag_years.items())]
    (out_dir / "mean_lag.csv").write_text("\n".join(lag_lines) + "\n", encoding="utf-8")

    freq = corpus_mod.word_frequency(records, top_n=cfg.top_n)
    freq_lines = ["rank,word,count"]
    freq_lines += [f"{i},{w},{c}" for i, (w, c) in enumerate(freq, start=1)]
    (out_dir / "wordfreq.csv").write_text("\n".join(freq_lines) + "\n", encoding="utf-8")

    (out_dir / "stats.json").write_text(
        json.dumps(cstats.to_json_dict(), indent=2, sort_keys=True) + "\n",
        encoding="utf-8")

    print(f"records: {cstats.total_records}  rejected lines: {len(rejections)}  "
          f"years: {len(cstats.per_year_counts)}")
    return EXIT_OK


def _scores_csv_lines(kept_rows) -> list[str]:
    lines = ["id,delivery_year,tension,depression,anger,vigor,fatigue,confusion,match_count"]
    for sc in kept_rows:
        comps = ",".join(repr(c) for c in sc.vector.as_tuple())
        lines.append(f"{sc.id},{sc.delivery_year},{comps},{sc.match_count}")
    return lines


def cmd_score(args: argparse.Namespace) -> int:
    cfg = _build_config(args)
    records, rejections, filtered, kept_rows, buckets = _score_chain(cfg)
    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    (out_dir / "scores.csv").write_text(
        "\n".join(_scores_csv_lines(kept_rows)) + "\n", encoding="utf-8")
    (out_dir / "buckets.json").write_text(
        json.dumps(_buckets_json(buckets), indent=2, sort_keys=True) + "\n",
        encoding="utf-8")
    _write_rejections(out_dir, rejections, filtered)

    zero_total = sum(b.zero_match_count for b in buckets.values())
    print(f"parsed: {len(records)}  rejected lines: {len(rejections)}  "
          f"non-english: {len(filtered.rejected)}  short-flagged: {len(filtered.flagged_short)}  "
          f"scored: {len(kept_rows)}  zero-match: {zero_total}")
    return EXIT_OK


def _read_scores_csv(path: Path) -> dict[int, YearBucket]:
    buckets: dict[int, YearBucket] = {}
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        expected = "id,delivery_year,tension,depression,anger,vigor,fatigue,confusion,match_count"
        if header != expected:
            raise DataError(f"unexpected scores.csv header: {header!r}")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 9:
                raise DataError(f"bad scores.csv row: {line!r}")
            year = int(parts[1])
            match_count = int(parts[8])
            bucket = buckets.get(year)
            if bucket is None:
                bucket = buckets[year] = YearBucket(year=year)
            if match_count == 0:
                bucket.zero_match_count += 1
            else:
                comps = [float(v) for v in parts[2:8]]
                bucket.vectors.append(MoodVector.from_components(comps, normalized=True))
    return buckets


def cmd_analyze(args: argparse.Namespace) -> int:
    cfg = _build_config(args)
    if getattr(args, "scores", None):
        scores_path = Path(args.scores)
        if not scores_path.exists():
            raise DataError(f"scores file not found: {scores_path}")
        buckets = _read_scores_csv(scores_path)
        if cfg.year_range is not None:
            lo, hi = cfg.year_range
            buckets = {y: b for y, b in buckets.items() if lo <= y <= hi}
    else:
        _, _, _, _, buckets = _score_chain(cfg)
    non_empty = [y for y, b in buckets.items() if b.vectors]
    if len(non_empty) < 2:
        raise DataError(f"need at least two non-empty year buckets, got {len(non_empty)}")

    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    trends_possible = len(non_empty) >= 3
    if not trends_possible:
        print("warning: fewer than three non-empty years; trend fits skipped",
              file=sys.stderr)

    flagged_total = 0
    for dimension in SCALES:
        matrix = stats.pairwise_ks(buckets, dimension,
                                   alpha_significant=cfg.alpha_significant,
                                   alpha_marginal=cfg.alpha_marginal)
        ks_lines = ["year_a,year_b,dimension,d,p,flag"]
        for ya, yb, dim, d, p, flag in matrix.csv_rows():
            ks_lines.append(f"{ya},{yb},{dim},{_sig6(d)},{_p4(p)},{flag}")
            if flag != stats.FLAG_NONE:
                flagged_total += 1
        (out_dir / f"ks_{dimension.value}.csv").write_text(
            "\n".join(ks_lines) + "\n", encoding="utf-8")

        if trends_possible:
            trend = stats.build_trend(buckets, dimension)
            trend_lines = ["year,raw_mean,z,fitted"]
            for year, raw, z, fitted in trend.csv_rows():
                trend_lines.append(f"{year},{_sig6(raw)},{_sig6(z)},{_sig6(fitted)}")
            (out_dir / f"trend_{dimension.value}.csv").write_text(
                "\n".join(trend_lines) + "\n", encoding="utf-8")
            trend_json = {
                "dimension": dimension.value,
                "years": trend.years,
                "raw_means": [repr(v) for v in trend.raw_means],
                "z_scores": [repr(v) for v in trend.z_scores],
                "fit_coeffs": [repr(c) for c in trend.fit_coeffs],
                "fitted": [repr(v) for v in trend.fitted],
                "degenerate": trend.degenerate,
            }
            (out_dir / f"trend_{dimension.value}.json").write_text(
                json.dumps(trend_json, indent=2) + "\n", encoding="utf-8")
            if cfg.emit_svg:
                (out_dir / f"trend_{dimension.value}.svg").write_text(
                    svg.render_trend_svg(trend, matrix) + "\n", encoding="utf-8")

    years_str = f"{min(non_empty)}-{max(non_empty)}"
    print(f"analyzed years: {years_str}  dimensions: {len(SCALES)}  "
          f"flagged pairs: {flagged_total}")
    return EXIT_OK


def _parse_synth_spec(path: Path):
    pairs = parse_kv_file(path)
    known = {"years", "emails_per_year", "origin_year", "seed", "noise_sd"}
    trend_specs: list[tuple[MoodScale, str]] = []
    noise_by_scale: dict[MoodScale, float] = {}
    plain: dict[str, str] = {}
    for key, value in pairs.items():
        if key.startswith("trend."):
            label = key.split(".", 1)[1]
            try:
                scale = MoodScale(label)
            except ValueError:
                raise ConfigError(f"unknown scale in {key!r}") from None
            trend_specs.append((scale, value))
        elif key.startswith("noise_sd."):
            label = key.split(".", 1)[1]
            try:
                scale = MoodScale(label)
            except ValueError:
                raise ConfigError(f"unknown scale in {key!r}") from None
            noise_by_scale[scale] = float(value)
        elif key in known:
            plain[key] = value
        else:
            raise ConfigError(f"unknown synth spec key {key!r}")
    if "years" not in plain:
        raise ConfigError("synth spec needs a years = MIN-MAX line")
    lo, sep, hi = plain["years"].partition("-")
    try:
        year_lo, year_hi = int(lo), int(hi) if sep else int(lo)
    except ValueError:
        raise ConfigError(f"bad years value {plain['years']!r}") from None
    if year_hi < year_lo:
        raise ConfigError(f"empty year range {plain['years']!r}")
    if not trend_specs:
        raise ConfigError("synth spec defines no trend.<scale> lines")
    default_noise = float(plain.get("noise_sd", "0"))
    specs = []
    for scale, expr in trend_specs:
        specs.append(synth.make_trend_spec(
            scale, expr, noise_sd=noise_by_scale.get(scale, default_noise)))
    return {
        "specs": specs,
        "years": range(year_lo, year_hi + 1),
        "emails_per_year": int(plain.get("emails_per_year", "10")),
        "origin_year": int(plain["origin_year"]) if "origin_year" in plain else None,
        "seed": int(plain.get("seed", "0")),
    }


def cmd_synth(args: argparse.Namespace) -> int:
    spec_path = Path(args.spec)
    if not spec_path.exists():
        raise DataError(f"synth spec not found: {spec_path}")
    try:
        parsed = _parse_synth_spec(spec_path)
    except (ConfigError, ValueError) as exc:
        raise DataError(f"bad synth spec: {exc}") from exc
    if args.seed is not None:
        parsed["seed"] = args.seed
    if args.lexicon:
        try:
            lexicon = load_lexicon_file(args.lexicon)
        except LexiconError as exc:
            raise DataError(f"lexicon validation failed: {exc}") from exc
    else:
        from .lexicon import load_default_lexicon
        lexicon = load_default_lexicon()
    try:
        records = synth.generate_corpus(
            parsed["specs"], parsed["years"], parsed["emails_per_year"],
            lexicon, parsed["seed"], origin_year=parsed["origin_year"])
    except ValueError as exc:
        raise DataError(f"generation failed: {exc}") from exc
    out_path = Path(args.out)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    lines = [corpus_mod.format_record_line(rec) for rec in records]
    out_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    years = sorted({r.delivery_year for r in records})
    print(f"wrote {len(records)} records over years {years[0]}-{years[-1]} "
          f"to {out_path}")
    return EXIT_OK


def cmd_stem(args: argparse.Namespace) -> int:
    for word in args.words:
        for token in tokenize(word):
            print(f"{token}\t{porter_stem(token)}")
    return EXIT_OK


def _add_config_flags(p: argparse.ArgumentParser, *, corpus: bool = False,
                      lexicon: bool = False, analysis: bool = False) -> None:
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--output-dir", dest="output_dir", help="output directory")
    if corpus:
        p.add_argument("--corpus", dest="corpus_path", help="corpus file")
        p.add_argument("--corpus-format", dest="corpus_format",
                       choices=("tsv", "jsonl"), default=None)
    if lexicon:
        p.add_argument("--lexicon", dest="lexicon_path", help="lexicon file")
        p.add_argument("--english-threshold", dest="english_threshold", type=float)
        p.add_argument("--year-min", dest="year_min", type=int)
        p.add_argument("--year-max", dest="year_max", type=int)
    if analysis:
        p.add_argument("--alpha-significant", dest="alpha_significant", type=float)
        p.add_argument("--alpha-marginal", dest="alpha_marginal", type=float)
        p.add_argument("--emit-svg", dest="emit_svg", action="store_true", default=None)


def build_parser() -> _Parser:
    parser = _Parser(prog="moodtrends",
                     description="Mood scoring and trend analysis over "
                                 "future-dated message corpora")
    sub = parser.add_subparsers(dest="command", required=True)

    p_stats = sub.add_parser("stats", help="corpus histogram and word table")
    _add_config_flags(p_stats, corpus=True)
    p_stats.add_argument("--top-n", dest="top_n", type=int)
    p_stats.set_defaults(func=cmd_stats)

    p_score = sub.add_parser("score", help="score every document into mood vectors")
    _add_config_flags(p_score, corpus=True, lexicon=True)
    p_score.set_defaults(func=cmd_score)

    p_an = sub.add_parser("analyze", help="pairwise KS tests and trend fits")
    _add_config_flags(p_an, corpus=True, lexicon=True, analysis=True)
    p_an.add_argument("--scores", help="reuse a scores.csv from a score run "
                                       "instead of scoring inline")
    p_an.set_defaults(func=cmd_analyze)

    p_synth = sub.add_parser("synth", help="generate a synthetic corpus")
    p_synth.add_argument("--spec", required=True, help="synth spec file")
    p_synth.add_argument("--seed", type=int, default=None)
    p_synth.add_argument("--lexicon", default=None,
                         help="lexicon file (default: built-in lexicon)")
    p_synth.add_argument("--out", required=True, help="output corpus path")
    p_synth.set_defaults(func=cmd_synth)

    p_stem = sub.add_parser("stem", help="print stems for words")
    p_stem.add_argument("words", nargs="+")
    p_stem.set_defaults(func=cmd_stem)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageExit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except LexiconError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
