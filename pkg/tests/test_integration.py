"""One messy corpus, end to end: ingestion counters, filtering, scoring,
analysis outputs and their mutual consistency."""

from __future__ import annotations

import csv
import json
import math

from moodtrends.cli import EXIT_OK, main

LEXICON_LINE = "--lexicon"


def build_messy_corpus(tmp_path):
    lines = [
        # 2010 deliveries: one gloomy, one upbeat, one with a phrase match
        "m1\t2006-02-03\t2010-06-01\tI feel so hopeless and worthless about what is coming",
        "m2\t2006-02-04\t2010-07-01\tI am cheerful and full of pep about the future",
        "m3\t2006-02-05\t2010-08-01\tafter the project I just lost momentum and was put off",
        # 2015 deliveries: energetic pair
        "m4\t2006-03-01\t2015-06-01\tfeeling lively and energetic and I will be refreshed",
        "m5\t2006-03-02\t2015-07-01\tso vibrant and alert these days I hope it lasts",
        # zero-match but English
        "m6\t2006-03-03\t2015-08-01\tthe committee will review the plans for the library",
        # German: rejected by the language filter
        "m7\t2006-03-04\t2015-09-01\tder die das und aber nicht heute morgen wieder",
        # too short to judge: kept and flagged
        "m8\t2006-03-05\t2010-09-01\tangry now",
        # malformed: missing a field
        "m9\t2006-03-06\tno-body-here",
        # delivery precedes compose
        "m10\t2006-03-07\t2005-01-01\tbackwards",
    ]
    corpus = tmp_path / "messy.tsv"
    data = "\n".join(lines).encode() + b"\nm11\t2006-04-01\t2010-01-01\t\xff\xfebad\n"
    corpus.write_bytes(data)
    return corpus


def test_messy_corpus_full_chain(tmp_path):
    from test_cli import LEXICON
    corpus = build_messy_corpus(tmp_path)

    stats_out = tmp_path / "stats"
    assert main(["stats", "--corpus", str(corpus),
                 "--output-dir", str(stats_out)]) == EXIT_OK
    hist = {r["delivery_year"]: int(r["count"])
            for r in csv.DictReader(open(stats_out / "histogram.csv"))}
    # 8 parseable records (m9, m10, m11 rejected at parse time)
    assert hist == {"2010": 4, "2015": 4}
    lag = {r["origin_year"]: float(r["mean_lag_years"])
           for r in csv.DictReader(open(stats_out / "mean_lag.csv"))}
    assert set(lag) == {"2006"}
    assert 4.0 < lag["2006"] < 9.5
    stats_json = json.loads((stats_out / "stats.json").read_text())
    assert stats_json["total_records"] == 8
    assert stats_json["rejected_encoding"] == 1

    score_out = tmp_path / "score"
    assert main(["score", "--corpus", str(corpus), LEXICON_LINE, str(LEXICON),
                 "--output-dir", str(score_out)]) == EXIT_OK
    rows = {r["id"]: r for r in csv.DictReader(open(score_out / "scores.csv"))}
    # m7 filtered as non-English, m9/m10/m11 never parsed
    assert set(rows) == {"m1", "m2", "m3", "m4", "m5", "m6", "m8"}
    assert float(rows["m1"]["depression"]) == 1.0  # hopeless + worthless only
    assert float(rows["m3"]["depression"]) == 1.0  # two depression phrases
    assert rows["m3"]["match_count"] == "2"
    assert float(rows["m4"]["vigor"]) == 1.0
    assert rows["m6"]["match_count"] == "0"
    assert float(rows["m8"]["anger"]) == 1.0  # short but flagged-in

    norm = math.sqrt(sum(float(rows["m2"][d]) ** 2 for d in
                         ("tension", "depression", "anger", "vigor",
                          "fatigue", "confusion")))
    assert abs(norm - 1.0) < 1e-9

    rejections = (score_out / "rejections.txt").read_text()
    assert "delivery-precedes-compose" in rejections
    assert "unknown-character-encoding" in rejections
    assert "malformed-record" in rejections
    assert "non-english" in rejections
    assert "short-flagged" in rejections

    buckets = json.loads((score_out / "buckets.json").read_text())
    assert buckets["2010"]["count"] == 4
    assert buckets["2015"]["count"] == 2
    assert buckets["2015"]["zero_match_count"] == 1


def test_jsonl_corpus_through_stats(tmp_path):
    objs = [
        {"id": "j1", "compose_date": "2006-01-01", "delivery_date": "2009-01-01",
         "body": "dear future me I hope you are happy"},
        {"id": "j2", "compose_date": "2006-01-02", "delivery_date": "2009-06-01",
         "body": "dear friend this is a reminder about the garden"},
    ]
    corpus = tmp_path / "c.jsonl"
    corpus.write_text("\n".join(json.dumps(o) for o in objs) + "\n")
    out = tmp_path / "out"
    assert main(["stats", "--corpus", str(corpus), "--corpus-format", "jsonl",
                 "--output-dir", str(out)]) == EXIT_OK
    freq = list(csv.DictReader(open(out / "wordfreq.csv")))
    assert freq[0]["word"] == "dear"
    assert freq[0]["count"] == "2"
