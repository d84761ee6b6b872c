from __future__ import annotations

import pytest

from ks_oracle import mc_perm_p
from moodtrends.corpus import filter_english, format_record_line
from moodtrends.lexicon import MoodScale
from moodtrends.scoring import score_corpus
from moodtrends.stats import pairwise_ks
from moodtrends.synth import generate_corpus, make_trend_spec, parse_profile

YEARS = range(2007, 2017)


def step_specs(noise: float = 0.0):
    return [
        make_trend_spec(MoodScale.DEPRESSION, "step(1, 6, 5)", noise_sd=noise),
        make_trend_spec(MoodScale.VIGOR, "constant(3)", noise_sd=noise),
    ]


class TestProfiles:
    def test_parse_shapes(self):
        fn, label = parse_profile("constant(2.5)")
        assert fn(0) == fn(9) == 2.5
        assert label == "constant(2.5)"
        fn, _ = parse_profile("linear(0.5)")
        assert fn(4) == 2.0
        fn, _ = parse_profile("linear(0.5, 1)")
        assert fn(4) == 3.0
        fn, _ = parse_profile("quadratic(1, 0, 0.25)")
        assert fn(2) == 2.0
        fn, _ = parse_profile("step(1, 6, 5)")
        assert fn(4) == 1 and fn(5) == 6

    def test_bad_profiles_rejected(self):
        for expr in ("wobble(1)", "constant()", "step(1,2)", "linear(a)", "", "step"):
            with pytest.raises(ValueError):
                parse_profile(expr)

    def test_negative_noise_rejected(self):
        with pytest.raises(ValueError):
            make_trend_spec(MoodScale.VIGOR, "constant(1)", noise_sd=-0.1)


class TestGenerateCorpus:
    def test_deterministic_byte_identical(self, default_lexicon):
        a = generate_corpus(step_specs(0.5), YEARS, 5, default_lexicon, seed=42)
        b = generate_corpus(step_specs(0.5), YEARS, 5, default_lexicon, seed=42)
        assert [format_record_line(r) for r in a] == \
            [format_record_line(r) for r in b]

    def test_distinct_seeds_differ(self, default_lexicon):
        a = generate_corpus(step_specs(0.5), YEARS, 5, default_lexicon, seed=42)
        b = generate_corpus(step_specs(0.5), YEARS, 5, default_lexicon, seed=43)
        assert [r.body for r in a] != [r.body for r in b]

    def test_record_count_and_dates(self, default_lexicon):
        records = generate_corpus(step_specs(), YEARS, 50, default_lexicon,
                                  seed=1, origin_year=2006)
        assert len(records) == 500
        assert all(r.compose_date.year == 2006 for r in records)
        years = sorted({r.delivery_year for r in records})
        assert years == list(YEARS)

    def test_unknown_scale_energy_rejected(self, default_lexicon):
        stripped = type(default_lexicon)(
            entries=tuple(e for e in default_lexicon.entries
                          if e.scale is not MoodScale.ANGER),
            version="cut")
        with pytest.raises(ValueError, match="anger"):
            generate_corpus([make_trend_spec(MoodScale.ANGER, "constant(1)")],
                            YEARS, 1, stripped, seed=0)

    def test_empty_year_range_rejected(self, default_lexicon):
        with pytest.raises(ValueError):
            generate_corpus(step_specs(), [], 5, default_lexicon, seed=0)

    def test_bodies_pass_english_filter(self, default_lexicon):
        records = generate_corpus(step_specs(0.5), YEARS, 10, default_lexicon,
                                  seed=9)
        result = filter_english(records)
        assert result.rejected == []

    def test_null_corpus_identical_vectors_and_no_flags(self, default_lexicon, matcher):
        specs = [
            make_trend_spec(MoodScale.DEPRESSION, "constant(2)"),
            make_trend_spec(MoodScale.VIGOR, "constant(3)"),
        ]
        records = generate_corpus(specs, range(2010, 2014), 8, default_lexicon,
                                  seed=5)
        buckets = score_corpus(records, matcher)
        comps = {tuple(v.as_tuple()) for b in buckets.values() for v in b.vectors}
        assert len(comps) == 1  # every email scores (0, 2, 0, 3, 0, 0)/norm
        for dim in (MoodScale.DEPRESSION, MoodScale.VIGOR):
            matrix = pairwise_ks(buckets, dim)
            assert all(flag == "none" for flag in matrix.flags.values())

    def test_planted_scales_only_when_intensity_positive(self, default_lexicon, matcher):
        specs = [make_trend_spec(MoodScale.FATIGUE, "step(0, 4, 2)")]
        records = generate_corpus(specs, range(2010, 2014), 6, default_lexicon,
                                  seed=7)
        buckets = score_corpus(records, matcher)
        # years below the step have intensity 0: no lexicon terms at all
        for year in (2010, 2011):
            assert buckets[year].zero_match_count == 6
            assert buckets[year].vectors == []
        for year in (2012, 2013):
            assert buckets[year].zero_match_count == 0
            assert all(v.component(MoodScale.FATIGUE) == 1.0
                       for v in buckets[year].vectors)

    def test_step_corpus_flags_cross_step_pairs(self, default_lexicon, matcher):
        records = generate_corpus(step_specs(0.0), YEARS, 50, default_lexicon,
                                  seed=2006)
        buckets = score_corpus(records, matcher)
        matrix = pairwise_ks(buckets, MoodScale.DEPRESSION)
        years = sorted(buckets)
        low_years, high_years = years[:5], years[5:]
        for ya in low_years:
            for yb in high_years:
                assert matrix.flags[(ya, yb)] == "significant", (ya, yb)
        # permutation oracle agrees the planted gap is real
        a = buckets[low_years[0]].components(MoodScale.DEPRESSION)
        b = buckets[high_years[0]].components(MoodScale.DEPRESSION)
        assert mc_perm_p(a, b, resamples=100_000, seed=11) < 0.05

    def test_origin_year_after_first_bucket_rejected(self, default_lexicon):
        with pytest.raises(ValueError):
            generate_corpus(step_specs(), YEARS, 2, default_lexicon, seed=0,
                            origin_year=2012)

    def test_planted_rising_trend_gives_monotone_fit(self, default_lexicon, matcher):
        from moodtrends.stats import build_trend
        # the anchor is large so the depression component stays in the
        # gently-curved region where a global quadratic remains monotone
        specs = [
            make_trend_spec(MoodScale.DEPRESSION, "linear(1, 1)"),
            make_trend_spec(MoodScale.VIGOR, "constant(15)"),
        ]
        records = generate_corpus(specs, YEARS, 20, default_lexicon, seed=31)
        buckets = score_corpus(records, matcher)
        trend = build_trend(buckets, MoodScale.DEPRESSION)
        assert not trend.degenerate
        raw_diffs = [b - a for a, b in zip(trend.raw_means, trend.raw_means[1:])]
        assert all(d > 0 for d in raw_diffs)
        fit_diffs = [b - a for a, b in zip(trend.fitted, trend.fitted[1:])]
        assert all(d > 0 for d in fit_diffs)
