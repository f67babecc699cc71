import csv
import math

import numpy as np
import pytest

from statbf.errors import DomainError, UndefinedFractionError
from statbf.numerics import two_sided_p_value
from statbf.simulate import (
    MixtureConfig,
    NormalSpread,
    ParameterPrior,
    UniformT,
    band_analysis,
    band_prediction,
    format_alternative,
    p_value_uniformity,
    parse_alternative,
    rejection_audit,
    run_mixture,
    sequential_demo,
)

REPS = 200_000


def test_all_null():
    recs = run_mixture(MixtureConfig(REPS, NormalSpread(40), prior_h0=1.0, seed=1))
    assert recs.is_null.all()
    assert abs(recs.t.mean()) < 3 / math.sqrt(REPS)


def test_no_null():
    recs = run_mixture(MixtureConfig(10_000, NormalSpread(40), prior_h0=0.0, seed=1))
    assert not recs.is_null.any()
    assert rejection_audit(recs, 0.05).fraction_true_null == 0.0


def test_identical_predictives_indistinguishable():
    from scipy import stats

    recs = run_mixture(MixtureConfig(REPS, NormalSpread(1.0), seed=2))
    ks = stats.ks_2samp(recs.t[recs.is_null], recs.t[~recs.is_null]).statistic
    assert ks < 0.01


def test_null_rejection_rate():
    recs = run_mixture(MixtureConfig(REPS, NormalSpread(40), prior_h0=1.0, seed=3))
    assert np.mean(np.abs(recs.t) > 1.96) == pytest.approx(0.05, abs=0.002)


def test_p_value_invariant():
    recs = run_mixture(MixtureConfig(2_000, UniformT(20), seed=4))
    for rec in recs:
        assert rec.p_value == pytest.approx(two_sided_p_value(rec.t), abs=1e-12)
        assert rec.hypothesis in ("H0", "H1")


def test_reproducible_and_thread_invariant():
    cfg = MixtureConfig(150_000, ParameterPrior(0.5, 20, 2.0), seed=99)
    a = run_mixture(cfg, workers=1)
    b = run_mixture(cfg, workers=4)
    assert np.array_equal(a.t, b.t) and np.array_equal(a.is_null, b.is_null)
    c = run_mixture(MixtureConfig(150_000, ParameterPrior(0.5, 20, 2.0), seed=100))
    assert not np.array_equal(a.t, c.t)


@pytest.mark.parametrize(
    "alt", [NormalSpread(40.0), UniformT(20.0), ParameterPrior(1.0, 10, 1.0)]
)
def test_band_matches_closed_form(alt):
    recs = run_mixture(MixtureConfig(REPS, alt, seed=5))
    res = band_analysis(recs, (1.96, 2.58))
    p0, p1, frac = band_prediction(alt, (1.96, 2.58))
    n0, n1 = res.counts["h0"], res.counts["h1"]
    assert abs(res.p_band_h0 - p0) < 3 * math.sqrt(p0 * (1 - p0) / n0)
    assert abs(res.p_band_h1 - p1) < 3 * math.sqrt(p1 * (1 - p1) / n1)
    hits = res.counts["h0_in_band"] + res.counts["h1_in_band"]
    assert abs(res.null_fraction - frac) < 3 * math.sqrt(frac * (1 - frac) / hits) + 0.01


def test_band_two_sided():
    recs = run_mixture(MixtureConfig(REPS, NormalSpread(1.0), prior_h0=1.0, seed=6))
    one = band_analysis(recs, (1.96, 2.58)).p_band_h0
    two = band_analysis(recs, (1.96, 2.58), two_sided=True).p_band_h0
    assert two == pytest.approx(2 * one, rel=0.1)


def test_band_errors():
    recs = run_mixture(MixtureConfig(100, NormalSpread(1.0), seed=7))
    with pytest.raises(DomainError):
        band_analysis(recs, (2.0, 1.0))
    with pytest.raises(UndefinedFractionError) as info:
        band_analysis(recs, (50.0, 60.0))
    assert info.value.counts["h0_in_band"] == 0


def test_audit_uninformative_rejections():
    recs = run_mixture(MixtureConfig(REPS, NormalSpread(1.0), seed=8))
    res = rejection_audit(recs, 0.05)
    se = math.sqrt(0.25 / res.rejections)
    assert abs(res.fraction_true_null - 0.5) < 3 * se


def test_audit_band_near_p05():
    # density-ratio oracle: phi(1.96) / N(1.96; 0, 40) = 0.972 -> null share ~0.49
    recs = run_mixture(MixtureConfig(REPS * 5, NormalSpread(40.0), seed=9))
    assert band_analysis(recs, (1.96, 2.00)).null_fraction >= 0.25
    assert rejection_audit(recs, 0.05).rejections > 0


def test_audit_no_rejections():
    recs = run_mixture(MixtureConfig(5, NormalSpread(1.0), prior_h0=1.0, seed=1))
    recs.p_value[:] = 1.0
    with pytest.raises(UndefinedFractionError):
        rejection_audit(recs, 0.05)


def test_p_values_uniform_under_null():
    recs = run_mixture(MixtureConfig(REPS, UniformT(20), seed=10))
    n0 = int(recs.is_null.sum())
    assert p_value_uniformity(recs) < 1.63 / math.sqrt(n0)


def test_sequential_single_look():
    res = sequential_demo(1, 0.05, 10.0, 40_000, seed=1)
    assert res.freq_ever_reject_classical == pytest.approx(0.05, abs=3 * math.sqrt(0.05 * 0.95 / 40_000))


def test_sequential_ordering():
    freqs = [sequential_demo(L, 0.05, 10.0, 4_000, seed=2).freq_ever_reject_classical for L in (1, 10, 100)]
    assert freqs[0] < freqs[1] < freqs[2]
    res = sequential_demo(300, 0.05, 10.0, 4_000, seed=2)
    assert res.freq_ever_cross_bayes < res.freq_ever_reject_classical


def test_sequential_thread_invariant():
    assert sequential_demo(50, reps=3_000, seed=5, workers=1) == sequential_demo(50, reps=3_000, seed=5, workers=3)


def test_csv_dump(tmp_path):
    recs = run_mixture(MixtureConfig(50, UniformT(20), seed=1))
    path = tmp_path / "records.csv"
    recs.to_csv(path)
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["hypothesis", "t", "p_value"]
    assert len(rows) == 51
    assert float(rows[1][1]) == recs.t[0]


@pytest.mark.parametrize("text", ["A:40.0", "uniform:20.0", "prior:0.5,10,2.0"])
def test_alternative_round_trip(text):
    assert format_alternative(parse_alternative(text)) == text


@pytest.mark.parametrize("text", ["B:1", "A:x", "prior:1,2", "A:0.5"])
def test_alternative_parse_errors(text):
    with pytest.raises(DomainError):
        parse_alternative(text)


def test_config_validation():
    with pytest.raises(DomainError):
        MixtureConfig(0)
    with pytest.raises(DomainError):
        MixtureConfig(10, prior_h0=1.5)
    with pytest.raises(DomainError):
        MixtureConfig(10, seed=-1)
