import math

import pytest
from hypothesis import given, strategies as st

from statbf.bfcore import (
    BayesFactorResult,
    Decision,
    DecisionRule,
    PriorOdds,
    decide,
    mle_bound_from_loglik,
    one_sided_adjust,
    posterior_prob_h0,
)
from statbf.errors import DomainError, NumericalError

pos = st.floats(1e-8, 1e8)


@pytest.mark.parametrize(
    "bf01, odds, expected, tol",
    [(1.0, 1.0, 0.5, 1e-15), (0.146494, 1.0, 0.1278, 5e-4), (0.1336, 1.0, 0.1178, 5e-4)],
)
def test_posterior_prob_h0(bf01, odds, expected, tol):
    assert posterior_prob_h0(bf01, PriorOdds(odds)) == pytest.approx(expected, abs=tol)


@given(pos, pos)
def test_posterior_complementary(bf, odds):
    total = posterior_prob_h0(bf, PriorOdds(odds)) + posterior_prob_h0(1 / bf, PriorOdds(1 / odds))
    assert total == pytest.approx(1.0, abs=1e-12)


@given(pos, pos, st.floats(1.01, 100))
def test_posterior_increasing(bf, odds, k):
    assert posterior_prob_h0(bf * k, PriorOdds(odds)) >= posterior_prob_h0(bf, PriorOdds(odds))
    assert posterior_prob_h0(bf, PriorOdds(odds * k)) >= posterior_prob_h0(bf, PriorOdds(odds))


def test_prior_odds_from_prob():
    assert PriorOdds.from_prob(0.5).odds0 == 1.0
    assert PriorOdds.from_prob(0.8).odds0 == pytest.approx(4.0)


def test_mle_bound():
    assert mle_bound_from_loglik(-3.2, -3.2) == 1.0
    assert mle_bound_from_loglik(-0.5 * 1.96**2, 0.0) == pytest.approx(0.1465, abs=5e-5)
    ll0 = 100 * math.log(0.5)
    ll1 = 60 * math.log(0.6) + 40 * math.log(0.4)
    assert mle_bound_from_loglik(ll0, ll1) == pytest.approx(0.1336, abs=5e-4)
    # mpmath: 0.5^100 / (0.6^60 0.4^40)
    assert mle_bound_from_loglik(ll0, ll1) == pytest.approx(0.133513677251317, rel=1e-12)


def test_mle_bound_rejects_non_maximum():
    with pytest.raises(DomainError):
        mle_bound_from_loglik(0.0, -1.0)


def test_one_sided_adjust():
    assert one_sided_adjust(0.1465) == pytest.approx(0.2930)
    assert one_sided_adjust(0.5) == 1.0
    assert one_sided_adjust(0.1336) == pytest.approx(0.2672)


def test_decide():
    assert decide(2.0, DecisionRule(1.0)) is Decision.GUESS_A
    assert decide(0.5, DecisionRule(1.0)) is Decision.GUESS_NOT_A
    assert decide(1.0, DecisionRule(1.0)) is Decision.GUESS_NOT_A


@given(pos, pos, st.floats(1e-3, 1e3))
def test_decide_scale_invariant(bf, lam, c):
    # Exact ties can flip under rounding, so compare only clearly separated pairs.
    if abs(math.log(bf) - math.log(lam)) > 1e-9:
        assert decide(bf, DecisionRule(lam)) == decide(bf * c, DecisionRule(lam * c))


def test_result_validation():
    with pytest.raises(DomainError):
        BayesFactorResult(0.0, "occam")
    with pytest.raises(DomainError):
        BayesFactorResult(1.0, "mystery")
    with pytest.raises(NumericalError):
        BayesFactorResult.from_log(1e4, "occam")
    r = BayesFactorResult(4.0, "bound")
    assert r.bf10 == 0.25
    assert r.log_bf01 == pytest.approx(math.log(4.0))
