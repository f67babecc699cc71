"""Coin tossing: H0 theta = theta0 against a Beta prior under H1."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from scipy.special import betaln

from .bfcore import BayesFactorResult, mle_bound_from_loglik
from .errors import DomainError

# (n, r) pairs that barely reject theta = 1/2 at the two-sided 5% level.
ELS_EXPERIMENTS = ((50, 32), (100, 60), (400, 220), (10_000, 5_098))


@dataclass(frozen=True)
class BinomialExperiment:
    n: int
    r: int
    theta0: float = 0.5

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("n must be >= 1")
        if not 0 <= self.r <= self.n:
            raise DomainError(f"need 0 <= r <= n, got r={self.r}, n={self.n}")
        if not 0.0 < self.theta0 < 1.0:
            raise DomainError("theta0 must lie in (0, 1)")


@dataclass(frozen=True)
class BetaPrior:
    a: float = 1.0
    b: float = 1.0

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise DomainError("Beta parameters must be positive")


UNIFORM = BetaPrior(1.0, 1.0)


def _xlogy(x: float, y: float) -> float:
    # 0 * log(0) = 0, so boundary outcomes r in {0, n} stay finite.
    return 0.0 if x == 0 else x * math.log(y)


def log_likelihood(exp: BinomialExperiment, theta: float) -> float:
    """Log-likelihood of the toss sequence (no binomial coefficient; it cancels in every ratio)."""
    return _xlogy(exp.r, theta) + _xlogy(exp.n - exp.r, 1.0 - theta)


def binom_bf(exp: BinomialExperiment, prior: BetaPrior = UNIFORM) -> BayesFactorResult:
    log_marginal_h1 = float(betaln(exp.r + prior.a, exp.n - exp.r + prior.b) - betaln(prior.a, prior.b))
    log_bf = log_likelihood(exp, exp.theta0) - log_marginal_h1
    return BayesFactorResult.from_log(log_bf, "binomial-conjugate", a=prior.a, b=prior.b)


def binom_mle_bound(exp: BinomialExperiment) -> float:
    """Likelihood ratio of theta0 against the MLE r/n: a lower bound on BF01 for any prior."""
    theta_hat = exp.r / exp.n
    return mle_bound_from_loglik(log_likelihood(exp, exp.theta0), log_likelihood(exp, theta_hat))


@dataclass(frozen=True)
class Table1Row:
    n: int
    r: int
    bf01: float


def table1(rows: Iterable[tuple[int, int]] = ELS_EXPERIMENTS, prior: BetaPrior = UNIFORM) -> list[Table1Row]:
    rows = list(rows)
    if not rows:
        raise DomainError("rows must be nonempty")
    return [Table1Row(n, r, binom_bf(BinomialExperiment(n, r), prior).bf01) for n, r in rows]
