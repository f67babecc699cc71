"""Evidence types, odds conversions, likelihood bounds and the threshold decision rule.

Every Bayes factor in this package is stored as BF01, evidence for the null
over the alternative. ``BayesFactorResult.bf10`` gives the reciprocal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

from .errors import DomainError, NumericalError

METHODS = (
    "occam",
    "exact-normal",
    "approx-normal",
    "cauchy-asymptotic",
    "cauchy-quadrature",
    "binomial-conjugate",
    "connelly-f",
    "bound",
)


def _positive(x: float, name: str) -> float:
    x = float(x)
    if not (x > 0 and math.isfinite(x)):
        raise DomainError(f"{name} must be positive and finite, got {x!r}")
    return x


@dataclass(frozen=True)
class BayesFactorResult:
    bf01: float
    method: str
    diagnostics: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        _positive(self.bf01, "bf01")
        if self.method not in METHODS:
            raise DomainError(f"unknown method tag {self.method!r}")

    @classmethod
    def from_log(cls, log_bf01: float, method: str, **diagnostics: float) -> "BayesFactorResult":
        if not -745.0 < log_bf01 < 709.0:
            raise NumericalError(f"BF01 = exp({log_bf01:.6g}) is outside double precision range")
        return cls(math.exp(log_bf01), method, dict(diagnostics))

    @property
    def bf10(self) -> float:
        return 1.0 / self.bf01

    @property
    def log_bf01(self) -> float:
        return math.log(self.bf01)


@dataclass(frozen=True)
class PriorOdds:
    """Prior odds p(H0)/p(H1)."""

    odds0: float = 1.0

    def __post_init__(self):
        _positive(self.odds0, "odds0")

    @classmethod
    def from_prob(cls, prob_h0: float) -> "PriorOdds":
        if not 0.0 < prob_h0 < 1.0:
            raise DomainError("prob_h0 must lie in (0, 1)")
        return cls(prob_h0 / (1.0 - prob_h0))


@dataclass(frozen=True)
class DecisionRule:
    """Critical likelihood ratio: guess A only when its evidence exceeds ``lam``."""

    lam: float = 1.0

    def __post_init__(self):
        _positive(self.lam, "lambda")


class Decision(str, Enum):
    GUESS_A = "guess-A"
    GUESS_NOT_A = "guess-not-A"


def posterior_odds(bf01: float, prior: PriorOdds = PriorOdds()) -> float:
    return _positive(bf01, "bf01") * prior.odds0


def posterior_prob_h0(bf01: float, prior: PriorOdds = PriorOdds()) -> float:
    bf01 = _positive(bf01, "bf01")
    # 1 / (1 + 1/(bf01 * odds0)), written to stay accurate for extreme odds
    log_odds = math.log(bf01) + math.log(prior.odds0)
    if log_odds >= 0:
        return 1.0 / (1.0 + math.exp(-log_odds))
    e = math.exp(log_odds)
    return e / (1.0 + e)


def mle_bound_from_loglik(loglik_null: float, loglik_mle: float) -> float:
    """Lower bound on BF01 valid for any prior under H1.

    The alternative's marginal likelihood can never exceed the likelihood at
    the maximum, so the likelihood ratio against the MLE bounds BF01 below.
    """
    if not loglik_mle >= loglik_null:
        raise DomainError(
            f"loglik_mle ({loglik_mle}) must be >= loglik_null ({loglik_null}); "
            "the MLE maximizes the likelihood"
        )
    return math.exp(loglik_null - loglik_mle)


def one_sided_adjust(bound: float) -> float:
    """Double a bound to account for splitting H1's mass evenly around the null."""
    return 2.0 * _positive(bound, "bound")


def decide(bf_for_a: float, rule: DecisionRule = DecisionRule()) -> Decision:
    """Guess A iff its likelihood ratio strictly exceeds the critical ratio.

    Ties go to not-A.
    """
    if _positive(bf_for_a, "bf") > rule.lam:
        return Decision.GUESS_A
    return Decision.GUESS_NOT_A
