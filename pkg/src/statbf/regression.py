"""F-statistic Bayes factor for nested linear models.

The Connelly expression ``n^(-d/2) (1 + d F / (n - k))^(n/2)`` grows with F,
so it measures evidence *for* the larger model. It is read as BF10 and
inverted; the raw value is kept in the diagnostics as ``bf10``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bfcore import BayesFactorResult
from .errors import DomainError


@dataclass(frozen=True)
class NestedFTest:
    n: int
    k: int
    d: int
    F: float

    def __post_init__(self):
        if self.k < 1 or self.d < 1:
            raise DomainError("k and d must be >= 1")
        if self.d > self.k:
            raise DomainError("d cannot exceed k")
        if self.n <= self.k:
            raise DomainError(f"need n > k, got n={self.n}, k={self.k}")
        if not (self.F >= 0 and math.isfinite(self.F)):
            raise DomainError("F must be finite and nonnegative")


def connelly_log_bf10(test: NestedFTest) -> float:
    return -0.5 * test.d * math.log(test.n) + 0.5 * test.n * math.log1p(test.d * test.F / (test.n - test.k))


def connelly_bf(test: NestedFTest) -> BayesFactorResult:
    log_bf10 = connelly_log_bf10(test)
    return BayesFactorResult.from_log(-log_bf10, "connelly-f", bf10=math.exp(min(log_bf10, 709.0)), log_bf10=log_bf10)


def f_from_t(t: float) -> tuple[float, int]:
    """A single-coefficient t test enters as F = t^2 with d = 1."""
    if not math.isfinite(t):
        raise DomainError("t must be finite")
    return t * t, 1
