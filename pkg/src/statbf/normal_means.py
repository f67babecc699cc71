"""Bayes factors for the known-variance normal means problem.

The observed statistic is the t-ratio ``t = sqrt(n) (ybar - theta0) / sigma``,
standard normal under H0. Under H1 its prior predictive is a location mixture
of unit-variance normals; a N(theta0, tau^2) prior gives N(0, A) with spread
factor ``A = 1 + n tau^2 / sigma^2``, and the Bayes factor is a ratio of two
normal ordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Union

from .bfcore import BayesFactorResult
from .errors import (
    CalibrationError,
    DegeneratePriorError,
    DomainError,
    InfeasibleAssessmentError,
    UnsupportedPriorError,
)
from .numerics import (
    DEFAULT_QUADRATURE,
    QuadratureSpec,
    find_root,
    integrate,
    std_normal_cdf,
    std_normal_pdf,
    std_normal_quantile,
)

LOG_2PI = math.log(2.0 * math.pi)
# Default t for the Lindley sweep: the two-sided 1% point.
T_ONE_PERCENT = 2.5758


@dataclass(frozen=True)
class NormalMeansProblem:
    t: float
    n: int
    sigma: float = 1.0
    theta0: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.t):
            raise DomainError("t must be finite")
        if self.n < 1:
            raise DomainError("n must be >= 1")
        if not self.sigma > 0:
            raise DomainError("sigma must be positive")

    @classmethod
    def from_ybar(cls, ybar: float, n: int, sigma: float = 1.0, theta0: float = 0.0):
        return cls(math.sqrt(n) * (ybar - theta0) / sigma, n, sigma, theta0)

    @property
    def ybar(self) -> float:
        return self.theta0 + self.t * self.sigma / math.sqrt(self.n)


@dataclass(frozen=True)
class NormalPrior:
    """N(mu, tau^2) prior on the mean under H1; ``tau == 0`` is a point mass."""

    mu: float = 0.0
    tau: float = 1.0

    def __post_init__(self):
        if not self.tau >= 0:
            raise DomainError("tau must be nonnegative")

    def eta(self, theta0: float) -> float:
        """Standardized offset (theta0 - mu) / tau of the prior centre from the null."""
        if self.tau == 0:
            raise DegeneratePriorError("eta is undefined for a point-mass prior")
        return (theta0 - self.mu) / self.tau


def point_mass(at: float = 0.0) -> NormalPrior:
    return NormalPrior(at, 0.0)


@dataclass(frozen=True)
class CauchyPrior:
    location: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        if not self.scale > 0:
            raise DomainError("Cauchy scale must be positive")


Prior = Union[NormalPrior, CauchyPrior]


@dataclass(frozen=True)
class SpreadFactor:
    """Variance of the t-ratio's prior predictive under H1."""

    A: float

    def __post_init__(self):
        if not (self.A >= 1 and math.isfinite(self.A)):
            raise InfeasibleAssessmentError(f"spread factor must satisfy 1 <= A < inf, got {self.A!r}")

    @property
    def rho(self) -> float:
        """sigma / (sqrt(n) tau), from A = 1 + rho^-2."""
        return math.inf if self.A == 1 else 1.0 / math.sqrt(self.A - 1.0)

    @property
    def sqrt_A(self) -> float:
        return math.sqrt(self.A)


def _as_spread(A: SpreadFactor | float) -> SpreadFactor:
    return A if isinstance(A, SpreadFactor) else SpreadFactor(float(A))


def spread_from_prior(n: int, sigma: float, tau: float) -> SpreadFactor:
    if n < 1 or not sigma > 0 or not tau >= 0:
        raise DomainError("need n >= 1, sigma > 0, tau >= 0")
    return SpreadFactor(1.0 + n * tau * tau / (sigma * sigma))


def occam_bf(t: float, A: SpreadFactor | float) -> BayesFactorResult:
    """BF01 = phi(t) / N(t; 0, A) = sqrt(A) exp(-t^2 (1 - 1/A) / 2)."""
    s = _as_spread(A)
    log_bf = 0.5 * math.log(s.A) - 0.5 * t * t * (1.0 - 1.0 / s.A)
    return BayesFactorResult.from_log(log_bf, "occam", A=s.A, rho=s.rho)


def _check_symmetric(problem: NormalMeansProblem, prior: NormalPrior) -> None:
    if not isinstance(prior, NormalPrior):
        raise UnsupportedPriorError("a normal prior is required")
    if prior.tau == 0:
        raise DegeneratePriorError("tau = 0 collapses H1 onto H0")
    if not math.isclose(prior.mu, problem.theta0, rel_tol=0.0, abs_tol=1e-12):
        raise UnsupportedPriorError(
            f"prior mean {prior.mu} differs from theta0 {problem.theta0}; "
            "only the centred prior (eta = 0) is supported"
        )


def exact_bf(problem: NormalMeansProblem, prior: NormalPrior) -> BayesFactorResult:
    """Closed-form BF01 in terms of rho = sigma / (sqrt(n) tau)."""
    _check_symmetric(problem, prior)
    rho = problem.sigma / (math.sqrt(problem.n) * prior.tau)
    inv_rho2 = 1.0 / (rho * rho)
    log_bf = 0.5 * math.log1p(inv_rho2) - problem.t**2 / (2.0 * (1.0 + rho * rho))
    return BayesFactorResult.from_log(log_bf, "exact-normal", rho=rho, A=1.0 + inv_rho2)


def approx_bf(problem: NormalMeansProblem, prior: NormalPrior) -> BayesFactorResult:
    """Large-tau form (sqrt(n) tau / sigma) exp(-t^2 / 2)."""
    _check_symmetric(problem, prior)
    ratio = math.sqrt(problem.n) * prior.tau / problem.sigma
    log_bf = math.log(ratio) - 0.5 * problem.t**2
    return BayesFactorResult.from_log(log_bf, "approx-normal", A=1.0 + ratio * ratio, rho=1.0 / ratio)


def posterior_under_alternative(ybar: float, n: int, sigma: float, prior: NormalPrior) -> tuple[float, float]:
    """Conjugate posterior (mean, variance) of the mean under H1."""
    if prior.tau == 0:
        raise DegeneratePriorError("tau = 0 leaves no posterior to update")
    precision = n / sigma**2 + 1.0 / prior.tau**2
    var = 1.0 / precision
    mean = var * (n * ybar / sigma**2 + prior.mu / prior.tau**2)
    return mean, var


def savage_dickey_bf(problem: NormalMeansProblem, prior: NormalPrior) -> BayesFactorResult:
    """BF01 as posterior over prior density, both evaluated at theta0."""
    _check_symmetric(problem, prior)
    mean, var = posterior_under_alternative(problem.ybar, problem.n, problem.sigma, prior)
    log_post = -0.5 * (LOG_2PI + math.log(var)) - (problem.theta0 - mean) ** 2 / (2.0 * var)
    log_prior = -0.5 * LOG_2PI - math.log(prior.tau) - (problem.theta0 - prior.mu) ** 2 / (2.0 * prior.tau**2)
    return BayesFactorResult.from_log(
        log_post - log_prior, "exact-normal", posterior_mean=mean, posterior_var=var
    )


def _t_scale(prior: Prior, n: int, sigma: float, theta0: float) -> tuple[float, float]:
    """Centre and scale of the prior, pushed onto the t-ratio scale."""
    k = math.sqrt(n) / sigma
    if isinstance(prior, CauchyPrior):
        return k * (prior.location - theta0), k * prior.scale
    return k * (prior.mu - theta0), k * prior.tau


def _cauchy_density(c: float, centre: float, scale: float) -> float:
    z = (c - centre) / scale
    return 1.0 / (math.pi * scale * (1.0 + z * z))


def _cauchy_breakpoints(kernel_centres: list[float], centre: float, scale: float) -> list[float]:
    # Split at the normal kernel's width around each kernel centre, and at
    # decades of the prior scale around its centre until the kernel region is
    # covered; a very narrow prior otherwise hides its shoulders from QUADPACK.
    points = [centre]
    for c in kernel_centres:
        points += [c - 8.0, c, c + 8.0]
    reach = max(abs(c - centre) for c in kernel_centres) + 8.0
    step = scale
    while True:
        points += [centre - step, centre + step]
        if step >= reach:
            break
        step *= 10.0
    return points


def predictive_pdf(
    x: float,
    prior: Prior,
    n: int,
    sigma: float = 1.0,
    theta0: float = 0.0,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Prior predictive density of the t-ratio under H1, evaluated at ``x``."""
    centre, scale = _t_scale(prior, n, sigma, theta0)
    if isinstance(prior, NormalPrior):
        A = 1.0 + scale * scale
        return std_normal_pdf((x - centre) / math.sqrt(A)) / math.sqrt(A)

    def integrand(c):
        return std_normal_pdf(x - c) * _cauchy_density(c, centre, scale)

    return integrate(integrand, -math.inf, math.inf, spec, points=_cauchy_breakpoints([x], centre, scale))


def interval_probability(
    prior: Prior,
    n: int,
    sigma: float,
    halfwidth: float,
    theta0: float = 0.0,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Prior predictive probability that |t| < halfwidth under H1."""
    if not halfwidth > 0:
        raise DomainError("halfwidth must be positive")
    w = float(halfwidth)
    centre, scale = _t_scale(prior, n, sigma, theta0)
    if isinstance(prior, NormalPrior):
        s = math.sqrt(1.0 + scale * scale)
        return std_normal_cdf((w - centre) / s) - std_normal_cdf((-w - centre) / s)

    # Integrate the normal interval mass over the mixing distribution instead
    # of nesting a density quadrature inside an interval quadrature.
    def integrand(c):
        return (std_normal_cdf(w - c) - std_normal_cdf(-w - c)) * _cauchy_density(c, centre, scale)

    points = _cauchy_breakpoints([-w, w], centre, scale)
    return integrate(integrand, -math.inf, math.inf, spec, points=points)


def _z_for(coverage: float) -> float:
    if not 0.0 < coverage < 1.0:
        raise DomainError("coverage must lie in (0, 1)")
    return std_normal_quantile(0.5 * (1.0 + coverage))


def calibrate_spread(halfwidth: float, coverage: float = 0.95) -> SpreadFactor:
    """Spread factor A whose predictive puts ``coverage`` inside (-halfwidth, halfwidth)."""
    if not halfwidth > 0:
        raise DomainError("halfwidth must be positive")
    z = _z_for(coverage)
    A = (halfwidth / z) ** 2
    if A < 1.0 - 1e-12:
        raise InfeasibleAssessmentError(
            f"interval +/-{halfwidth} at {coverage:.3g} coverage implies A = {A:.6g} < 1, "
            "narrower than the null's own sampling spread"
        )
    return SpreadFactor(max(A, 1.0))


def spread_from_null_odds(odds_at_zero: float) -> SpreadFactor:
    """A from the BF01 one would report on seeing t = 0, which equals sqrt(A)."""
    if not odds_at_zero >= 1:
        raise DomainError("BF01 at t = 0 is sqrt(A) >= 1; odds below 1 are not attainable")
    return SpreadFactor(float(odds_at_zero) ** 2)


def calibrate_cauchy(
    n: int,
    sigma: float = 1.0,
    coverage: float = 0.95,
    scale: float = 1.0,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> tuple[float, float]:
    """Half-width of the central ``coverage`` interval of t under a Cauchy(0, scale) prior.

    Returns ``(halfwidth, A_equiv)`` where ``A_equiv`` is the spread factor a
    normal prior would need for the same interval.
    """
    z = _z_for(coverage)
    prior = CauchyPrior(0.0, scale)

    def excess(w):
        if w <= 0:
            return -coverage
        return interval_probability(prior, n, sigma, w, spec=spec) - coverage

    hi = max(1.0, math.sqrt(n) * scale / sigma) * z
    for _ in range(200):
        if excess(hi) > 0:
            break
        hi *= 2.0
    else:
        raise CalibrationError("could not bracket the calibration half-width")
    try:
        w = find_root(excess, 0.0, hi, tol=1e-10 * hi)
    except Exception as exc:
        raise CalibrationError(f"calibration root finding failed: {exc}") from exc
    return w, (w / z) ** 2


def cauchy_bf_asymptotic(t: float, n: float, sigma: float = 1.0) -> BayesFactorResult:
    """Large-n BF01 for a Cauchy(theta0, sigma) prior: sqrt(pi n / 2) exp(-t^2 / 2).

    The asymptotic posterior ordinate (sqrt(n) / (sqrt(2 pi) sigma)) exp(-t^2/2)
    is divided by the prior ordinate 1 / (pi sigma); sigma cancels.
    """
    if not n > 0 or not sigma > 0:
        raise DomainError("n and sigma must be positive")
    log_post = 0.5 * math.log(n) - 0.5 * LOG_2PI - math.log(sigma) - 0.5 * t * t
    log_prior = -math.log(math.pi * sigma)
    return BayesFactorResult.from_log(log_post - log_prior, "cauchy-asymptotic")


def cauchy_bf_quadrature(
    problem: NormalMeansProblem,
    prior: CauchyPrior,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> BayesFactorResult:
    """BF01 = phi(t) / p(t | H1) with the Cauchy mixture marginal computed numerically."""
    denom = predictive_pdf(problem.t, prior, problem.n, problem.sigma, problem.theta0, spec)
    num = std_normal_pdf(problem.t)
    return BayesFactorResult(num / denom, "cauchy-quadrature", {"predictive_h1": denom, "density_h0": num})


@dataclass(frozen=True)
class LindleyRow:
    n: int
    bf01: float
    A: float


def lindley_sweep(
    t: float = T_ONE_PERCENT,
    sigma_over_tau: float = 1.0,
    ns: Iterable[int] = (10, 100, 1000, 1_000_000),
) -> list[LindleyRow]:
    """Exact BF01 at fixed t across sample sizes, showing growth with n."""
    ns = list(ns)
    if not ns:
        raise DomainError("ns must be nonempty")
    if not sigma_over_tau > 0:
        raise DomainError("sigma_over_tau must be positive")
    prior = NormalPrior(0.0, 1.0 / sigma_over_tau)
    rows = []
    for n in ns:
        res = exact_bf(NormalMeansProblem(t, int(n), 1.0, 0.0), prior)
        rows.append(LindleyRow(int(n), res.bf01, res.diagnostics["A"]))
    return rows
