"""Special functions, quadrature and root finding used throughout the package."""

from __future__ import annotations

import math
import sys
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

from scipy import integrate as _integrate
from scipy import optimize as _optimize
from scipy.special import betaln

from .errors import BracketError, ConvergenceError, DomainError

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_SQRT_HALF = math.sqrt(0.5)


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 200

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be at least 1")


DEFAULT_QUADRATURE = QuadratureSpec()


def _finite(x: float, name: str = "x") -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x!r}")
    return x


def std_normal_pdf(x: float) -> float:
    x = _finite(x)
    return _INV_SQRT_2PI * math.exp(-0.5 * x * x)


def std_normal_cdf(x: float) -> float:
    x = _finite(x)
    return 0.5 * math.erfc(-x * _SQRT_HALF)


def std_normal_sf(x: float) -> float:
    """Upper tail 1 - Phi(x), without cancellation for large x."""
    x = _finite(x)
    return 0.5 * math.erfc(x * _SQRT_HALF)


def two_sided_p_value(t: float) -> float:
    return math.erfc(abs(_finite(t, "t")) * _SQRT_HALF)


def _lower_tail_quantile(p: float) -> float:
    # Bisection for p <= 0.5; Phi(-40) underflows, so the bracket is safe.
    lo, hi = -40.0, 0.0
    for _ in range(2000):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if std_normal_cdf(mid) < p:
            lo = mid
        else:
            hi = mid
    return hi if abs(std_normal_cdf(hi) - p) <= abs(std_normal_cdf(lo) - p) else lo


def std_normal_quantile(p: float) -> float:
    """Inverse of the standard normal CDF by bracketed bisection.

    The upper half is solved through the complement ``1 - p``, which is exact
    in floating point for ``p >= 0.5``, so tail accuracy is symmetric.
    """
    p = float(p)
    if not (0.0 < p < 1.0):
        raise DomainError(f"p must lie in (0, 1), got {p!r}")
    if p == 0.5:
        return 0.0
    if p < 0.5:
        return _lower_tail_quantile(p)
    return -_lower_tail_quantile(1.0 - p)


def log_choose(n: int, r: int) -> float:
    """Natural log of the binomial coefficient C(n, r)."""
    n, r = int(n), int(r)
    if n < 0 or r < 0 or r > n:
        raise DomainError(f"log_choose requires 0 <= r <= n, got n={n}, r={r}")
    k = min(r, n - r)
    if k == 0:
        return 0.0
    # log C(n, k) = -log(n + 1) - log B(n - k + 1, k + 1); betaln keeps full
    # relative precision where a difference of three lgammas cancels badly.
    return -math.log1p(n) - float(betaln(n - k + 1, k + 1))


def _pieces(lower: float, upper: float, points: Sequence[float] | None):
    cuts = [lower]
    if points:
        cuts += sorted(p for p in set(points) if lower < p < upper)
    cuts.append(upper)
    return list(zip(cuts[:-1], cuts[1:]))


def integrate(
    f: Callable[[float], float],
    lower: float,
    upper: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
    points: Sequence[float] | None = None,
) -> float:
    """Adaptive Gauss-Kronrod quadrature of ``f`` over ``[lower, upper]``.

    Infinite endpoints are handled by QUADPACK's rational substitution onto
    the unit interval. ``points`` splits the domain into separately refined
    pieces, which matters when the integrand has features on very different
    scales (a narrow normal kernel against a heavy-tailed factor, say).

    Raises ``ConvergenceError`` carrying the best estimate if the requested
    tolerance ``max(abs_tol, rel_tol * |value|)`` is not met.
    """
    lower, upper = float(lower), float(upper)
    if math.isnan(lower) or math.isnan(upper):
        raise DomainError("integration limits must not be NaN")
    if lower == upper:
        return 0.0
    if lower > upper:
        return -integrate(f, upper, lower, spec, points)

    pieces = _pieces(lower, upper, points)
    total, err_total, failures = 0.0, 0.0, []
    for a, b in pieces:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", _integrate.IntegrationWarning)
            out = _integrate.quad(
                f,
                a,
                b,
                epsabs=spec.abs_tol / len(pieces),
                epsrel=spec.rel_tol,
                limit=spec.max_subdivisions,
                full_output=1,
            )
        value, err = out[0], out[1]
        if len(out) > 3:
            failures.append(out[3])
        total += value
        err_total += err
    if not math.isfinite(total):
        raise ConvergenceError("integral is not finite", total, err_total)
    if err_total > max(spec.abs_tol, spec.rel_tol * abs(total)):
        detail = failures[0].splitlines()[0] if failures else "tolerance not met"
        raise ConvergenceError(f"quadrature did not converge: {detail}", total, err_total)
    return total


def find_root(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12) -> float:
    if not tol > 0:
        raise DomainError("tol must be positive")
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return float(lo)
    if fhi == 0.0:
        return float(hi)
    if not (math.isfinite(flo) and math.isfinite(fhi)) or (flo > 0) == (fhi > 0):
        raise BracketError(f"no sign change on [{lo}, {hi}]: f(lo)={flo!r}, f(hi)={fhi!r}")
    return float(_optimize.brentq(f, lo, hi, xtol=tol, rtol=4 * sys.float_info.epsilon, maxiter=500))
