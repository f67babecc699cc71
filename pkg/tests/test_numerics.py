import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from statbf.errors import BracketError, ConvergenceError, DomainError
from statbf.numerics import (
    QuadratureSpec,
    find_root,
    integrate,
    log_choose,
    std_normal_cdf,
    std_normal_pdf,
    std_normal_quantile,
)

finite = st.floats(-30, 30, allow_nan=False)


def test_pdf_values():
    assert std_normal_pdf(0) == pytest.approx(0.3989423, abs=1e-7)
    # mpmath.npdf(1.96) at 30 digits
    assert std_normal_pdf(1.96) == pytest.approx(0.0584409443334514644, rel=1e-14)


@given(finite)
def test_pdf_symmetric(x):
    assert std_normal_pdf(x) == std_normal_pdf(-x)


@given(finite)
def test_cdf_complement(x):
    assert std_normal_cdf(x) + std_normal_cdf(-x) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("x, expected", [(0, 0.5), (1.96, 0.9750), (2.58, 0.9950)])
def test_cdf_values(x, expected):
    assert std_normal_cdf(x) == pytest.approx(expected, abs=1e-4)


def test_cdf_against_mpmath():
    for x in [-8.0, -3.3, -1.0, 0.25, 1.96, 4.5]:
        assert std_normal_cdf(x) == pytest.approx(float(mpmath.ncdf(x)), rel=1e-14, abs=1e-16)


def test_cdf_monotone():
    xs = [-10 + 0.01 * i for i in range(2001)]
    vals = [std_normal_cdf(x) for x in xs]
    assert all(a <= b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("fn", [std_normal_pdf, std_normal_cdf])
@pytest.mark.parametrize("bad", [math.inf, -math.inf, math.nan])
def test_non_finite_rejected(fn, bad):
    with pytest.raises(DomainError):
        fn(bad)


def test_quantile_values():
    assert std_normal_quantile(0.5) == 0.0
    # mpmath.findroot on ncdf at 30 digits
    assert std_normal_quantile(0.975) == pytest.approx(1.95996398454005424, abs=1e-12)
    assert std_normal_quantile(0.995) == pytest.approx(2.57582930354890076, abs=1e-12)


@pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5])
def test_quantile_domain(p):
    with pytest.raises(DomainError):
        std_normal_quantile(p)


@given(st.floats(-6, 6))
def test_quantile_inverts_cdf(x):
    assert std_normal_quantile(std_normal_cdf(x)) == pytest.approx(x, abs=1e-8)


@given(st.floats(1e-300, 1 - 1e-16))
def test_quantile_residual(p):
    assert abs(std_normal_cdf(std_normal_quantile(p)) - p) <= 1e-12


def _pascal(n_max):
    rows = [[1]]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        rows.append([1] + [prev[i - 1] + prev[i] for i in range(1, n)] + [1])
    return rows


def test_log_choose_matches_pascal():
    for n, row in enumerate(_pascal(30)):
        for r, c in enumerate(row):
            assert math.exp(log_choose(n, r)) == pytest.approx(c, rel=1e-12)


def test_log_choose_examples():
    assert log_choose(7, 0) == 0.0
    assert log_choose(4, 2) == pytest.approx(math.log(6), rel=1e-14)
    oracle = sum(math.log(k) for k in range(41, 101)) - sum(math.log(k) for k in range(1, 61))
    assert oracle == pytest.approx(64.79056, abs=1e-5)
    assert log_choose(100, 60) == pytest.approx(oracle, rel=1e-12)


@pytest.mark.parametrize("n, r", [(10**7, 1), (10**7, 2), (10**7, 12345), (10**7, 5 * 10**6), (10**6, 999_999)])
def test_log_choose_large_n(n, r):
    mpmath.mp.dps = 40
    exact = float(mpmath.log(mpmath.binomial(n, r)))
    assert log_choose(n, r) == pytest.approx(exact, rel=1e-10)


def test_log_choose_domain():
    with pytest.raises(DomainError):
        log_choose(3, 4)


def test_integrate_normal():
    assert integrate(std_normal_pdf, -math.inf, math.inf) == pytest.approx(1.0, abs=1e-8)
    assert integrate(std_normal_pdf, -1.96, 1.96) == pytest.approx(0.95, abs=1e-4)
    assert abs(integrate(lambda x: x * std_normal_pdf(x), -math.inf, math.inf)) < 1e-10


def test_integrate_reversed_and_split():
    f = lambda x: math.exp(-x)
    assert integrate(f, 1, 0) == pytest.approx(-(1 - math.exp(-1)), rel=1e-12)
    assert integrate(f, 0, math.inf, points=[0.5, 3.0, 50.0]) == pytest.approx(1.0, rel=1e-12)


def test_integrate_deterministic():
    f = lambda x: std_normal_pdf(x) / (1 + x * x)
    a = integrate(f, -math.inf, math.inf, points=[0.0])
    b = integrate(f, -math.inf, math.inf, points=[0.0])
    assert a == b


def test_integrate_budget_exhausted():
    spec = QuadratureSpec(abs_tol=1e-14, rel_tol=1e-14, max_subdivisions=1)
    with pytest.raises(ConvergenceError) as info:
        integrate(lambda x: math.sin(1 / x) if x else 0.0, 0.0, 1.0, spec)
    assert math.isfinite(info.value.estimate)


def test_quadrature_spec_validation():
    with pytest.raises(DomainError):
        QuadratureSpec(abs_tol=0.0)
    with pytest.raises(DomainError):
        QuadratureSpec(max_subdivisions=0)


def test_find_root():
    assert find_root(lambda x: x - 3, 0, 10) == pytest.approx(3, abs=1e-12)
    assert find_root(lambda x: std_normal_cdf(x) - 0.975, 0, 5) == pytest.approx(std_normal_quantile(0.975), abs=1e-10)
    assert find_root(lambda x: x * x - 2, 0, 2) == pytest.approx(math.sqrt(2), abs=1e-12)


def test_find_root_no_bracket():
    with pytest.raises(BracketError):
        find_root(lambda x: x * x + 1, -1, 1)
