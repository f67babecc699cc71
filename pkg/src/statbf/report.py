"""Recompute every published number and compare it with the printed value."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

from . import binomial, normal_means, simulate
from .bfcore import mle_bound_from_loglik, one_sided_adjust, posterior_prob_h0
from .numerics import integrate, std_normal_cdf, std_normal_pdf, std_normal_sf

PASS, FAIL, INCONSISTENT = "pass", "fail", "paper-inconsistent"

# The sweep is printed for t = 2.567; the two-sided 1% point is 2.5758.
LINDLEY_PRINTED = {10: 0.16, 100: 1.15, 1000: 3.62, 1_000_000: 36.23}
LINDLEY_PRINTED_T = 2.567
SIM_SEED = 20180801
SIM_REPS = 1_000_000


@dataclass
class Claim:
    name: str
    published: str
    computed: float
    verdict: str
    tolerance: Optional[float] = None
    note: str = ""


def _check(name, published, computed, tol, note="") -> Claim:
    verdict = PASS if abs(computed - published) <= tol else FAIL
    return Claim(name, repr(published), computed, verdict, tol, note)


def _lindley_attained_at(printed: float, t: float) -> Optional[int]:
    """Smallest decade n = 10^k whose exact BF01 is within 0.5% of the printed value."""
    for k in range(1, 9):
        bf = normal_means.lindley_sweep(t, 1.0, [10**k])[0].bf01
        if abs(bf - printed) / printed < 0.005:
            return 10**k
    return None


def lindley_claims(t: float = normal_means.T_ONE_PERCENT) -> list[Claim]:
    claims = []
    rows = normal_means.lindley_sweep(t, 1.0, LINDLEY_PRINTED)
    at_printed_t = {r.n: r.bf01 for r in normal_means.lindley_sweep(LINDLEY_PRINTED_T, 1.0, LINDLEY_PRINTED)}
    for row in rows:
        printed = LINDLEY_PRINTED[row.n]
        note = f"value at printed t={LINDLEY_PRINTED_T}: {at_printed_t[row.n]:.4g}"
        tol = 0.005 if printed < 1 else 0.05
        if abs(row.bf01 - printed) <= tol:
            claims.append(Claim(f"lindley n={row.n}", repr(printed), row.bf01, PASS, tol, note))
            continue
        n_hit = _lindley_attained_at(printed, t)
        where = f"printed value is attained at n={n_hit}" if n_hit else "printed value matches no decade of n"
        claims.append(Claim(f"lindley n={row.n}", repr(printed), row.bf01, INCONSISTENT, tol, f"{where}; {note}"))
    return claims


def build_report() -> list[Claim]:
    c: list[Claim] = []

    # Tail areas behind the band argument.
    c.append(_check("P(t > 1.96 | H0)", 0.025, std_normal_sf(1.96), 0.0005))
    c.append(_check("P(t > 2.58 | H0)", 0.005, std_normal_sf(2.58), 0.0005))
    p_band_h0 = std_normal_cdf(2.58) - std_normal_cdf(1.96)
    c.append(_check("P(1.96 < t < 2.58 | H0)", 0.02, p_band_h0, 0.001))
    _, p_band_h1, _ = simulate.band_prediction(simulate.UniformT(20.0), (1.96, 2.58))
    c.append(_check("P(1.96 < t < 2.58 | H1), t ~ U(-20, 20)", 0.0155, p_band_h1, 0.00005))
    ratio = p_band_h0 / p_band_h1
    c.append(
        Claim("band likelihood ratio H0:H1 favours H0", "> 1", ratio, PASS if ratio > 1 else FAIL, None,
              "1.55% against 2%")
    )
    c.append(_check("P(-1.96 < T < 1.96 | H0)", 0.95, integrate(std_normal_pdf, -1.96, 1.96), 0.0005))

    # Bounds from the maximized likelihood.
    bound = mle_bound_from_loglik(-0.5 * 1.96**2, 0.0)
    c.append(_check("MLE bound on BF01 at t = 1.96", 0.146, bound, 0.0005))
    c.append(_check("one-sided MLE bound", 0.292, one_sided_adjust(bound), 0.0015))
    c.append(_check("Pr(H0 | y) lower bound", 0.128, posterior_prob_h0(bound), 0.0005))

    c.extend(lindley_claims())

    _, a_equiv = normal_means.calibrate_cauchy(1, 1.0, 0.95)
    c.append(
        Claim("Cauchy prior equivalent A (n=1, sigma=1)", "~40", a_equiv,
              PASS if 38 <= a_equiv <= 45 else FAIL, None, "accepted range [38, 45]")
    )

    for row, printed in zip(binomial.table1(), (0.8, 1.1, 2.2, 11.7)):
        c.append(_check(f"coin-tossing BF01 n={row.n} r={row.r}", printed, row.bf01, 0.05, "uniform prior"))
    exp = binomial.BinomialExperiment(100, 60)
    bb = binomial.binom_mle_bound(exp)
    c.append(_check("binomial MLE bound n=100 r=60", 0.134, bb, 0.0005))
    c.append(_check("binomial Pr(H0 | y) lower bound", 0.118, posterior_prob_h0(bb), 0.0005))

    recs = simulate.run_mixture(simulate.MixtureConfig(SIM_REPS, simulate.UniformT(20.0), 0.5, SIM_SEED))
    band = simulate.band_analysis(recs, (1.96, 2.58))
    c.append(_check("simulated P(band | H0)", 0.02, band.p_band_h0, 0.001, f"{SIM_REPS} replications"))
    c.append(_check("simulated P(band | H1), U(-20, 20)", 0.0155, band.p_band_h1, 0.001))

    seq = [simulate.sequential_demo(L, 0.05, 10.0, 10_000, SIM_SEED) for L in (1, 10, 100, 1000)]
    increasing = all(a.freq_ever_reject_classical < b.freq_ever_reject_classical for a, b in zip(seq, seq[1:]))
    last = seq[-1]
    ok = increasing and last.freq_ever_cross_bayes < last.freq_ever_reject_classical
    c.append(
        Claim("sampling to a foregone conclusion (1000 looks)", "classical > Bayes",
              last.freq_ever_reject_classical, PASS if ok else FAIL, None,
              f"Bayes crossing frequency {last.freq_ever_cross_bayes:.4g}")
    )
    return c


def claims_as_dicts(claims: list[Claim]) -> list[dict]:
    return [asdict(x) for x in claims]
