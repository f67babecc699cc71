"""Monte Carlo experiments contrasting p-values with Bayes factors.

Replications are generated in fixed-size chunks, each with its own generator
seeded from ``(seed, chunk_index)``. Chunk layout never depends on the number
of worker threads, so the output is identical for any ``workers``.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np
from scipy import special, stats

from .errors import DomainError, UndefinedFractionError
from .numerics import std_normal_cdf

CHUNK_SIZE = 1 << 16


@dataclass(frozen=True)
class NormalSpread:
    """t ~ N(0, A) under H1."""

    A: float

    def __post_init__(self):
        if not self.A >= 1:
            raise DomainError("A must be >= 1")


@dataclass(frozen=True)
class UniformT:
    """t ~ Uniform(-halfwidth, halfwidth) under H1, stated directly on the t scale."""

    halfwidth: float

    def __post_init__(self):
        if not self.halfwidth > 0:
            raise DomainError("halfwidth must be positive")


@dataclass(frozen=True)
class ParameterPrior:
    """theta ~ N(theta0, tau^2), then t = sqrt(n) theta / sigma + noise."""

    tau: float
    n: int
    sigma: float = 1.0

    def __post_init__(self):
        if not (self.tau >= 0 and self.n >= 1 and self.sigma > 0):
            raise DomainError("need tau >= 0, n >= 1, sigma > 0")

    @property
    def A(self) -> float:
        return 1.0 + self.n * self.tau**2 / self.sigma**2


Alternative = Union[NormalSpread, UniformT, ParameterPrior]


def parse_alternative(text: str) -> Alternative:
    """Parse ``A:<real>``, ``uniform:<real>`` or ``prior:<tau>,<n>,<sigma>``."""
    kind, _, rest = text.partition(":")
    try:
        if kind == "A":
            return NormalSpread(float(rest))
        if kind == "uniform":
            return UniformT(float(rest))
        if kind == "prior":
            tau, n, sigma = rest.split(",")
            return ParameterPrior(float(tau), int(n), float(sigma))
    except ValueError as exc:
        raise DomainError(f"bad alternative {text!r}: {exc}") from exc
    raise DomainError(f"unknown alternative {text!r}")


def format_alternative(alt: Alternative) -> str:
    if isinstance(alt, NormalSpread):
        return f"A:{alt.A!r}"
    if isinstance(alt, UniformT):
        return f"uniform:{alt.halfwidth!r}"
    return f"prior:{alt.tau!r},{alt.n},{alt.sigma!r}"


@dataclass(frozen=True)
class MixtureConfig:
    replications: int
    alternative: Alternative = NormalSpread(40.0)
    prior_h0: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.replications < 1:
            raise DomainError("replications must be >= 1")
        if not 0.0 <= self.prior_h0 <= 1.0:
            raise DomainError("prior_h0 must lie in [0, 1]")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class SimRecord:
    hypothesis: str
    t: float
    p_value: float


@dataclass(frozen=True)
class SimRecords:
    """Column store of simulated experiments; iterating yields ``SimRecord``."""

    is_null: np.ndarray
    t: np.ndarray
    p_value: np.ndarray

    def __len__(self):
        return len(self.t)

    def __getitem__(self, i) -> SimRecord:
        return SimRecord("H0" if self.is_null[i] else "H1", float(self.t[i]), float(self.p_value[i]))

    def __iter__(self) -> Iterator[SimRecord]:
        for i in range(len(self)):
            yield self[i]

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["hypothesis", "t", "p_value"])
            for h0, t, p in zip(self.is_null, self.t, self.p_value):
                w.writerow(["H0" if h0 else "H1", repr(float(t)), repr(float(p))])


def two_sided_p(t: np.ndarray) -> np.ndarray:
    return special.erfc(np.abs(t) / math.sqrt(2.0))


def _rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def _chunks(total: int, size: int) -> list[tuple[int, int]]:
    return [(i, min(size, total - i * size)) for i in range(math.ceil(total / size))]


def _map_chunks(fn, chunks, workers: int):
    if workers <= 1:
        return [fn(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, chunks))


def run_mixture(config: MixtureConfig, workers: int = 1) -> SimRecords:
    """Draw each experiment's hypothesis, then its t-ratio from that hypothesis' predictive."""
    alt = config.alternative

    def one_chunk(chunk):
        index, m = chunk
        rng = _rng(config.seed, index)
        is_null = rng.random(m) < config.prior_h0
        noise = rng.standard_normal(m)
        if isinstance(alt, NormalSpread):
            t_alt = math.sqrt(alt.A) * noise
        elif isinstance(alt, UniformT):
            t_alt = rng.uniform(-alt.halfwidth, alt.halfwidth, m)
        else:
            theta = alt.tau * rng.standard_normal(m)
            t_alt = math.sqrt(alt.n) * theta / alt.sigma + noise
        t = np.where(is_null, noise, t_alt)
        return is_null, t

    parts = _map_chunks(one_chunk, _chunks(config.replications, CHUNK_SIZE), workers)
    is_null = np.concatenate([p[0] for p in parts])
    t = np.concatenate([p[1] for p in parts])
    return SimRecords(is_null, t, two_sided_p(t))


@dataclass(frozen=True)
class BandResult:
    p_band_h0: float
    p_band_h1: float
    null_fraction: float
    counts: dict


def _in_band(t: np.ndarray, band: tuple[float, float], two_sided: bool) -> np.ndarray:
    a, b = band
    x = np.abs(t) if two_sided else t
    return (x > a) & (x < b)


def band_analysis(records: SimRecords, band=(1.96, 2.58), two_sided: bool = False) -> BandResult:
    """How often t lands in ``band`` under each hypothesis, and the share of nulls among those hits."""
    a, b = band
    if not a < b:
        raise DomainError("band must satisfy a < b")
    hit = _in_band(records.t, band, two_sided)
    n0 = int(records.is_null.sum())
    n1 = len(records) - n0
    h0 = int((hit & records.is_null).sum())
    h1 = int((hit & ~records.is_null).sum())
    counts = {"h0": n0, "h1": n1, "h0_in_band": h0, "h1_in_band": h1}
    if h0 + h1 == 0:
        raise UndefinedFractionError("no records fell in the band", counts)
    return BandResult(
        h0 / n0 if n0 else math.nan,
        h1 / n1 if n1 else math.nan,
        h0 / (h0 + h1),
        counts,
    )


def band_prediction(alt: Alternative, band=(1.96, 2.58), prior_h0: float = 0.5) -> tuple[float, float, float]:
    """Closed-form (p_band_h0, p_band_h1, null_fraction) for a one-sided band."""
    a, b = band
    p0 = std_normal_cdf(b) - std_normal_cdf(a)
    if isinstance(alt, UniformT):
        u = alt.halfwidth
        p1 = max(0.0, min(b, u) - max(a, -u)) / (2.0 * u)
    else:
        s = math.sqrt(alt.A)
        p1 = std_normal_cdf(b / s) - std_normal_cdf(a / s)
    w0, w1 = prior_h0 * p0, (1.0 - prior_h0) * p1
    return p0, p1, w0 / (w0 + w1)


@dataclass(frozen=True)
class AuditResult:
    rejections: int
    fraction_true_null: float


def rejection_audit(records: SimRecords, alpha: float = 0.05) -> AuditResult:
    """Share of classical rejections (p <= alpha) whose null was actually true."""
    if not 0.0 < alpha < 1.0:
        raise DomainError("alpha must lie in (0, 1)")
    rejected = records.p_value <= alpha
    n_rej = int(rejected.sum())
    if n_rej == 0:
        raise UndefinedFractionError("no rejections", {"records": len(records), "rejections": 0})
    return AuditResult(n_rej, int((rejected & records.is_null).sum()) / n_rej)


def p_value_uniformity(records: SimRecords) -> float:
    """Kolmogorov-Smirnov distance of the H0 p-values from Uniform(0, 1)."""
    p = records.p_value[records.is_null]
    if p.size == 0:
        raise UndefinedFractionError("no H0 records", {"records": len(records)})
    return float(stats.kstest(p, "uniform").statistic)


@dataclass(frozen=True)
class SequentialResult:
    looks: int
    freq_ever_reject_classical: float
    freq_ever_cross_bayes: float


def sequential_demo(
    looks: int = 1000,
    alpha: float = 0.05,
    bf_threshold: float = 10.0,
    reps: int = 10_000,
    seed: int = 0,
    workers: int = 1,
) -> SequentialResult:
    """Monitor a true-null data stream after every observation.

    Classical monitoring rejects as soon as any interim two-sided p-value is
    at most ``alpha``. Bayesian monitoring stops when BF01 under a
    N(0, sigma^2) prior (A = 1 + n) drops below ``1 / bf_threshold``.
    """
    if looks < 1 or reps < 1:
        raise DomainError("looks and reps must be >= 1")
    if not 0.0 < alpha < 1.0 or not bf_threshold > 0:
        raise DomainError("need 0 < alpha < 1 and bf_threshold > 0")
    n = np.arange(1, looks + 1, dtype=float)
    log_cut = -math.log(bf_threshold)
    rows = max(1, (1 << 20) // looks)

    def one_chunk(chunk):
        index, m = chunk
        x = _rng(seed, index).standard_normal((m, looks))
        t = np.cumsum(x, axis=1) / np.sqrt(n)
        classical = (two_sided_p(t) <= alpha).any(axis=1)
        log_bf01 = 0.5 * np.log1p(n) - 0.5 * t * t * (n / (1.0 + n))
        bayes = (log_bf01 < log_cut).any(axis=1)
        return int(classical.sum()), int(bayes.sum())

    parts = _map_chunks(one_chunk, _chunks(reps, rows), workers)
    return SequentialResult(
        looks,
        sum(p[0] for p in parts) / reps,
        sum(p[1] for p in parts) / reps,
    )
