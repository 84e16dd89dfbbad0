"""Numerical checks of the time-variable Fourier machinery.

A time series is ``u(t) = sum_R a_R exp(i R t / bg)`` on ``[0, T]`` with
``T = 2 pi bg``.  Substituting ``t = bg * tau`` turns every integral into one
over a full period ``tau in [0, 2 pi]``, which the trapezoid rule integrates
exactly for trigonometric polynomials of degree below the sample count.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction as Q
from typing import Mapping, Optional, Sequence

import numpy as np

from .errors import NyquistViolation, ZeroDenominator

TWO_PI = 2 * math.pi


class Scheme(str, Enum):
    TRAPEZOID = "trapezoid"
    GAUSS_LEGENDRE = "gauss-legendre"


@dataclass(frozen=True)
class QuadratureConfig:
    sample_count: int
    scheme: Scheme = Scheme.TRAPEZOID

    def __post_init__(self):
        n = self.sample_count
        if not isinstance(n, int) or n < 1 or n & (n - 1):
            raise ValueError(f"sample_count must be a power of two, got {n!r}")
        object.__setattr__(self, "scheme", Scheme(self.scheme))

    def doubled(self) -> "QuadratureConfig":
        return QuadratureConfig(2 * self.sample_count, self.scheme)

    @classmethod
    def default_for(cls, max_R: int, scheme: Scheme = Scheme.TRAPEZOID) -> "QuadratureConfig":
        """Next power of two >= 4 (max_R + 1)."""
        need = 4 * (max_R + 1)
        return cls(1 << (need - 1).bit_length(), scheme)


@dataclass(frozen=True)
class TimeSeriesSpec:
    coeffs: Mapping[int, complex]
    b_gamma: Q = Q(1)
    # T as a multiple of 2 pi
    T_over_2pi: Q = field(init=False)

    def __post_init__(self):
        bg = Q(self.b_gamma)
        if bg <= 0:
            raise ValueError(f"b_gamma must be positive, got {bg}")
        clean = {}
        for R, a in self.coeffs.items():
            if int(R) != R or R < 0:
                raise ValueError(f"frequency indices must be non-negative integers, got {R!r}")
            clean[int(R)] = complex(a)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))
        object.__setattr__(self, "b_gamma", bg)
        object.__setattr__(self, "T_over_2pi", bg)

    @property
    def T(self) -> float:
        return TWO_PI * float(self.T_over_2pi)

    @property
    def max_R(self) -> int:
        return max(self.coeffs, default=0)

    def scaled(self, c: complex) -> "TimeSeriesSpec":
        return TimeSeriesSpec({R: c * a for R, a in self.coeffs.items()}, self.b_gamma)


def _check_nyquist(max_R: int, cfg: QuadratureConfig) -> None:
    if cfg.sample_count < 2 * max_R + 2:
        raise NyquistViolation(
            f"sample_count {cfg.sample_count} < 2*{max_R}+2 required for frequency {max_R}")


def _nodes(cfg: QuadratureConfig) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [0, 2 pi]."""
    n = cfg.sample_count
    if cfg.scheme is Scheme.TRAPEZOID:
        return np.arange(n) * (TWO_PI / n), np.full(n, TWO_PI / n)
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1) * math.pi, w * math.pi


def _samples(coeffs: Mapping[int, complex], cfg: QuadratureConfig) -> tuple[np.ndarray, np.ndarray]:
    """Values of sum_R a_R e^{i R tau} at the quadrature nodes, and the weights."""
    tau, w = _nodes(cfg)
    if not coeffs:
        return np.zeros_like(tau, dtype=complex), w
    if cfg.scheme is Scheme.TRAPEZOID:
        n = cfg.sample_count
        spectrum = np.zeros(n, dtype=complex)
        for R, a in coeffs.items():
            spectrum[R % n] += a
        return np.fft.ifft(spectrum) * n, w
    freqs = np.fromiter(coeffs.keys(), dtype=float)
    amps = np.fromiter(coeffs.values(), dtype=complex)
    return np.exp(1j * np.outer(tau, freqs)) @ amps, w


def orthogonality_integral(R1: int, R2: int, cfg: QuadratureConfig, b_gamma=1) -> complex:
    """int_0^T exp(i (R1 - R2) t / bg) dt by quadrature."""
    if R1 < 0 or R2 < 0:
        raise ValueError("frequencies must be non-negative")
    _check_nyquist(max(R1, R2), cfg)
    tau, w = _nodes(cfg)
    bg = float(Q(b_gamma))
    return complex(bg * np.sum(w * np.exp(1j * (R1 - R2) * tau)))


def gram_matrix(frequencies: Sequence[int], cfg: QuadratureConfig, b_gamma=1) -> np.ndarray:
    """Matrix of int_0^T e_{R} conj(e_{R'}) dt for R, R' in ``frequencies``."""
    freqs = list(frequencies)
    if freqs:
        _check_nyquist(max(freqs), cfg)
    tau, w = _nodes(cfg)
    E = np.exp(1j * np.outer(freqs, tau))
    return float(Q(b_gamma)) * (E * w) @ E.conj().T


def lp_time_norm(ts: TimeSeriesSpec, p, cfg: Optional[QuadratureConfig] = None) -> float:
    """(int_0^T |u(t)|^p dt)^(1/p)."""
    p = float(Q(p))
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    cfg = cfg or QuadratureConfig.default_for(ts.max_R)
    _check_nyquist(ts.max_R, cfg)
    u, w = _samples(ts.coeffs, cfg)
    integral = float(ts.b_gamma) * float(np.sum(w * np.abs(u) ** p))
    return integral ** (1 / p)


def normalized_norm(ts: TimeSeriesSpec, p, cfg: Optional[QuadratureConfig] = None) -> float:
    """L^p norm against the probability measure dt / T."""
    return ts.T ** (-1 / float(Q(p))) * lp_time_norm(ts, p, cfg)


def wainger_ratio(ts: TimeSeriesSpec, p, cfg: Optional[QuadratureConfig] = None) -> float:
    """||sum a_R e^{iR tau}||_{L^p} / ||sum R^alpha a_R e^{iR tau}||_{L^2}, alpha = 1/2 - 1/p."""
    p = Q(p)
    if p <= 2:
        raise ValueError(f"p must exceed 2, got {p}")
    if ts.coeffs.get(0, 0) != 0:
        raise ValueError("the zero-frequency coefficient must vanish")
    if not any(ts.coeffs.values()):
        raise ZeroDenominator("all coefficients vanish")
    cfg = cfg or QuadratureConfig.default_for(ts.max_R)
    _check_nyquist(ts.max_R, cfg)
    alpha = float(Q(1, 2) - 1 / p)
    u, w = _samples(ts.coeffs, cfg)
    v, _ = _samples({R: R ** alpha * a for R, a in ts.coeffs.items()}, cfg)
    num = float(np.sum(w * np.abs(u) ** float(p))) ** (1 / float(p))
    den = math.sqrt(float(np.sum(w * np.abs(v) ** 2)))
    if den == 0:
        raise ZeroDenominator("weighted L2 norm vanishes")
    return num / den


# --- regression suites -------------------------------------------------------

SUITES = ("orthogonality", "parseval", "wainger")
DEFAULT_TOLERANCE = {"orthogonality": 1e-10, "parseval": 1e-10, "wainger": 1e-6}
DEFAULT_SAMPLES = {"orthogonality": 4, "parseval": 100, "wainger": 200}
SEED_MASK = (1 << 64) - 1


def _rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed & SEED_MASK, index])


def random_series(seed: int, index: int, *, max_R: int = 255, max_support: int = 64,
                  zero_mean: bool = False, b_gamma=1) -> TimeSeriesSpec:
    rng = _rng(seed, index)
    lo = 1 if zero_mean else 0
    size = int(rng.integers(1, max_support + 1))
    freqs = rng.choice(np.arange(lo, max_R + 1), size=min(size, max_R + 1 - lo), replace=False)
    amps = rng.standard_normal(len(freqs)) + 1j * rng.standard_normal(len(freqs))
    return TimeSeriesSpec({int(R): complex(a) for R, a in zip(freqs, amps)}, b_gamma)


def _suite_orthogonality(seed, samples, tol):
    # b gamma taken from tabulated b values at gamma = 1 (and 1 itself)
    scales = [Q(1), Q(24), Q(72), Q(240), Q(1, 3), Q(2480)][: max(samples, 1)]
    freqs = list(range(17))
    worst = 0.0
    details = []
    for bg in scales:
        cfg = QuadratureConfig.default_for(max(freqs))
        G = gram_matrix(freqs, cfg, bg)
        T = TWO_PI * float(bg)
        err = float(np.max(np.abs(G - T * np.eye(len(freqs))))) / T
        worst = max(worst, err)
        details.append({"b_gamma": str(bg), "sample_count": cfg.sample_count,
                        "max_error_over_T": err})
    return worst, details


def _suite_parseval(seed, samples, tol):
    worst = 0.0
    for i in range(samples):
        ts = random_series(seed, i)
        expect = ts.T * sum(abs(a) ** 2 for a in ts.coeffs.values())
        got = lp_time_norm(ts, 2) ** 2
        worst = max(worst, abs(got - expect) / expect)
    return worst, {"vectors": samples}


def _suite_wainger(seed, samples, tol):
    worst = 0.0
    max_ratio = {}
    for p in (4, 6):
        top = 0.0
        for i in range(samples):
            ts = random_series(seed, i, max_R=256, max_support=256, zero_mean=True)
            cfg = QuadratureConfig.default_for(ts.max_R)
            r1 = wainger_ratio(ts, p, cfg)
            r2 = wainger_ratio(ts, p, cfg.doubled())
            worst = max(worst, abs(r1 - r2) / r1)
            top = max(top, r1)
        max_ratio[str(p)] = top
    return worst, {"vectors": samples, "max_ratio": max_ratio}


def run_suite(suite: str, seed: int = 0, samples: Optional[int] = None,
              tolerance: Optional[float] = None) -> dict:
    """Run one regression suite; returns {suite, pass, max_error, details}."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    samples = DEFAULT_SAMPLES[suite] if samples is None else samples
    tol = DEFAULT_TOLERANCE[suite] if tolerance is None else tolerance
    fn = {"orthogonality": _suite_orthogonality, "parseval": _suite_parseval,
          "wainger": _suite_wainger}[suite]
    worst, details = fn(seed, samples, tol)
    return {
        "suite": suite,
        "pass": bool(worst <= tol),
        "max_error": worst,
        "details": {"seed": seed, "samples": samples, "tolerance": tol, "results": details},
    }
