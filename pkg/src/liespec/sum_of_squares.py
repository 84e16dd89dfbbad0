"""Counting representations of integers as sums of ``s`` squares.

Three backends compute the same table ``r_s(R)`` for ``R = 0..R_max``:

* ``BruteForce`` enumerates sorted tuples of absolute values and weights
  each by the number of ordered, signed tuples it stands for,
* ``ThetaConvolution`` raises the theta series to the ``s``-th power by
  repeated Cauchy products,
* ``DivisorFormula`` uses Jacobi's divisor sums (``s`` in {2, 4} only).
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from math import factorial, isqrt
from typing import Iterator, Sequence

import numpy as np

from .errors import ResourceLimit, UnsupportedS

DEFAULT_BRUTE_BUDGET = 50_000_000
DEFAULT_THETA_BUDGET = 10**10


class Variant(str, Enum):
    ALL_INTEGERS = "AllIntegers"
    POSITIVE_ONLY = "PositiveOnly"


class Backend(str, Enum):
    BRUTE_FORCE = "BruteForce"
    THETA_CONVOLUTION = "ThetaConvolution"
    DIVISOR_FORMULA = "DivisorFormula"


@dataclass(frozen=True)
class RepCountTable:
    s: int
    variant: Variant
    R_max: int
    counts: tuple[int, ...]
    backend: Backend

    def __getitem__(self, R: int) -> int:
        return self.counts[R]

    def csv_rows(self) -> Iterator[list[str]]:
        yield ["s", "variant", "backend", "R", "count"]
        for R, c in enumerate(self.counts):
            yield [str(self.s), self.variant.value, self.backend.value, str(R), str(c)]


def _check(s: int, R_max: int) -> None:
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    if R_max < 0:
        raise ValueError(f"R_max must be >= 0, got {R_max}")


# --- brute force -------------------------------------------------------------

def _orbit_weight(parts: Sequence[int], s: int, signed: bool) -> int:
    w = factorial(s)
    run = 1
    for a, b in zip(parts, parts[1:]):
        if a == b:
            run += 1
        else:
            w //= factorial(run)
            run = 1
    w //= factorial(run)
    if signed:
        w <<= sum(1 for x in parts if x)
    return w


def _brute_from(first: int, s: int, R_max: int, signed: bool,
                budget: int) -> tuple[list[int], int]:
    """Counts contributed by sorted tuples whose smallest entry is ``first``,
    and the number of search nodes visited."""
    counts = [0] * (R_max + 1)
    parts = [first]
    visited = 0

    def rec(lo: int, total: int):
        nonlocal visited
        if len(parts) == s:
            counts[total] += _orbit_weight(parts, s, signed)
            return
        # the remaining s - len(parts) entries are all >= lo
        left = s - len(parts)
        x = lo
        while total + left * x * x <= R_max:
            visited += 1
            if visited > budget:
                raise ResourceLimit(f"brute-force count exceeded {budget} tuples")
            parts.append(x)
            rec(x, total + x * x)
            parts.pop()
            x += 1

    if s * first * first <= R_max:
        rec(first, first * first)
    return counts, visited


def count_brute(s: int, R_max: int, variant: Variant = Variant.ALL_INTEGERS, *,
                budget: int = DEFAULT_BRUTE_BUDGET, threads: int = 1) -> RepCountTable:
    """Exhaustive count of ordered tuples with n_1**2 + ... + n_s**2 = R.

    Each sorted tuple of absolute values 0 <= x_1 <= ... <= x_s is visited once
    and contributes s!/prod(mult!) orderings times 2**(#nonzero) sign choices
    (signs only for ``AllIntegers``; ``PositiveOnly`` starts at 1).
    """
    _check(s, R_max)
    variant = Variant(variant)
    signed = variant is Variant.ALL_INTEGERS
    start = 0 if signed else 1
    firsts = list(range(start, isqrt(R_max // s) + 1))
    per = max(budget // max(len(firsts), 1), 1) if threads > 1 else budget
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = [c for c, _ in pool.map(
                lambda f: _brute_from(f, s, R_max, signed, per), firsts)]
    else:
        parts = []
        used = 0
        for f in firsts:
            c, v = _brute_from(f, s, R_max, signed, budget - used)
            used += v
            parts.append(c)
    counts = [sum(col) for col in zip(*parts)] if parts else [0] * (R_max + 1)
    return RepCountTable(s, variant, R_max, tuple(counts), Backend.BRUTE_FORCE)


def count_naive(s: int, R_max: int, variant: Variant = Variant.ALL_INTEGERS) -> list[int]:
    """Plain scan of the cube [-r, r]^s (tiny inputs only)."""
    import itertools
    r = isqrt(R_max)
    rng = range(-r, r + 1) if Variant(variant) is Variant.ALL_INTEGERS else range(1, r + 1)
    counts = [0] * (R_max + 1)
    for t in itertools.product(rng, repeat=s):
        q = sum(x * x for x in t)
        if q <= R_max:
            counts[q] += 1
    return counts


# --- theta series ------------------------------------------------------------

def theta_series(R_max: int, variant: Variant = Variant.ALL_INTEGERS) -> list[int]:
    """Coefficients of theta(x) up to x**R_max."""
    variant = Variant(variant)
    coeffs = [0] * (R_max + 1)
    if variant is Variant.ALL_INTEGERS:
        coeffs[0] = 1
    for k in range(1, isqrt(R_max) + 1):
        coeffs[k * k] = 2 if variant is Variant.ALL_INTEGERS else 1
    return coeffs


def _dtype_for(s: int, R_max: int):
    # r_s(R) <= (2 sqrt(R) + 1)**s; stay in int64 when that cannot overflow
    return np.int64 if (2 * isqrt(R_max) + 3) ** s < 2**62 else object


def convolve_truncated(a: Sequence[int], b: Sequence[int], R_max: int) -> list[int]:
    """Cauchy product of two coefficient lists truncated at degree R_max."""
    a = list(a)[: R_max + 1]
    b = list(b)[: R_max + 1]
    out = [0] * (R_max + 1)
    nz = [(j, y) for j, y in enumerate(b) if y]
    for i, x in enumerate(a):
        if x:
            for j, y in nz:
                if i + j > R_max:
                    break
                out[i + j] += x * y
    return out


def count_theta(s: int, R_max: int, variant: Variant = Variant.ALL_INTEGERS, *,
                budget: int = DEFAULT_THETA_BUDGET) -> RepCountTable:
    """Coefficients of theta(x)**s by s - 1 truncated convolutions with theta."""
    _check(s, R_max)
    variant = Variant(variant)
    work = (s - 1) * (R_max + 1) * (isqrt(R_max) + 1)
    if work > budget:
        raise ResourceLimit(f"theta convolution needs ~{work} operations (> {budget})")
    dtype = _dtype_for(s, R_max)
    theta = theta_series(R_max, variant)
    shifts = [(k, c) for k, c in enumerate(theta) if c]
    acc = np.array(theta, dtype=dtype)
    for _ in range(s - 1):
        nxt = np.zeros(R_max + 1, dtype=dtype)
        for k, c in shifts:
            if c == 1:
                nxt[k:] += acc[: R_max + 1 - k]
            else:
                nxt[k:] += c * acc[: R_max + 1 - k]
        acc = nxt
    return RepCountTable(s, variant, R_max, tuple(int(x) for x in acc),
                         Backend.THETA_CONVOLUTION)


# --- divisor formulas --------------------------------------------------------

def count_divisor_formula(s: int, R_max: int,
                          variant: Variant = Variant.ALL_INTEGERS) -> RepCountTable:
    """Jacobi: r_2(R) = 4(d_1(R) - d_3(R)), r_4(R) = 8 sum_{d | R, 4 !| d} d."""
    if s not in (2, 4):
        raise UnsupportedS(f"divisor formula available for s in {{2, 4}}, got {s}")
    if Variant(variant) is not Variant.ALL_INTEGERS:
        raise UnsupportedS("divisor formula counts all-integer representations only")
    _check(s, R_max)
    acc = [0] * (R_max + 1)
    for d in range(1, R_max + 1):
        if s == 2:
            w = (1 if d % 4 == 1 else -1 if d % 4 == 3 else 0)
        else:
            w = d if d % 4 else 0
        if w:
            for multiple in range(d, R_max + 1, d):
                acc[multiple] += w
    factor = 4 if s == 2 else 8
    counts = [1] + [factor * x for x in acc[1:]]
    return RepCountTable(s, Variant.ALL_INTEGERS, R_max, tuple(counts),
                         Backend.DIVISOR_FORMULA)


def count(s: int, R_max: int, variant: Variant = Variant.ALL_INTEGERS,
          backend: Backend = Backend.THETA_CONVOLUTION, **kwargs) -> RepCountTable:
    backend = Backend(backend)
    if backend is Backend.BRUTE_FORCE:
        return count_brute(s, R_max, variant, **kwargs)
    if backend is Backend.THETA_CONVOLUTION:
        return count_theta(s, R_max, variant, **kwargs)
    return count_divisor_formula(s, R_max, variant)


def applicable_backends(s: int, variant: Variant = Variant.ALL_INTEGERS) -> list[Backend]:
    out = [Backend.BRUTE_FORCE, Backend.THETA_CONVOLUTION]
    if s in (2, 4) and Variant(variant) is Variant.ALL_INTEGERS:
        out.append(Backend.DIVISOR_FORMULA)
    return out


def cross_check(s: int, R_max: int, variant: Variant = Variant.ALL_INTEGERS,
                **kwargs) -> tuple[dict[Backend, RepCountTable], list[tuple[int, dict]]]:
    """Run every applicable backend; return the tables and the disagreeing R."""
    tables = {b: count(s, R_max, variant, b, **({} if b is Backend.DIVISOR_FORMULA else kwargs))
              for b in applicable_backends(s, variant)}
    diffs = []
    for R in range(R_max + 1):
        vals = {b.value: t.counts[R] for b, t in tables.items()}
        if len(set(vals.values())) > 1:
            diffs.append((R, vals))
    return tables, diffs


# --- growth envelopes --------------------------------------------------------

@dataclass(frozen=True)
class GrowthReport:
    s: int
    R_lo: int
    R_hi: int
    envelope: str
    ratio_min: float
    ratio_max: float
    argmin: int
    argmax: int
    zero_R: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "R_lo": self.R_lo,
            "R_hi": self.R_hi,
            "envelope": self.envelope,
            "ratio_min": self.ratio_min,
            "ratio_max": self.ratio_max,
            "argmin": self.argmin,
            "argmax": self.argmax,
            "zero_count": len(self.zero_R),
        }


def three_square_obstructed(R: int) -> bool:
    """True iff R = 4**a (8b + 7), the integers that are not sums of three squares."""
    if R <= 0:
        return False
    while R % 4 == 0:
        R //= 4
    return R % 8 == 7


def envelope(s: int, R: int) -> float:
    """Normalizing function of the growth bound for sums of s squares."""
    if s == 3:
        x = math.log(4 * R)
        return math.sqrt(R) * x * math.log(x)
    if s == 4:
        return R * math.log(math.log(R))
    return R ** ((s - 2) / 2)


def growth_report(s: int, R_lo: int, R_hi: int, counts: Sequence[int] | None = None) -> GrowthReport:
    """Empirical min/max of r_s(R) / envelope(s, R) over R_lo <= R <= R_hi.

    Zero counts (the three-square obstruction for s = 3) are listed separately
    and excluded from the minimum.
    """
    if s < 3:
        raise UnsupportedS(f"growth report needs s >= 3, got {s}")
    min_lo = 4 if s == 3 else (3 if s == 4 else 2)
    if R_lo < min_lo or R_hi < R_lo:
        raise ValueError(f"need {min_lo} <= R_lo <= R_hi for s={s}, got [{R_lo}, {R_hi}]")
    if counts is None:
        counts = count_theta(s, R_hi).counts
    name = {3: "sqrt(R)*log(4R)*loglog(4R)", 4: "R*loglog(R)"}.get(s, f"R^({s - 2}/2)")
    lo = (math.inf, 0)
    hi = (-math.inf, 0)
    zeros = []
    for R in range(R_lo, R_hi + 1):
        c = counts[R]
        if c == 0:
            zeros.append(R)
            continue
        ratio = c / envelope(s, R)
        lo = min(lo, (ratio, R))
        hi = max(hi, (ratio, R))
    return GrowthReport(s, R_lo, R_hi, name, lo[0], hi[0], lo[1], hi[1], tuple(zeros))
