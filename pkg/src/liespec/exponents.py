"""Strichartz-type regularity exponents in exact rational arithmetic.

Exponents ``p``, ``q`` are :class:`fractions.Fraction` values; ``q`` may also
be :data:`INF`, for which ``1/q`` is taken to be exactly zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction as Q
from typing import Iterable, Iterator, Union

from .errors import InvalidExponent, UnsupportedRank
from .root_systems import GroupFamily

INF = math.inf
Exponent = Union[Q, float]

HALF = Q(1, 2)


def parse_rational(text: str) -> Exponent:
    """Parse ``"5/2"``, ``"3"``, ``"0.25"`` or ``"inf"``."""
    t = str(text).strip().lower()
    if t in ("inf", "infinity", "oo"):
        return INF
    try:
        return Q(t)
    except (ValueError, ZeroDivisionError):
        raise InvalidExponent(f"not a rational number: {text!r}") from None


def as_exponent(x) -> Exponent:
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        if math.isinf(x) and x > 0:
            return INF
        if math.isnan(x) or math.isinf(x):
            raise InvalidExponent(f"invalid exponent {x}")
    return Q(x)


def recip(x: Exponent) -> Q:
    """1/x with 1/inf = 0."""
    if x == INF:
        return Q(0)
    return 1 / Q(x)


def format_exponent(x: Exponent) -> str:
    return "inf" if x == INF else str(Q(x))


def breakpoint(d: int) -> Q:
    """q* = 2(d+1)/(d-1), where the two branches of sigma meet."""
    if d < 2:
        raise InvalidExponent(f"dimension must be >= 2, got {d}")
    return Q(2 * (d + 1), d - 1)


def sigma(d: int, q) -> Q:
    """Spectral-projection loss exponent for L^2 -> L^q on a d-manifold."""
    q = as_exponent(q)
    if q < 2:
        raise InvalidExponent(f"q must be >= 2, got {format_exponent(q)}")
    if q <= breakpoint(d):
        return Q(d - 1, 2) * (HALF - recip(q))
    return Q(d - 1, 2) - d * recip(q)


class Strictness(str, Enum):
    GE = "GE"
    GT = "GT"


@dataclass(frozen=True)
class ExponentProfile:
    family: GroupFamily
    d: int
    m: int
    p: Q
    q: Exponent
    alpha: Q
    sigma_q: Q
    s0: Q
    s0R: Q
    strictness: Strictness

    @property
    def gap(self) -> Q:
        return self.s0R - self.s0

    @property
    def first_regime(self) -> bool:
        return self.q <= breakpoint(self.d)

    def expected_gap(self) -> Q:
        """Closed form of s0R - s0 in the current sigma regime."""
        if self.first_regime:
            return Q(self.m, 2) - Q(self.d + 1, 2) * (HALF - recip(self.q))
        return Q(self.m - 1, 2)

    def row(self) -> dict:
        return {
            "family": self.family.label.value,
            "rank": self.family.rank,
            "d": self.d,
            "m": self.m,
            "p": format_exponent(self.p),
            "q": format_exponent(self.q),
            "alpha": str(self.alpha),
            "sigma": str(self.sigma_q),
            "s0": str(self.s0),
            "s0R": str(self.s0R),
            "gap": str(self.gap),
            "strictness": self.strictness.value,
        }


def _require_rank(family: GroupFamily) -> None:
    if family.rank < 2:
        raise UnsupportedRank(
            f"{family.group_name} has rank 1; the exponents need rank >= 2 "
            "(rank-one groups are treated separately as spheres)")


def profile(family: GroupFamily, p, q) -> ExponentProfile:
    _require_rank(family)
    p = as_exponent(p)
    q = as_exponent(q)
    if p == INF or p < 2:
        raise InvalidExponent(f"p must lie in [2, inf), got {format_exponent(p)}")
    if q < 2:
        raise InvalidExponent(f"q must lie in [2, inf], got {format_exponent(q)}")
    d = family.group_dim
    m = family.m_spec
    sig = sigma(d, q)
    return ExponentProfile(
        family=family,
        d=d,
        m=m,
        p=p,
        q=q,
        alpha=HALF - 1 / p,
        sigma_q=sig,
        s0=Q(d, 2) - 2 / p - d * recip(q),
        s0R=Q(m, 2) - 2 / p + sig,
        strictness=Strictness.GT if m <= 4 else Strictness.GE,
    )


def zhang_thresholds(family: GroupFamily) -> tuple[Q, Q]:
    """(p1, p2) = (2 + 8/l, 2 + 4(d+l)/(d l)): the earlier range and the novelty window."""
    _require_rank(family)
    l = family.rank
    d = family.group_dim
    return 2 + Q(8, l), 2 + Q(4 * (d + l), d * l)


DEFAULT_P_GRID = (Q(2), Q(5, 2), Q(3), Q(4), Q(10))


def default_q_grid(d: int) -> tuple[Exponent, ...]:
    return (Q(2), Q(3), breakpoint(d), Q(10), INF)


def grid(families: Iterable[GroupFamily], p_grid=None, q_grid=None, *,
         classical: bool = False) -> Iterator[ExponentProfile]:
    """Profiles over a (family, p, q) grid; ``classical`` keeps only q <= p.

    When ``q_grid`` is None each family gets {2, 3, q*, 10, inf} with its own q*.
    """
    p_grid = DEFAULT_P_GRID if p_grid is None else [as_exponent(p) for p in p_grid]
    for fam in families:
        qs = default_q_grid(fam.group_dim) if q_grid is None else [as_exponent(q) for q in q_grid]
        for p in p_grid:
            for q in qs:
                if classical and q > p:
                    continue
                yield profile(fam, p, q)
