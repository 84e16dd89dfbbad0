"""Laplace spectrum of a compact simple simply connected Lie group.

Eigenvalues are keyed by the integer numerator ``R``; the eigenvalue itself
is ``R / (b_table * gamma)`` with ``gamma`` the (symbolic) metric scale.
Three independent routes produce ``R`` for a shifted weight ``nu``:

* :func:`eigenvalue_closed_form` -- the hand-expanded per-family formulas,
* :func:`eigenvalue_root_form` -- ``c**2 (<nu~+eta, nu~+eta> - <eta, eta>)``
  in exact rationals,
* :func:`integer_vector` -- ``|A nu|**2 - R0``.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Iterator, Sequence

import numpy as np

from . import exact
from .errors import InternalInconsistency, ResourceLimit
from .root_systems import GroupFamily, Label, RootSystem, build_root_system, check_nu, weight_matrix

DEFAULT_CELL_BUDGET = 20_000_000
SAFETY = 0.99


@dataclass(frozen=True, order=True)
class HighestWeight:
    """Shifted weight coefficients ``nu_j = nu~_j + 1 >= 1``."""

    nu: tuple[int, ...]

    def __post_init__(self):
        nu = tuple(int(x) for x in self.nu)
        if not nu or min(nu) < 1:
            raise ValueError(f"shifted weight components must be >= 1, got {self.nu}")
        object.__setattr__(self, "nu", nu)

    @property
    def unshifted(self) -> tuple[int, ...]:
        return tuple(x - 1 for x in self.nu)

    def __len__(self):
        return len(self.nu)

    def __iter__(self):
        return iter(self.nu)


@dataclass(frozen=True)
class EigenvalueRecord:
    R: int
    weights: tuple[tuple[int, ...], ...]
    weyl_dims: tuple[int, ...]

    @property
    def N_R(self) -> int:
        return len(self.weights)

    @property
    def mult(self) -> int:
        """Full eigenspace dimension, sum of squared representation dimensions."""
        return sum(d * d for d in self.weyl_dims)


@dataclass(frozen=True)
class SpectrumTable:
    family: GroupFamily
    R_max: int
    b_table: int
    R0: int
    records: tuple[EigenvalueRecord, ...]
    box: tuple[int, ...] = ()

    def counts(self) -> dict[int, int]:
        return {rec.R: rec.N_R for rec in self.records}

    def to_dict(self) -> dict:
        return {
            "family": self.family.label.value,
            "rank": self.family.rank,
            "R_max": self.R_max,
            "b_table": self.b_table,
            "R0": self.R0,
            "records": [
                {
                    "R": rec.R,
                    "N_R": rec.N_R,
                    "mult": rec.mult,
                    "weights": [list(w) for w in rec.weights],
                    "weyl_dims": list(rec.weyl_dims),
                }
                for rec in self.records
            ],
        }

    def csv_rows(self) -> Iterator[list[str]]:
        yield ["family", "rank", "R", "N_R", "mult", "weights"]
        for rec in self.records:
            yield [
                self.family.label.value,
                str(self.family.rank),
                str(rec.R),
                str(rec.N_R),
                str(rec.mult),
                ";".join(":".join(map(str, w)) for w in rec.weights),
            ]


def _nu(rs: RootSystem, nu) -> tuple[int, ...]:
    if isinstance(nu, HighestWeight):
        nu = nu.nu
    return check_nu(rs, nu)


# --- the three eigenvalue routes ------------------------------------------

def _closed_A(l: int, nu: Sequence[int]) -> int:
    v = (None,) + tuple(nu)  # 1-based
    s = sum((l + 1 - j) * v[j] for j in range(1, l + 1)) ** 2
    for k in range(2, l + 1):
        s += (-sum(j * v[j] for j in range(1, k))
              + sum((l + 1 - j) * v[j] for j in range(k, l + 1))) ** 2
    s += sum(j * v[j] for j in range(1, l + 1)) ** 2
    r0 = Q(sum((l - 2 * (k - 1)) ** 2 * (l + 1) ** 2 for k in range(1, l + 2)), 4)
    return s - r0


def _closed_B(l: int, nu: Sequence[int]) -> int:
    v = (None,) + tuple(nu)
    s = sum((2 * sum(v[j] for j in range(k, l)) + v[l]) ** 2 for k in range(1, l))
    s += v[l] ** 2
    return s - sum((2 * (l - k) + 1) ** 2 for k in range(1, l + 1))


def _closed_C(l: int, nu: Sequence[int]) -> int:
    v = (None,) + tuple(nu)
    s = sum(sum(v[j] for j in range(k, l + 1)) ** 2 for k in range(1, l + 1))
    return s - Q(l * (l + 1) * (2 * l + 1), 6)


def _closed_D(l: int, nu: Sequence[int]) -> int:
    v = (None,) + tuple(nu)
    s = sum((2 * sum(v[j] for j in range(k, l - 1)) + v[l - 1] + v[l]) ** 2
            for k in range(1, l - 1))
    s += (v[l] + v[l - 1]) ** 2 + (v[l] - v[l - 1]) ** 2
    return s - sum((2 * (l - k)) ** 2 for k in range(1, l + 1))


def _closed_E8(nu: Sequence[int]) -> int:
    n1, n2, n3, n4, n5, n6, n7, n8 = nu
    terms = [
        n2 - n3,
        n2 + n3,
        n2 + n3 + 2 * n4,
        n2 + n3 + 2 * n4 + 2 * n5,
        n2 + n3 + 2 * n4 + 2 * n5 + 2 * n6,
        n2 + n3 + 2 * n4 + 2 * n5 + 2 * n6 + 2 * n7,
        n2 + n3 + 2 * n4 + 2 * n5 + 2 * n6 + 2 * n7 + 2 * n8,
        4 * n1 + 5 * n2 + 7 * n3 + 10 * n4 + 8 * n5 + 6 * n6 + 4 * n7 + 2 * n8,
    ]
    return sum(t * t for t in terms) - 2480


def _closed_F4(nu: Sequence[int]) -> int:
    n1, n2, n3, n4 = nu
    # last square is nu_3**2: the e_4 coordinate of nu~ + eta is nu_3 / 2,
    # contributed by w_3 = (3e_1 + e_2 + e_3 + e_4) / 2
    return ((2 * n1 + 4 * n2 + 3 * n3 + 2 * n4) ** 2 + (2 * n1 + 2 * n2 + n3) ** 2
            + (2 * n2 + n3) ** 2 + n3 ** 2 - 156)


def _closed_G2(nu: Sequence[int]) -> int:
    n1, n2 = nu
    return (n1 + n2) ** 2 + (n1 + 2 * n2) ** 2 + n2 ** 2 - 14


def eigenvalue_closed_form(rs: RootSystem, nu) -> int:
    """Integer numerator R from the expanded per-family eigenvalue formula."""
    nu = _nu(rs, nu)
    l = rs.rank
    lab = rs.family.label
    value = {
        Label.A: lambda: _closed_A(l, nu),
        Label.B: lambda: _closed_B(l, nu),
        Label.C: lambda: _closed_C(l, nu),
        Label.D: lambda: _closed_D(l, nu),
        Label.E8: lambda: _closed_E8(nu),
        Label.F4: lambda: _closed_F4(nu),
        Label.G2: lambda: _closed_G2(nu),
    }[lab]()
    value = Q(value)
    if value.denominator != 1:
        raise InternalInconsistency(f"closed form for {rs.family} at {nu} is {value}")
    return int(value)


def shifted_point(rs: RootSystem, nu) -> exact.Vector:
    """``nu~ + eta = sum_j nu_j w_j`` in ambient coordinates."""
    nu = _nu(rs, nu)
    return exact.combination(nu, rs.fundamental_weights)


def eigenvalue_root_form(rs: RootSystem, nu) -> int:
    """R = c**2 (<nu~+eta, nu~+eta> - <eta, eta>) with nu~ = sum (nu_j - 1) w_j."""
    nu = _nu(rs, nu)
    eta = rs.weyl_vector
    nu_tilde = exact.combination([x - 1 for x in nu], rs.fundamental_weights)
    p = exact.add(nu_tilde, eta)
    value = rs.c ** 2 * (exact.inner(p, p) - exact.inner(eta, eta))
    if value.denominator != 1:
        raise InternalInconsistency(f"root form for {rs.family} at {nu} is {value}")
    return int(value)


def integer_vector(rs: RootSystem, nu) -> tuple[int, ...]:
    """n = A nu; the numerator is sum(n**2) - R0."""
    nu = _nu(rs, nu)
    return tuple(sum(a * x for a, x in zip(row, nu)) for row in rs.matrix_A)


def eigenvalue_matrix_form(rs: RootSystem, nu) -> int:
    return sum(x * x for x in integer_vector(rs, nu)) - rs.R0


def eigenvalue(rs: RootSystem, nu) -> Q:
    """lambda * gamma as an exact rational (gamma is left symbolic)."""
    return Q(eigenvalue_root_form(rs, nu), rs.b_table)


# --- Weyl dimension --------------------------------------------------------

_WEYL_CACHE: dict = {}


def _weyl_data(rs: RootSystem):
    # integer root vectors and the product of (c*eta, a) denominators
    hit = _WEYL_CACHE.get(rs.family)
    if hit is not None:
        return hit
    scale = exact.denominator_lcm(rs.positive_roots)
    roots = [tuple(int(scale * x) for x in a) for a in rs.positive_roots]
    wm = weight_matrix(rs)
    c_eta = tuple(sum(row) for row in wm)
    den = 1
    for a in roots:
        den *= sum(x * y for x, y in zip(c_eta, a))
    _WEYL_CACHE[rs.family] = (wm, roots, den)
    return wm, roots, den


def weyl_dimension(rs: RootSystem, nu) -> int:
    """Dimension of the irreducible representation with shifted weight ``nu``:
    the product over positive roots of (nu~+eta, a) / (eta, a)."""
    nu = _nu(rs, nu)
    wm, roots, den = _weyl_data(rs)
    point = [sum(a * x for a, x in zip(row, nu)) for row in wm]
    num = 1
    for a in roots:
        num *= sum(x * y for x, y in zip(point, a))
    d, rem = divmod(num, den)
    if rem or d <= 0:
        raise InternalInconsistency(f"Weyl dimension of {nu} for {rs.family} is {Q(num, den)}")
    return d


def weyl_dimension_exact(rs: RootSystem, nu) -> int:
    """Same product evaluated term by term in rationals (slow reference path)."""
    p = shifted_point(rs, nu)
    eta = rs.weyl_vector
    prod = Q(1)
    for a in rs.positive_roots:
        prod *= exact.inner(p, a) / exact.inner(eta, a)
    if prod.denominator != 1 or prod <= 0:
        raise InternalInconsistency(f"Weyl dimension is {prod}")
    return int(prod)


# --- enumeration -----------------------------------------------------------

def search_box(rs: RootSystem, R_max: int, margin: int = 0) -> tuple[int, ...]:
    """Per-component bound on nu for eigenvalue numerators <= R_max.

    |A nu| >= sigma_min(A) |nu|, so |nu| <= sqrt(R_max + R0) / sigma_min;
    sigma_min is shrunk by 1% against floating-point error.
    """
    a = np.array(rs.matrix_A, dtype=float)
    sigma_min = float(np.linalg.svd(a, compute_uv=False).min()) * SAFETY
    side = math.floor(math.sqrt(R_max + rs.R0) / sigma_min) + margin
    return (max(side, 1),) * rs.rank


def _gram_int(rs: RootSystem) -> list[list[int]]:
    a = rs.matrix_A
    l = rs.rank
    return [[sum(row[i] * row[j] for row in a) for j in range(l)] for i in range(l)]


class _Search:
    """Depth-first enumeration of nu >= 1 with nu^T Q nu <= bound.

    Coordinates are fixed from the last to the first using the Cholesky
    factor of Q; candidate ranges are widened slightly and every emitted
    point is checked in exact integer arithmetic.  When Q is entrywise
    non-negative the form is increasing in every coordinate, so a partial
    assignment is also cut once it exceeds the bound with the free
    coordinates at their minimum 1.
    """

    def __init__(self, qmat: list[list[int]], bound: int, box: Sequence[int], budget: int):
        self.q = qmat
        self.l = len(qmat)
        self.r = np.linalg.cholesky(np.array(qmat, dtype=float)).T  # Q = R^T R
        self.bound = bound
        self.box = box
        self.budget = budget
        self.visited = 0
        self.monotone = all(x >= 0 for row in qmat for x in row)

    def _floor_value(self, i: int, nu: list[int]) -> int:
        # nu^T Q nu with coordinates below i set to 1
        w = [1] * i + nu[i:]
        q = self.q
        return sum(w[a] * q[a][b] * w[b] for a in range(self.l) for b in range(self.l))

    def _range(self, i: int, nu: list[int], rem: float) -> range:
        r = self.r
        s = sum(r[i, j] * nu[j] for j in range(i + 1, self.l))
        rad = math.sqrt(max(rem, 0.0)) + 1e-7 * (1 + math.sqrt(self.bound))
        lo = math.ceil((-s - rad) / r[i, i])
        hi = math.floor((-s + rad) / r[i, i])
        return range(max(lo, 1), min(hi, self.box[i]) + 1)

    def _partial(self, i: int, nu: list[int]) -> float:
        return float(sum(self.r[i, j] * nu[j] for j in range(i, self.l))) ** 2

    def run(self, top_values: Sequence[int]) -> list[tuple[int, tuple[int, ...]]]:
        l = self.l
        out: list[tuple[int, tuple[int, ...]]] = []
        nu = [0] * l
        q = self.q

        def rec(i: int, rem: float):
            for v in self._range(i, nu, rem):
                self.visited += 1
                if self.visited > self.budget:
                    raise ResourceLimit(
                        f"enumeration visited more than {self.budget} cells; lower R_max")
                nu[i] = v
                if self.monotone and i > 0 and self._floor_value(i, nu) > self.bound:
                    break
                left = rem - self._partial(i, nu)
                if i == 0:
                    val = sum(nu[a] * q[a][b] * nu[b] for a in range(l) for b in range(l))
                    if val <= self.bound:
                        out.append((val, tuple(nu)))
                else:
                    rec(i - 1, left)
            nu[i] = 0

        slack = 1e-9 * (1 + self.bound)
        for v in top_values:
            nu[l - 1] = v
            left = self.bound + slack - self._partial(l - 1, nu)
            if left < -slack:
                continue
            if self.monotone and l > 1 and self._floor_value(l - 1, nu) > self.bound:
                continue
            self.visited += 1
            if l == 1:
                val = q[0][0] * v * v
                if val <= self.bound:
                    out.append((val, (v,)))
            else:
                rec(l - 2, left)
        return out


def enumerate_weights(rs: RootSystem, R_max: int, *, margin: int = 0,
                      budget: int = DEFAULT_CELL_BUDGET,
                      threads: int = 1) -> list[tuple[int, tuple[int, ...]]]:
    """All (R, nu) with R <= R_max, sorted by R then nu."""
    if R_max < 0:
        raise ValueError("R_max must be non-negative")
    box = search_box(rs, R_max, margin)
    qmat = _gram_int(rs)
    bound = R_max + rs.R0
    top = list(range(1, box[-1] + 1))
    if threads <= 1:
        found = _Search(qmat, bound, box, budget).run(top)
    else:
        chunks = [top[k::threads] for k in range(threads)]
        per = max(budget // threads, 1)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = pool.map(lambda ch: _Search(qmat, bound, box, per).run(ch), chunks)
            found = [item for part in parts for item in part]
    pairs = [(val - rs.R0, nu) for val, nu in found]
    pairs.sort()
    return pairs


def enumerate_spectrum(rs: RootSystem, R_max: int, *, margin: int = 0,
                       budget: int = DEFAULT_CELL_BUDGET, threads: int = 1,
                       with_dims: bool = True) -> SpectrumTable:
    """Complete table of eigenvalue numerators R <= R_max with their weights."""
    pairs = enumerate_weights(rs, R_max, margin=margin, budget=budget, threads=threads)
    records: list[EigenvalueRecord] = []
    i = 0
    while i < len(pairs):
        j = i
        while j < len(pairs) and pairs[j][0] == pairs[i][0]:
            j += 1
        weights = tuple(nu for _, nu in pairs[i:j])
        dims = tuple(weyl_dimension(rs, w) for w in weights) if with_dims else ()
        records.append(EigenvalueRecord(pairs[i][0], weights, dims))
        i = j
    return SpectrumTable(rs.family, R_max, rs.b_table, rs.R0, tuple(records),
                         search_box(rs, R_max, margin))


def spectrum_for(family: GroupFamily | str, R_max: int, **kwargs) -> SpectrumTable:
    if isinstance(family, str):
        family = GroupFamily.parse(family)
    return enumerate_spectrum(build_root_system(family), R_max, **kwargs)


def multiplicity_counts(rs: RootSystem, R_max: int, **kwargs) -> list[int]:
    """N_R for R = 0..R_max as a dense list."""
    counts = [0] * (R_max + 1)
    for R, _ in enumerate_weights(rs, R_max, **kwargs):
        counts[R] += 1
    return counts
