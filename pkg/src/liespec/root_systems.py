"""Irreducible root systems in ambient Euclidean coordinates.

Every family is realised on an orthonormal basis e_1..e_m with exact
rational coordinates.  From the positive and simple roots we derive the
fundamental weights, the Weyl vector, the highest root and the integer
constants consumed by :mod:`liespec.spectrum`:

* ``b_root = <hr, hr> + 2 <hr, eta>`` for the highest root ``hr``,
* the integerizing scale ``c`` (least positive integer with ``c * w_j``
  integral for every fundamental weight),
* ``b_table = c**2 * b_root`` and ``R0 = c**2 <eta, eta>``.

With these, the Laplace eigenvalue of the shifted weight ``nu`` is
``R / (b_table * gamma)`` where ``R = |A nu|**2 - R0``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction as Q
from typing import Optional, Sequence

from . import exact
from .errors import DimensionMismatch, InternalInconsistency, InvalidRank, UnsupportedFamily
from .exact import Matrix, Vector

__all__ = [
    "Label", "GroupFamily", "RootSystem", "build_root_system", "inner",
    "matrix_A", "tabulated_constants", "weight_matrix", "ALL_LABELS",
]


class Label(str, Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E8 = "E8"
    F4 = "F4"
    G2 = "G2"


ALL_LABELS = tuple(Label)

_MIN_RANK = {Label.A: 1, Label.B: 2, Label.C: 3, Label.D: 4}
_FIXED_RANK = {Label.E8: 8, Label.F4: 4, Label.G2: 2}


@dataclass(frozen=True)
class GroupFamily:
    """A root-system family together with its rank."""

    label: Label
    rank: int

    def __post_init__(self):
        try:
            label = Label(self.label)
        except ValueError:
            raise UnsupportedFamily(f"unsupported family {self.label!r}") from None
        object.__setattr__(self, "label", label)
        if not isinstance(self.rank, int) or isinstance(self.rank, bool):
            raise InvalidRank(f"rank must be an integer, got {self.rank!r}")
        if label in _FIXED_RANK:
            if self.rank != _FIXED_RANK[label]:
                raise InvalidRank(
                    f"{label.value} has fixed rank {_FIXED_RANK[label]}, got {self.rank}")
        elif self.rank < _MIN_RANK[label]:
            raise InvalidRank(
                f"{label.value}_l requires l >= {_MIN_RANK[label]}, got {self.rank}")

    @classmethod
    def of(cls, label: str, rank: Optional[int] = None) -> "GroupFamily":
        label = str(label).upper()
        if label in ("E6", "E7"):
            raise UnsupportedFamily(f"{label} is not supported (no spectral data)")
        try:
            lab = Label(label)
        except ValueError:
            raise UnsupportedFamily(f"unsupported family {label!r}") from None
        if rank is None:
            if lab not in _FIXED_RANK:
                raise InvalidRank(f"family {label} needs an explicit rank")
            rank = _FIXED_RANK[lab]
        return cls(lab, rank)

    @classmethod
    def parse(cls, text: str, rank: Optional[int] = None) -> "GroupFamily":
        """Parse ``"A3"``, ``"G2"``, ``"B"`` (with ``rank``) or group names
        like ``"SU(3)"``, ``"Spin(8)"``, ``"Sp(3)"``."""
        s = text.strip().replace(" ", "")
        up = s.upper()
        if up.endswith(")") and "(" in up:
            name, arg = up[:-1].split("(", 1)
            n = int(arg)
            if name == "SU":
                return cls(Label.A, n - 1)
            if name == "SP":
                return cls(Label.C, n)
            if name == "SPIN":
                if n % 2:
                    return cls(Label.B, (n - 1) // 2)
                return cls(Label.D, n // 2)
            raise UnsupportedFamily(f"unknown group name {text!r}")
        if up in ("E6", "E7", "E8", "F4", "G2"):
            return cls.of(up, rank)
        if up and up[0] in "ABCD":
            if len(up) > 1:
                r = int(up[1:])
                if rank is not None and rank != r:
                    raise InvalidRank(f"{text!r} conflicts with rank {rank}")
                return cls(Label(up[0]), r)
            return cls.of(up[0], rank)
        raise UnsupportedFamily(f"cannot parse family {text!r}")

    @property
    def name(self) -> str:
        if self.label in _FIXED_RANK:
            return self.label.value
        return f"{self.label.value}{self.rank}"

    @property
    def group_name(self) -> str:
        l = self.rank
        return {
            Label.A: f"SU({l + 1})",
            Label.B: f"Spin({2 * l + 1})",
            Label.C: f"Sp({l})",
            Label.D: f"Spin({2 * l})",
        }.get(self.label, self.label.value)

    @property
    def m_spec(self) -> int:
        """Number of squares in the spectrum: l+1 for A and G2, else l."""
        if self.label in (Label.A, Label.G2):
            return self.rank + 1
        return self.rank

    @property
    def group_dim(self) -> int:
        l = self.rank
        return {
            Label.A: l * (l + 2),
            Label.B: l * (2 * l + 1),
            Label.C: l * (2 * l + 1),
            Label.D: l * (2 * l - 1),
            Label.E8: 248,
            Label.F4: 52,
            Label.G2: 14,
        }[self.label]

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class RootSystem:
    family: GroupFamily
    ambient_dim: int
    positive_roots: tuple[Vector, ...]
    simple_roots: tuple[Vector, ...]
    fundamental_weights: tuple[Vector, ...]
    weyl_vector: Vector
    highest_root: Vector
    b_root: int
    c: int
    b_table: int
    R0: int
    matrix_A: tuple[tuple[int, ...], ...]
    group_dim: int
    # simple-root coordinates of each positive root, same order
    root_heights: tuple[tuple[int, ...], ...] = field(repr=False, default=())

    @property
    def rank(self) -> int:
        return self.family.rank

    @property
    def m_spec(self) -> int:
        return len(self.matrix_A)

    def to_dict(self) -> dict:
        """JSON-ready dictionary; key order is fixed."""
        return {
            "family": self.family.label.value,
            "rank": self.rank,
            "ambient_dim": self.ambient_dim,
            "roots": [exact.as_pairs(r) for r in self.positive_roots],
            "simple_roots": [exact.as_pairs(r) for r in self.simple_roots],
            "fundamental_weights": [exact.as_pairs(w) for w in self.fundamental_weights],
            "weyl_vector": exact.as_pairs(self.weyl_vector),
            "highest_root": exact.as_pairs(self.highest_root),
            "b_root": self.b_root,
            "c": self.c,
            "b_table": self.b_table,
            "R0": self.R0,
            "matrix_A": [list(row) for row in self.matrix_A],
            "group_dim": self.group_dim,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def inner(u: Sequence, v: Sequence) -> Q:
    """Exact inner product in the ambient orthonormal basis."""
    return exact.inner(u, v)


# --- per-family root data ------------------------------------------------

def _e(i: int, n: int, k=1) -> list[Q]:
    v = [Q(0)] * n
    v[i] = Q(k)
    return v


def _pm(i: int, j: int, n: int, sign: int) -> Vector:
    v = _e(i, n)
    v[j] += sign
    return tuple(v)


def _roots_A(l: int):
    n = l + 1
    pos = [_pm(i, j, n, -1) for i in range(n) for j in range(i + 1, n)]
    simple = [_pm(j, j + 1, n, -1) for j in range(l)]
    return n, pos, simple


def _roots_B(l: int):
    pos = [tuple(_e(i, l)) for i in range(l)]
    pos += [_pm(i, j, l, s) for i in range(l) for j in range(i + 1, l) for s in (1, -1)]
    simple = [_pm(j, j + 1, l, -1) for j in range(l - 1)] + [tuple(_e(l - 1, l))]
    return l, pos, simple


def _roots_C(l: int):
    pos = [tuple(_e(i, l, 2)) for i in range(l)]
    pos += [_pm(i, j, l, s) for i in range(l) for j in range(i + 1, l) for s in (1, -1)]
    simple = [_pm(j, j + 1, l, -1) for j in range(l - 1)] + [tuple(_e(l - 1, l, 2))]
    return l, pos, simple


def _roots_D(l: int):
    pos = [_pm(i, j, l, s) for i in range(l) for j in range(i + 1, l) for s in (1, -1)]
    simple = [_pm(j, j + 1, l, -1) for j in range(l - 1)] + [_pm(l - 2, l - 1, l, 1)]
    return l, pos, simple


def _roots_E8():
    n = 8
    half = Q(1, 2)
    # e_j +- e_i for i < j
    pos = [_pm(j, i, n, s) for i in range(n) for j in range(i + 1, n) for s in (1, -1)]
    for signs in itertools.product((0, 1), repeat=7):
        if sum(signs) % 2 == 0:
            pos.append(tuple(half * (-1) ** s for s in signs) + (half,))
    simple = [
        (half, -half, -half, -half, -half, -half, -half, half),
        _pm(0, 1, n, 1),
    ] + [_pm(j - 2, j - 3, n, -1) for j in range(3, 9)]
    return n, pos, simple


def _roots_F4():
    n = 4
    half = Q(1, 2)
    pos = [tuple(_e(i, n)) for i in range(n)]
    pos += [_pm(i, j, n, s) for i in range(n) for j in range(i + 1, n) for s in (1, -1)]
    for signs in itertools.product((1, -1), repeat=3):
        pos.append((half,) + tuple(half * s for s in signs))
    simple = [_pm(1, 2, n, -1), _pm(2, 3, n, -1), tuple(_e(3, n)),
              (half, -half, -half, -half)]
    return n, pos, simple


def _roots_G2():
    pos = [exact.vec(v) for v in (
        (1, -1, 0), (0, -1, 1), (-1, 0, 1), (-2, 1, 1), (1, -2, 1), (-1, -1, 2))]
    simple = [exact.vec((1, -1, 0)), exact.vec((-2, 1, 1))]
    return 3, pos, simple


def _raw_roots(family: GroupFamily):
    l = family.rank
    return {
        Label.A: lambda: _roots_A(l),
        Label.B: lambda: _roots_B(l),
        Label.C: lambda: _roots_C(l),
        Label.D: lambda: _roots_D(l),
        Label.E8: _roots_E8,
        Label.F4: _roots_F4,
        Label.G2: _roots_G2,
    }[family.label]()


# --- the explicit integer matrices of the sum-of-squares parametrisation ---

def matrix_A(family: GroupFamily) -> tuple[tuple[int, ...], ...]:
    """Integer m x l matrix with |A nu|**2 - R0 = b_table * gamma * lambda_nu."""
    l = family.rank
    lab = family.label
    if lab is Label.A:
        rows = [[l + 1 - j for j in range(1, l + 1)]]
        for k in range(2, l + 1):
            rows.append([-j if j < k else l + 1 - j for j in range(1, l + 1)])
        rows.append(list(range(1, l + 1)))
    elif lab is Label.B:
        rows = [[0] * (k - 1) + [2] * (l - k) + [1] for k in range(1, l)]
        rows.append([0] * (l - 1) + [1])
    elif lab is Label.C:
        rows = [[0] * (k - 1) + [1] * (l - k + 1) for k in range(1, l + 1)]
    elif lab is Label.D:
        rows = [[0] * (k - 1) + [2] * (l - 1 - k) + [1, 1] for k in range(1, l - 1)]
        rows.append([0] * (l - 2) + [1, 1])
        rows.append([0] * (l - 2) + [-1, 1])
    elif lab is Label.E8:
        rows = [
            [0, 1, -1, 0, 0, 0, 0, 0],
            [0, 1, 1, 0, 0, 0, 0, 0],
            [0, 1, 1, 2, 0, 0, 0, 0],
            [0, 1, 1, 2, 2, 0, 0, 0],
            [0, 1, 1, 2, 2, 2, 0, 0],
            [0, 1, 1, 2, 2, 2, 2, 0],
            [0, 1, 1, 2, 2, 2, 2, 2],
            [4, 5, 7, 10, 8, 6, 4, 2],
        ]
    elif lab is Label.F4:
        rows = [[2, 4, 3, 2], [2, 2, 1, 0], [0, 2, 1, 0], [0, 0, 1, 0]]
    else:
        rows = [[1, 1], [1, 2], [0, 1]]
    return tuple(tuple(r) for r in rows)


def tabulated_constants(family: GroupFamily) -> tuple[int, int]:
    """(b, R0) evaluated from the closed-form table entries for the family."""
    l = family.rank
    lab = family.label
    if lab is Label.A:
        b = 2 * (l + 1) ** 3
        r0 = Q(sum((l - 2 * (k - 1)) ** 2 * (l + 1) ** 2 for k in range(1, l + 2)), 4)
    elif lab is Label.B:
        b = 16 * l - 8
        r0 = sum((2 * (l - k) + 1) ** 2 for k in range(1, l + 1))
    elif lab is Label.C:
        b = 4 * (l + 1)
        r0 = Q(l * (l + 1) * (2 * l + 1), 6)
    elif lab is Label.D:
        b = 16 * l - 16
        r0 = sum((2 * (l - k)) ** 2 for k in range(1, l + 1))
    else:
        b, r0 = {Label.E8: (240, 2480), Label.F4: (72, 156), Label.G2: (24, 14)}[lab]
    r0 = Q(r0)
    if r0.denominator != 1:
        raise InternalInconsistency(f"tabulated R0 for {family} is not an integer: {r0}")
    return b, int(r0)


# --- derived quantities --------------------------------------------------

def _as_int(x: Q, what: str) -> int:
    if Q(x).denominator != 1:
        raise InternalInconsistency(f"{what} = {x} is not an integer")
    return int(x)


def _simple_coordinates(root: Vector, simple: Sequence[Vector], gram_inv: Matrix) -> tuple[int, ...]:
    rhs = [exact.inner(a, root) for a in simple]
    coeffs = exact.matvec(gram_inv, rhs)
    if exact.combination(coeffs, simple) != tuple(root):
        raise InternalInconsistency(f"root {root} is not in the span of the simple roots")
    return tuple(_as_int(c, f"simple coordinate of {root}") for c in coeffs)


def build_root_system(family: GroupFamily) -> RootSystem:
    """Construct the root data of ``family`` and derive all constants."""
    if not isinstance(family, GroupFamily):
        raise TypeError("build_root_system expects a GroupFamily")
    n, pos, simple = _raw_roots(family)
    pos = sorted(tuple(Q(x) for x in r) for r in pos)
    simple = [tuple(Q(x) for x in a) for a in simple]
    l = family.rank

    g = exact.gram(simple)
    g_inv = exact.inverse(g)
    # w_i = sum_j X_ij a_j with X = diag(|a|^2 / 2) G^{-1}
    weights = []
    for i in range(l):
        half_norm = g[i][i] / 2
        weights.append(exact.combination([half_norm * x for x in g_inv[i]], simple))

    heights = tuple(_simple_coordinates(r, simple, g_inv) for r in pos)
    for r, h in zip(pos, heights):
        if min(h) < 0:
            raise InternalInconsistency(f"positive root {r} has a negative simple coordinate")

    eta = exact.scale(Q(1, 2), exact.combination([1] * len(pos), pos))
    top = max(range(len(pos)), key=lambda i: sum(heights[i]))
    hr = pos[top]
    if any(a < b for a, b in zip(heights[top], map(max, zip(*heights)))):
        raise InternalInconsistency("no positive root dominates all others")

    c = exact.denominator_lcm(weights)
    b_root = _as_int(exact.inner(hr, hr) + 2 * exact.inner(hr, eta), "b_root")
    r0 = _as_int(c * c * exact.inner(eta, eta), "R0")

    return RootSystem(
        family=family,
        ambient_dim=n,
        positive_roots=tuple(pos),
        simple_roots=tuple(simple),
        fundamental_weights=tuple(weights),
        weyl_vector=eta,
        highest_root=hr,
        b_root=b_root,
        c=c,
        b_table=c * c * b_root,
        R0=r0,
        matrix_A=matrix_A(family),
        group_dim=2 * len(pos) + l,
        root_heights=heights,
    )


def weight_matrix(rs: RootSystem) -> tuple[tuple[int, ...], ...]:
    """Integer matrix whose columns are ``c * w_j`` in ambient coordinates.

    Since ``eta = sum_j w_j``, this maps ``nu`` to ``c * (nu~ + eta)``; it is
    derived from the roots alone and agrees with :func:`matrix_A` up to a
    signed permutation of the rows.
    """
    cols = [[_as_int(rs.c * x, "scaled weight") for x in w] for w in rs.fundamental_weights]
    return tuple(tuple(col[k] for col in cols) for k in range(rs.ambient_dim))


def check_nu(rs: RootSystem, nu: Sequence[int]) -> tuple[int, ...]:
    if len(nu) != rs.rank:
        raise DimensionMismatch(f"{rs.family}: expected {rs.rank} components, got {len(nu)}")
    nu = tuple(int(x) for x in nu)
    if min(nu) < 1:
        raise ValueError(f"shifted weight components must be >= 1, got {nu}")
    return nu
