"""Acceptance suite: one pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the summary lines are
printed even when output capture is on.
"""
import itertools
import math
import time
from fractions import Fraction as Q

import numpy as np
import pytest

from liespec import fourier_verify as fv
from liespec.exponents import breakpoint, grid, recip
from liespec.root_systems import GroupFamily, Label, build_root_system
from liespec.spectrum import (
    eigenvalue_closed_form, eigenvalue_matrix_form, eigenvalue_root_form, multiplicity_counts,
)
from liespec.sum_of_squares import (
    count_brute, count_divisor_formula, count_theta, growth_report,
)

# observed maximum on [100, 10^4] is 1.5544 (at R = 101); frozen with headroom
S3_RATIO_CEILING = 1.6


@pytest.fixture
def report(capsys):
    def emit(n, ok, text):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {n}: {text}")
        return ok
    return emit


# (b, R0) typed in from the tabulated closed forms, evaluated by hand
TABLE1 = {
    ("A", 1): (16, 2), ("A", 2): (54, 18), ("A", 3): (128, 80), ("A", 4): (250, 250),
    ("A", 5): (432, 630), ("A", 6): (686, 1372),
    ("B", 2): (24, 10), ("B", 3): (40, 35), ("B", 4): (56, 84), ("B", 5): (72, 165),
    ("B", 6): (88, 286),
    ("C", 3): (16, 14), ("C", 4): (20, 30), ("C", 5): (24, 55), ("C", 6): (28, 91),
    ("D", 4): (48, 56), ("D", 5): (64, 120), ("D", 6): (80, 220),
    ("E8", 8): (240, 2480), ("F4", 4): (72, 156), ("G2", 2): (24, 14),
}


def test_criterion_1_table(report):
    t0 = time.perf_counter()
    bad = []
    for (lab, l), expected in TABLE1.items():
        rs = build_root_system(GroupFamily(Label(lab), l))
        if (rs.b_table, rs.R0) != expected:
            bad.append((lab, l, (rs.b_table, rs.R0), expected))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 1.0
    report(1, ok, f"(b, R0) for {len(TABLE1)} family/rank pairs exact, "
                  f"{len(bad)} mismatches, {elapsed:.2f}s (< 1s)")
    assert ok, bad


TRIPLE_CASES = [("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("B", 4), ("C", 3), ("C", 4),
                ("D", 4), ("D", 5), ("F4", 4), ("G2", 2), ("E8", 8)]


def test_criterion_2_triple_equivalence(report):
    t0 = time.perf_counter()
    checked = 0
    bad = []
    for lab, l in TRIPLE_CASES:
        rs = build_root_system(GroupFamily(Label(lab), l))
        top = 2 if lab == "E8" else 4
        for nu in itertools.product(range(1, top + 1), repeat=l):
            a = eigenvalue_closed_form(rs, nu)
            b = eigenvalue_root_form(rs, nu)
            c = eigenvalue_matrix_form(rs, nu)
            checked += 1
            if not a == b == c:
                bad.append((lab, l, nu, a, b, c))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 60
    report(2, ok, f"closed form = root form = |A nu|^2 - R0 on {checked} weights, "
                  f"{len(bad)} mismatches, {elapsed:.1f}s (< 60s)")
    assert ok, bad[:5]


def test_criterion_3_spectral_bound(report):
    t0 = time.perf_counter()
    R_max = 2000
    worst = {}
    bad = []
    for name in ("SU(3)", "Spin(5)", "Sp(3)", "Spin(8)", "G2", "F4"):
        rs = build_root_system(GroupFamily.parse(name))
        n = multiplicity_counts(rs, R_max)
        r = count_theta(rs.m_spec, R_max + rs.R0).counts
        worst[name] = max(n[R] / r[R + rs.R0] for R in range(R_max + 1) if n[R])
        bad += [(name, R) for R in range(R_max + 1) if n[R] > r[R + rs.R0]]
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 300
    summary = ", ".join(f"{k} {v:.3f}" for k, v in worst.items())
    report(3, ok, f"N_R <= r_m(R+R0) for R <= {R_max}; max N_R/r_m: {summary}; "
                  f"{elapsed:.1f}s (< 300s)")
    assert ok, bad[:5]


def test_criterion_4_counting_backends(report):
    bad = []
    for s in range(1, 7):
        if count_brute(s, 2000).counts != count_theta(s, 2000).counts:
            bad.append(("brute/theta", s))
    for s in (2, 4):
        d = count_divisor_formula(s, 10_000).counts
        if d != count_theta(s, 10_000).counts:
            bad.append(("divisor/theta", s))
        if d != count_brute(s, 10_000).counts:
            bad.append(("divisor/brute", s))
    fixed = (count_divisor_formula(2, 25)[25], count_divisor_formula(4, 1)[1],
             count_divisor_formula(4, 12)[12], count_brute(2, 25)[25], count_brute(4, 12)[12])
    if fixed != (12, 8, 96, 12, 96):
        bad.append(("fixed", fixed))
    ok = not bad
    report(4, ok, "brute = theta for s <= 6, R <= 2000; divisor = both for s in {2,4}, "
                  f"R <= 10^4; r2(25)=12, r4(1)=8, r4(12)=96; {len(bad)} mismatches")
    assert ok, bad


def test_criterion_5_growth(report):
    parts = []
    ok = True
    for s in (5, 6):
        rep = growth_report(s, 100, 10_000)
        good = 0 < rep.ratio_min <= rep.ratio_max < math.inf and not rep.zero_R
        ok &= good
        parts.append(f"s={s} ratio in [{rep.ratio_min:.3f}, {rep.ratio_max:.3f}]")
    rep3 = growth_report(3, 100, 10_000)
    ok &= rep3.ratio_max < S3_RATIO_CEILING
    parts.append(f"s=3 max {rep3.ratio_max:.4f} < {S3_RATIO_CEILING} "
                 f"({len(rep3.zero_R)} obstructed R)")
    report(5, ok, "growth envelopes on [100, 10^4]: " + "; ".join(parts))
    assert ok


def _families():
    for lab, lo in ((Label.A, 2), (Label.B, 2), (Label.C, 3), (Label.D, 4)):
        for l in range(lo, 9):
            yield GroupFamily(lab, l)
    for name in ("E8", "F4", "G2"):
        yield GroupFamily.of(name)


def test_criterion_6_exponent_identities(report):
    n = 0
    bad = []
    for pr in grid(_families()):
        n += 1
        gap = pr.s0R - pr.s0
        if pr.q <= breakpoint(pr.d):
            expect = Q(pr.m, 2) - Q(pr.d + 1, 2) * (Q(1, 2) - recip(pr.q))
        else:
            expect = Q(pr.m - 1, 2)
        if gap != expect or gap < 0:
            bad.append(pr.row())
    ok = not bad and n > 0
    report(6, ok, f"gap identities exact and s0R >= s0 on {n} (family, p, q) grid points, "
                  f"{len(bad)} failures")
    assert ok, bad[:3]


def test_criterion_7_time_side(report):
    freqs = list(range(17))
    gram_err = 0.0
    for bg in (Q(1), Q(24), Q(72), Q(240), Q(2480)):
        T = 2 * math.pi * float(bg)
        G = fv.gram_matrix(freqs, fv.QuadratureConfig.default_for(16), bg)
        gram_err = max(gram_err, float(np.max(np.abs(G - T * np.eye(17)))) / T)
    pars = fv.run_suite("parseval", seed=20240101, samples=100, tolerance=1e-10)
    wain = fv.run_suite("wainger", seed=20240101, samples=200, tolerance=1e-6)
    ok = gram_err < 1e-10 and pars["pass"] and wain["pass"]
    ratios = wain["details"]["results"]["max_ratio"]
    report(7, ok, f"Gram error/T {gram_err:.1e} (< 1e-10); Parseval max rel err "
                  f"{pars['max_error']:.1e} over 100 vectors (< 1e-10); Wainger doubling drift "
                  f"{wain['max_error']:.1e} (< 1e-6), max ratio p=4 {ratios['4']:.4f}, "
                  f"p=6 {ratios['6']:.4f}")
    assert ok
