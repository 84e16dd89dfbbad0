import itertools

import pytest
from hypothesis import given, settings, strategies as st

from liespec import exact
from liespec.errors import DimensionMismatch, ResourceLimit
from liespec.root_systems import GroupFamily, Label, build_root_system, inner
from liespec.spectrum import (
    HighestWeight, eigenvalue, eigenvalue_closed_form, eigenvalue_matrix_form,
    eigenvalue_root_form, enumerate_spectrum, enumerate_weights, integer_vector,
    multiplicity_counts, search_box, spectrum_for, weyl_dimension, weyl_dimension_exact,
)

SMALL = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"]
ALL = SMALL + ["A5", "B5", "C5", "D5", "E8"]


def rs_of(name):
    return build_root_system(GroupFamily.parse(name))


SYSTEMS = {n: rs_of(n) for n in ALL}


# --- examples ---------------------------------------------------------------

def test_g2_examples():
    rs = SYSTEMS["G2"]
    assert eigenvalue_closed_form(rs, (1, 1)) == 0
    assert eigenvalue_closed_form(rs, (2, 1)) == 12
    assert eigenvalue_root_form(rs, (2, 1)) == 12
    assert integer_vector(rs, (1, 1)) == (2, 3, 1)
    assert integer_vector(rs, (2, 1)) == (3, 4, 1)
    assert eigenvalue(rs, (2, 1)) == exact.Q(1, 2)


def test_f4_trivial():
    rs = SYSTEMS["F4"]
    assert integer_vector(rs, (1, 1, 1, 1)) == (11, 5, 3, 1)
    assert eigenvalue_closed_form(rs, (1, 1, 1, 1)) == 0


def test_e8_trivial():
    rs = SYSTEMS["E8"]
    assert sum(x * x for x in integer_vector(rs, (1,) * 8)) == 2480


@pytest.mark.parametrize("k", range(0, 8))
def test_a1_closed_form(k):
    rs = SYSTEMS["A1"]
    assert eigenvalue_root_form(rs, (k + 1,)) == 2 * k * (k + 2)
    assert weyl_dimension(rs, (k + 1,)) == k + 1


def test_f4_printed_last_square_is_inconsistent():
    # the expanded F4 formula with nu_4**2 as its last square disagrees with
    # the root computation (and with the matrix); nu_3**2 is the consistent one
    rs = SYSTEMS["F4"]

    def printed(n1, n2, n3, n4):
        return ((2 * n1 + 4 * n2 + 3 * n3 + 2 * n4) ** 2 + (2 * n1 + 2 * n2 + n3) ** 2
                + (2 * n2 + n3) ** 2 + n4 ** 2 - 156)

    nu = (1, 1, 1, 2)
    assert printed(*nu) == 51
    assert eigenvalue_root_form(rs, nu) == 48 == eigenvalue_closed_form(rs, nu)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        eigenvalue_closed_form(SYSTEMS["G2"], (1, 1, 1))
    with pytest.raises(DimensionMismatch):
        integer_vector(SYSTEMS["B3"], (1, 1))
    with pytest.raises(ValueError):
        eigenvalue_root_form(SYSTEMS["G2"], (0, 1))
    with pytest.raises(ValueError):
        HighestWeight((1, 0))


# --- triple equivalence -------------------------------------------------------

@pytest.mark.parametrize("name", SMALL + ["B5", "C5", "D5"])
def test_three_routes_agree_on_box(name):
    rs = SYSTEMS[name]
    top = 3 if rs.rank <= 4 else 2
    for nu in itertools.product(range(1, top + 1), repeat=rs.rank):
        r = eigenvalue_root_form(rs, nu)
        assert eigenvalue_closed_form(rs, nu) == r
        assert eigenvalue_matrix_form(rs, nu) == r


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ALL), st.data())
def test_three_routes_agree_random(name, data):
    rs = SYSTEMS[name]
    nu = data.draw(st.tuples(*[st.integers(1, 40)] * rs.rank))
    r = eigenvalue_root_form(rs, nu)
    assert eigenvalue_closed_form(rs, nu) == r == eigenvalue_matrix_form(rs, nu)
    assert r >= 0
    assert (r == 0) == (set(nu) == {1})


@pytest.mark.parametrize("name", ALL)
def test_adjoint_weight_has_numerator_b(name):
    # the Casimir of the adjoint representation equals 1 in Killing normalization
    rs = SYSTEMS[name]
    hr = rs.highest_root
    nu = tuple(1 + 2 * inner(hr, a) / inner(a, a) for a in rs.simple_roots)
    assert all(x.denominator == 1 for x in nu)
    nu = tuple(int(x) for x in nu)
    assert eigenvalue_root_form(rs, nu) == rs.b_table
    assert weyl_dimension(rs, nu) == rs.group_dim


# --- Weyl dimension -----------------------------------------------------------

KNOWN_DIMS = [
    ("A3", (2, 1, 1), 4), ("A3", (1, 2, 1), 6), ("B3", (2, 1, 1), 7), ("B3", (1, 1, 2), 8),
    ("C3", (2, 1, 1), 6), ("D4", (2, 1, 1, 1), 8), ("D4", (1, 1, 1, 2), 8),
    ("G2", (2, 1), 7), ("G2", (1, 2), 14), ("F4", (1, 1, 1, 2), 26), ("F4", (2, 1, 1, 1), 52),
    ("E8", (2, 1, 1, 1, 1, 1, 1, 1), 3875), ("E8", (1, 1, 1, 1, 1, 1, 1, 2), 248), ("A1", (2,), 2),
]


@pytest.mark.parametrize("name,nu,dim", KNOWN_DIMS)
def test_known_dimensions(name, nu, dim):
    rs = SYSTEMS[name]
    assert weyl_dimension(rs, nu) == dim
    assert weyl_dimension_exact(rs, nu) == dim


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_weyl_dimension_paths_agree(name, data):
    rs = SYSTEMS[name]
    nu = data.draw(st.tuples(*[st.integers(1, 12)] * rs.rank))
    d = weyl_dimension(rs, nu)
    assert d == weyl_dimension_exact(rs, nu) >= 1
    if set(nu) == {1}:
        assert d == 1


def test_a2_dimension_formula():
    rs = SYSTEMS["A2"]
    for a, b in itertools.product(range(1, 8), repeat=2):
        assert weyl_dimension(rs, (a, b)) == a * b * (a + b) // 2


# --- enumeration ----------------------------------------------------------------

def monotone_oracle(rs, R_max):
    """Every nu with R <= R_max, found without any precomputed box.

    Adding a fundamental weight strictly increases |nu~ + eta|, so each
    coordinate can be walked upward until the bound is exceeded with all
    later coordinates at their minimum.
    """
    l = rs.rank
    out = []

    def rec(prefix):
        if len(prefix) == l:
            out.append((eigenvalue_root_form(rs, prefix), tuple(prefix)))
            return
        x = 1
        while eigenvalue_root_form(rs, prefix + [x] + [1] * (l - len(prefix) - 1)) <= R_max:
            rec(prefix + [x])
            x += 1

    rec([])
    return sorted(out)


@pytest.mark.parametrize("name,R_max", [("A1", 200), ("A2", 500), ("A3", 600), ("B2", 300),
                                        ("B3", 200), ("C3", 120), ("D4", 250), ("G2", 400),
                                        ("F4", 250)])
def test_enumeration_matches_oracle(name, R_max):
    rs = SYSTEMS[name]
    assert enumerate_weights(rs, R_max) == monotone_oracle(rs, R_max)


def test_g2_table_small():
    t = spectrum_for("G2", 12)
    assert [(r.R, r.weights) for r in t.records] == [(0, ((1, 1),)), (12, ((2, 1),))]
    assert t.records[1].weyl_dims == (7,) and t.records[1].mult == 49
    t0 = spectrum_for("G2", 0)
    assert len(t0.records) == 1 and t0.records[0].N_R == 1 and t0.records[0].mult == 1


@pytest.mark.parametrize("name,R_max", [("A2", 1500), ("B3", 800), ("D4", 800), ("G2", 2000),
                                        ("F4", 1500), ("E8", 2000)])
def test_box_enlargement_invariance(name, R_max):
    rs = SYSTEMS[name]
    base = enumerate_spectrum(rs, R_max, with_dims=False)
    wider = enumerate_spectrum(rs, R_max, margin=1, with_dims=False)
    assert base.records == wider.records
    assert wider.box == tuple(x + 1 for x in base.box)


@pytest.mark.parametrize("name", ["A3", "C3", "G2", "F4"])
def test_table_invariants(name):
    rs = SYSTEMS[name]
    t = enumerate_spectrum(rs, 800)
    rs_list = [r.R for r in t.records]
    assert rs_list == sorted(set(rs_list))
    assert t.records[0].R == 0 and t.records[0].weights == ((1,) * rs.rank,)
    images = set()
    for rec in t.records:
        assert rec.N_R == len(rec.weights) >= 1
        for nu in rec.weights:
            assert eigenvalue_closed_form(rs, nu) == rec.R
            images.add(integer_vector(rs, nu))
    # injectivity of nu -> A nu
    assert len(images) == sum(r.N_R for r in t.records)
    dense = multiplicity_counts(rs, 800)
    assert sum(dense) == sum(r.N_R for r in t.records)


def test_threads_do_not_change_output():
    rs = SYSTEMS["F4"]
    assert enumerate_weights(rs, 1500, threads=1) == enumerate_weights(rs, 1500, threads=4)


def test_budget_exhaustion():
    with pytest.raises(ResourceLimit):
        enumerate_weights(SYSTEMS["E8"], 5000, budget=100)


def test_search_box_covers_all_weights():
    rs = SYSTEMS["A3"]
    box = search_box(rs, 1000)
    for _, nu in enumerate_weights(rs, 1000):
        assert all(x <= b for x, b in zip(nu, box))


def test_csv_and_json_shapes():
    t = spectrum_for("G2", 40)
    rows = list(t.csv_rows())
    assert rows[0] == ["family", "rank", "R", "N_R", "mult", "weights"]
    assert rows[2][0] == "G2" and rows[2][5] == "2:1"
    d = t.to_dict()
    assert d["b_table"] == 24 and d["records"][0]["weights"] == [[1, 1]]
