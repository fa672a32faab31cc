import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ..reflection import (
    AltSumSpec,
    altsum_by_recurrence,
    altsum_by_residues,
    altsum_row,
    altsum_terms,
    bounded_formula,
    bounded_terms,
    catalan_formula,
    row_shifts,
)
from ..triangles import d_pascal_row

CATALAN = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796]

specs = st.builds(
    lambda d, row, m, s, offset: AltSumSpec(d=d, row=row, m=m, s=s, base_col=offset),
    d=st.integers(2, 4),
    row=st.integers(0, 10),
    m=st.integers(0, 4),
    s=st.integers(0, 4),
    offset=st.integers(-12, 12),
)


def test_catalan_formula():
    assert [catalan_formula(n) for n in range(len(CATALAN))] == CATALAN
    with pytest.raises(ValueError):
        catalan_formula(-1)


@given(st.integers(0, 12))
def test_bounded_formula_limits(n):
    assert bounded_formula(n, n, 0) == catalan_formula(n)
    assert bounded_formula(n, n, n) == math.comb(2 * n, n)
    assert bounded_formula(n, 0, 0) == (1 if n == 0 else 0)


def test_bounded_formula_small_strips():
    assert bounded_formula(2, 1, 0) == 1
    assert bounded_formula(3, 2, 0) == 4


def test_bounded_terms_table():
    terms = {t.label: t for t in bounded_terms(6, 4, 0)}
    assert terms["A0"].value == math.comb(12, 6)
    assert (terms["A1"].value, terms["A1"].column, terms["A1"].sign) == (math.comb(12, 7), 1, -1)
    assert (terms["B1"].value, terms["B1"].column) == (math.comb(12, 1), -5)
    assert (terms["A2"].value, terms["A2"].sign) == (math.comb(12, 12), 1)
    assert terms["B2"].value == math.comb(12, 0)
    assert "A3" not in terms and "B3" not in terms


def test_bounded_terms_reject_negative():
    with pytest.raises(ValueError):
        bounded_terms(3, -1, 0)


@pytest.mark.parametrize(
    "m, s, expected",
    [
        (3, 0, [-3, -2, 2, 3, 0]),
        (2, 1, [-5, 0, 5, 3, -3]),
    ],
)
def test_pascal_row_four_at_five(m, s, expected):
    values = [altsum_row(AltSumSpec(d=2, row=4, base_col=c, m=m, s=s)) for c in range(-2, 3)]
    assert values == expected


def test_terms_list_the_base_once():
    terms = altsum_terms(AltSumSpec(d=2, row=4, base_col=0, m=3, s=0))
    assert [t.label for t in terms] == ["A0", "A1"]
    assert [t.sign * t.value for t in terms] == [6, -4]


def test_far_base_wraps_through_periodic_terms():
    spec = AltSumSpec(d=2, row=2, base_col=9, m=0, s=0)
    terms = altsum_terms(spec)
    assert [t.label for t in terms] == ["B8", "B9", "B10"]
    assert altsum_row(spec) == 0


@given(specs)
def test_residue_regrouping(spec):
    assert altsum_by_residues(spec) == altsum_row(spec)


@given(specs.filter(lambda spec: spec.row >= 1))
def test_row_recurrence(spec):
    assert altsum_by_recurrence(spec) == altsum_row(spec)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
@pytest.mark.parametrize("r", range(1, 26))
def test_row_shifts_rebuild_rows(d, r):
    row, prev = d_pascal_row(d, r), d_pascal_row(d, r - 1)
    shifts = row_shifts(d, r)
    for k in range(row.columns()[0] - 1, row.columns()[-1] + 2):
        assert row.at(k) == sum(prev.at(k - delta) for delta in shifts)


@pytest.mark.parametrize("n", range(0, 10))
def test_bounded_formula_is_symmetric_in_the_walls(n):
    for m in range(0, 11):
        for s in range(0, 11):
            assert bounded_formula(n, m, s) == bounded_formula(n, s, m), (n, m, s)
