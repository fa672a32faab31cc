import json

import pytest

from ..exactnum import LaurentPoly
from ..propcheck import (
    FIBONACCI,
    POWER2,
    THIRDS,
    UNIT,
    classify,
    exponent_fn,
    family_index,
    family_match,
    group_name,
    parse_exponent_fn,
    partitions,
    reference_sequence,
    scan_exponents,
    verify_generalized_paths,
    verify_prop1,
    verify_prop2,
    verify_prop3,
)
from ..qcomplex import q_fibonacci, q_fibonacci_family
from ..utils.pydantic_models import canonical_json


def test_reference_sequences():
    assert [reference_sequence("jacobsthal", n) for n in range(7)] == [0, 1, 1, 3, 5, 11, 21]
    assert [reference_sequence("floor3", n) for n in range(4)] == [0, 1, 4, 13]
    assert [reference_sequence("ceil3", n) for n in range(4)] == [1, 2, 5, 14]
    with pytest.raises(ValueError):
        reference_sequence("primes", 3)


def test_family_index():
    assert family_index("fibonacci", 8) == 6
    assert family_index("fibonacci", -5) == 5
    assert family_index("fibonacci", 4) is None
    assert family_index("power2", 1) == 0
    assert family_index("power2", 0) is None


def test_classify():
    assert classify(-13, FIBONACCI) == ("match", "fibonacci", 7)
    assert classify(6, FIBONACCI) == ("mismatch", None, None)
    assert classify(0, POWER2) == ("match", None, None)
    assert classify(-1, UNIT) == ("match", None, None)
    assert classify(6, THIRDS) == ("out-of-family", None, None)
    assert classify(13, THIRDS)[:2] == ("match", "floor3")


def test_partitions():
    assert partitions(4) == [(2, 0), (1, 1), (0, 2)]
    assert partitions(2) == [(0, 0)]
    with pytest.raises(ValueError):
        partitions(1)
    assert group_name(3, 5, 3, 0) == "d=3 N=5 m=3 s=0"


def test_exponent_function_names():
    assert (exponent_fn("pentagonal").A, exponent_fn("pentagonal").B) == (3, -1)
    assert exponent_fn("rr14").label == "rr_1_4"
    assert (parse_exponent_fn("custom:5,-1").A, parse_exponent_fn("custom:5,-1").B) == (5, -1)
    assert parse_exponent_fn("one_plus:4").B == -2
    assert parse_exponent_fn("zero")(7) == 0
    with pytest.raises(ValueError):
        parse_exponent_fn("bogus")
    with pytest.raises(ValueError):
        parse_exponent_fn("custom:1")


def test_family_match():
    assert family_match(q_fibonacci(5).shift(3), 1) == (5, 1, 3)
    assert family_match(-q_fibonacci(5), 1) == (5, -1, 0)
    assert family_match(LaurentPoly.zero(), 2) == (0, 1, 0)
    assert family_match(LaurentPoly({0: 1, 1: 1}), 1) is None
    # with e = 3, G_2 = 1 and G_3 = G_2 + G_1 = 2
    assert family_match(q_fibonacci_family(3, 3), 3) == (3, 1, 0)


def test_prop1_holds():
    report = verify_prop1(12)
    assert report.ok
    assert report.mismatch_count == 0
    assert report.cells is None
    groups = {s.group for s in report.summary}
    assert "d=2 N=5 m=3 s=0" in groups
    assert all(c.params["N"] == 6 for c in report.out_of_family)


def test_prop1_cells_at_five():
    report = verify_prop1(4, include_cells=True)
    cells = [c for c in report.cells if c.group == "d=2 N=5 m=3 s=0" and c.params["row"] == 4]
    assert [c.actual for c in sorted(cells, key=lambda c: c.params["col"])] == [-3, -2, 2, 3, 0]
    assert all(c.status == "match" for c in cells)


def test_prop1_index_map():
    report = verify_prop1(8)
    central = [e for e in report.index_map if e.group == "d=2 N=5 m=3 s=0"]
    assert [e.n for e in central] == [1, 2, 3, 4]
    assert all(e.family == "fibonacci" for e in central if e.value != 0)


def test_prop1_is_independent_of_jobs():
    assert verify_prop1(8, jobs=1).to_json() == verify_prop1(8, jobs=3).to_json()


def test_prop1_row_limit():
    with pytest.raises(ValueError):
        verify_prop1(0)
    with pytest.raises(ValueError):
        verify_prop1(61)


def test_prop2_holds_with_extensions_out_of_family():
    report = verify_prop2(10, 8, include_cells=True)
    assert report.mismatch_count == 0
    cell = next(
        c for c in report.cells
        if c.params == {"d": 3, "row": 4, "col": 0, "m": 3, "s": 1, "N": 6}
    )
    assert cell.actual == 8
    assert cell.status == "out-of-family"
    for c in report.out_of_family:
        assert c.params["m"] > 0 and c.params["s"] > 0


def test_prop2_central_values_at_five():
    report = verify_prop2(6, 1)
    central = [e.value for e in report.index_map if e.group == "d=3 N=5 m=3 s=0"]
    assert central[2] == 1


def test_prop3_holds():
    report = verify_prop3(5, timings=True)
    assert report.mismatch_count == 0
    assert report.runtime.cells == 15
    by_group = {}
    for entry in report.index_map:
        by_group.setdefault(entry.group.split(")")[0] + ")", []).append(entry)
    # q = 1 values of (b) and (c) are Fibonacci numbers F_(2n-1), F_(2n+1)
    assert [e.value for e in by_group["(b)"]] == [1, 2, 5, 13, 34]
    assert [e.value for e in by_group["(c)"]] == [2, 5, 13, 34, 89]
    assert all(e.exponent == 0 for e in by_group["(b)"] + by_group["(c)"])


def test_prop3_report_json_is_canonical():
    text = verify_prop3(3).to_json()
    assert text.endswith("\n")
    data = json.loads(text)
    assert list(data) == sorted(data)
    assert "runtime" not in data


@pytest.mark.parametrize("include_cells", [False, True])
def test_report_json_round_trips_byte_for_byte(include_cells):
    text = verify_prop3(5, include_cells=include_cells).to_json()
    assert canonical_json(json.loads(text)) == text
    text = scan_exponents(3, partition=(1, 0), A_range=(2, 4), B_range=(-2, 0), max_n=3).to_json()
    assert canonical_json(json.loads(text)) == text


def test_generalized_paths_pick_the_flat_free_policy():
    report = verify_generalized_paths(max_n=5, max_m=3)
    assert "flat_free" in report.notes["matching_policies"]
    assert report.mismatch_count == 0
    flat_free = next(s for s in report.summary if s.group == "policy=flat_free")
    assert flat_free.match == 6 * 3


def test_scan_ranks_pentagonal_first():
    result = scan_exponents(3, partition=(1, 0), A_range=(0, 4), B_range=(-3, 3), max_n=4)
    top = result.top_ranked()
    assert any((c.A, c.B) == (3, -1) for c in top)
    assert all(c.defect == 0 and c.fibonacci_type for c in top)
    assert [c.rank for c in result.candidates] == sorted(c.rank for c in result.candidates)
    assert all((c.A + c.B) % 2 == 0 for c in result.candidates)


def test_scan_at_two_has_no_fibonacci_type():
    result = scan_exponents(2, max_n=6)
    assert all(value == 0 for c in result.candidates for value in c.values_at_one)
    assert not any(c.fibonacci_type for c in result.candidates)
    vanishing = [c for c in result.candidates if c.vanishing]
    assert {(c.A, c.B) for c in vanishing} == {(1, -1), (1, 1)}
    # identically zero candidates rank last
    assert result.candidates[-len(vanishing):] == vanishing
    assert min(c.rank for c in vanishing) > max(c.rank for c in result.candidates if not c.vanishing)


def test_scan_is_independent_of_jobs():
    kwargs = dict(partition=(2, 0), A_range=(2, 6), B_range=(-4, 0), max_n=3)
    assert scan_exponents(4, jobs=1, **kwargs).to_json() == scan_exponents(4, jobs=2, **kwargs).to_json()


@pytest.mark.parametrize(
    "kwargs",
    [
        {"A_range": (3, 1)},
        {"B_range": (-30, 0)},
        {"max_n": 0},
        {"partition": (2, 2)},
    ],
)
def test_scan_rejects_bad_ranges(kwargs):
    with pytest.raises(ValueError):
        scan_exponents(3, **kwargs)


@pytest.mark.slow
def test_full_proposition_sweeps():
    assert verify_prop1(30).mismatch_count == 0
    assert verify_prop2(25, 20).mismatch_count == 0
    assert verify_prop3(10).mismatch_count == 0
    report = verify_generalized_paths(max_n=8, max_m=4)
    assert "flat_free" in report.notes["matching_policies"]
    assert report.mismatch_count == 0


@pytest.mark.slow
def test_scan_rediscovers_rogers_ramanujan_exponents():
    top = {(c.A, c.B) for c in scan_exponents(5, max_n=8).top_ranked()}
    assert {(5, -3), (5, -1)} <= top
    top = {(c.A, c.B) for c in scan_exponents(3, max_n=8).top_ranked()}
    assert (3, -1) in top
