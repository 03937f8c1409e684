import json

import pytest

from ringclass.conductor import factorization
from ringclass.cubicenum import enumerate_fields
from ringclass.tables import (CYCLIC, EXPECTED, NON_CYCLIC_REAL, NON_PURE, PURE,
                              build_census, census_for_preset, census_to_json,
                              conductor_shape, counted, diff_against_expected, field_totals,
                              rows_to_csv, summary)


@pytest.fixture(scope="module")
def census_1972(negative_fields):
    return census_for_preset("angell1972", records=negative_fields)


@pytest.fixture(scope="module")
def census_1975(positive_fields):
    return census_for_preset("angell1975", records=positive_fields)


@pytest.mark.parametrize("d, f, rho, shape", [
    (-23, 5, 1, ("q", "q=-1 mod 3", 1)),
    (-15, 3, 0, ("3", "d=+3 mod 9", 0)),
    (-39, 3, 0, ("3", "d=-3 mod 9", 0)),
    (-3, 9, 0, ("9", "d=-3", 0)),
    (-3, 6, 0, ("3q", "d=-3", 0)),
    (-4, 9, 0, ("9", "d=-1 mod 3", 0)),
    (-3, 2 * 5 * 7, 0, ("q1q2l", "q=-1, l=+1 mod 3", 0)),
    (1, 63, 0, ("9l", "d=1", 0)),
    (1, 7 * 13, 0, ("l1l2", "l=+1 mod 3", 0)),
    (-4027, 1, 2, ("1", "unramified", 2)),
])
def test_shapes(d, f, rho, shape):
    s = conductor_shape(factorization(d, f), rho)
    assert (s.pattern, s.condition, s.rhoClass) == shape


def test_counted_pairs():
    assert not counted(-7, 1, 0)
    assert counted(-23, 1, 1)
    assert not counted(-3, 3, 0)
    assert counted(-3, 6, 0)


def test_pure_table_matches(census_1972):
    assert field_totals(census_1972[PURE]) == (32, 35, 20)
    assert [m for m in diff_against_expected(census_1972, "angell1972")
            if m.stratum == PURE] == []


def test_cyclic_table_matches(census_1975):
    rows = census_1975[CYCLIC]
    assert field_totals(rows) == (41, 51, 0)
    assert summary(rows)["m1"] == 31 and summary(rows)["m2"] == 10
    assert [m for m in diff_against_expected(census_1975, "angell1975")
            if m.stratum == CYCLIC] == []


def test_realized_fields_match(census_1972, census_1975):
    # every cell counting actual fields agrees with the reference
    discs, fields, _ = field_totals(census_1972[NON_PURE])
    assert (discs, fields) == (2928, 3134)
    discs, fields, _ = field_totals(census_1975[NON_CYCLIC_REAL])
    assert (discs, fields) == (4687, 4753)
    for census, preset in ((census_1972, "angell1972"), (census_1975, "angell1975")):
        for m in diff_against_expected(census, preset):
            assert m.column in ("total", "m0"), m


def test_remaining_differences_are_unlisted_nilets(census_1972, census_1975):
    """Pins down the only cells that differ from the reference tables."""
    extra = {}
    for census, preset in ((census_1972, "angell1972"), (census_1975, "angell1975")):
        for m in diff_against_expected(census, preset):
            if m.row != ("summary",) and m.column == "m0":
                assert m.expected == 0
                extra[(m.stratum,) + m.row] = m.actual
    assert sum(v for k, v in extra.items() if k[0] == NON_PURE) == 2
    assert sum(v for k, v in extra.items() if k[0] == NON_CYCLIC_REAL) == 47
    assert all(k[3] >= 1 for k in extra)


def test_partition_of_pairs(census_1972):
    rows = census_1972[NON_PURE]
    assert sum(r.totalAdmissible for r in rows) == summary(rows)["total"]
    for r in rows:
        assert r.totalAdmissible == sum(r.byMultiplicity.values())


def test_no_nilets_at_rank_zero(census_1972):
    for r in census_1972[NON_PURE]:
        if r.shape.rhoClass == 0:
            assert r.nilets == 0, r.shape


def test_fault_injection_is_detected():
    recs = enumerate_fields(20000, -1, maximal_only=False)
    with pytest.raises(ValueError):
        census_for_preset("angell1972", records=recs)
    census = census_for_preset("angell1972", records=recs, strict=False)
    assert diff_against_expected(census, "angell1972")


def test_unknown_preset():
    with pytest.raises(ValueError):
        diff_against_expected({}, "angell1999")


def test_stratum_sign_mismatch():
    with pytest.raises(ValueError):
        build_census(1000, 1, PURE)


def test_exports(census_1972):
    text = rows_to_csv(census_1972[PURE])
    assert text.splitlines()[0] == "pattern,condition,rho,total,m0,m1,m2,m3,m4,fields"
    data = json.loads(census_to_json(census_1972))
    assert data[PURE]["totals"] == [32, 35, 20]
    assert data[NON_PURE]["summary"]["m4"] == 22


def test_reference_tables_are_consistent():
    for preset, spec in EXPECTED.items():
        for stratum, table in spec.items():
            if not isinstance(table, dict):
                continue
            total = sum(r["total"] for r in table["rows"])
            assert total == table["summary"]["total"], (preset, stratum)
            for r in table["rows"]:
                assert sum(r["mult"].values()) == r["total"], r
