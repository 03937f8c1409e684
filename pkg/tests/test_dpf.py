import pytest

from ringclass.cubicenum import CubicFieldRecord
from ringclass.dpf import (PURE_TYPES, SIMPLY_REAL_TYPES, TOTALLY_REAL_TYPES, UNDECIDED,
                           DpfConstraint, DpfType, check_constraint, decidable_type_column,
                           type_family, unramified_types)


def test_unramified_types():
    assert unramified_types("totallyComplex", 1) == {DpfType.ALPHA1}
    assert unramified_types("totallyReal", 1) == {DpfType.DELTA1}
    assert unramified_types("totallyReal", 2) == {DpfType.ALPHA1, DpfType.DELTA1}
    with pytest.raises(ValueError):
        unramified_types("totallyComplex", 0)


@pytest.mark.parametrize("sig", ["totallyReal", "totallyComplex"])
@pytest.mark.parametrize("rho", [1, 2, 3, 5])
def test_at_most_two_types(sig, rho):
    types = unramified_types(sig, rho)
    assert 1 <= len(types) <= 2
    assert (len(types) == 1) == (sig == "totallyComplex" or rho == 1)


@pytest.mark.parametrize("args, ok", [
    ((0, 0, 0, 1, 0, 0, 1), True),
    ((0, 0, 1, 2, 0, 0, 2), True),
    ((1, 0, 0, 1, 0, 0, 1), False),
    ((0, 0, 1, 2, 0, 0, 1), False),   # C above min(rho, 2)
    ((0, 0, 0, 0, 0, 0, 1), False),   # C = 0
    ((2, 1, 0, 0, 4, 1, 0), True),
    ((3, 0, 0, 0, 4, 0, 0), False),   # A above 2
    ((0, 2, 0, 0, 1, 1, 0), False),   # R above s
])
def test_check_constraint(args, ok):
    assert check_constraint(DpfConstraint(*args)) is ok


def _rec(dL, f, dK, cyclic=False):
    return CubicFieldRecord((0, 0, 0), dL, f, dK, "totallyReal" if dL > 0 else "simplyReal",
                            cyclic, dK == -3)


def test_decidable_column():
    assert decidable_type_column(_rec(49, 7, 1, True), 0) == "z"
    assert decidable_type_column(_rec(-23, 1, -23), 1) == "a1"
    assert decidable_type_column(_rec(229, 1, 229), 1) == "d1"
    assert decidable_type_column(_rec(32009, 1, 32009), 2) == UNDECIDED
    assert decidable_type_column(_rec(-23 * 25, 5, -23), 1) == UNDECIDED


def test_families():
    assert type_family("totallyReal") == TOTALLY_REAL_TYPES and len(TOTALLY_REAL_TYPES) == 9
    assert type_family("simplyReal") == SIMPLY_REAL_TYPES
    assert type_family("simplyReal", pure=True) == PURE_TYPES
    assert type_family("totallyReal", cyclic=True) == {DpfType.ZETA}
    assert [str(t) for t in (DpfType.ALPHA1, DpfType.GAMMA, DpfType.ZETA)] == ["a1", "g", "z"]
