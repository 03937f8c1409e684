from fractions import Fraction
from math import log, pi, sin

import pytest
from hypothesis import given, settings, strategies as st

from ringclass.arith import is_fundamental, kronecker
from ringclass.errors import NonFundamentalError
from ringclass.quadclass import (BinaryQuadraticForm, class_group, class_number,
                                 fundamental_unit, quadratic_field, rho3, selmer_rank)
from ringclass.quadfield import QuadraticNumber


def analytic_class_number(d):
    """Dirichlet's class number formula, evaluated in floating point."""
    if d < 0:
        w = {-3: 6, -4: 4}.get(d, 2)
        s = sum(kronecker(d, a) * a for a in range(1, -d))
        return round(-w * s / (2 * -d))
    eps = fundamental_unit(d).to_float()
    s = sum(kronecker(d, a) * log(sin(pi * a / d)) for a in range(1, d))
    return round(-s / (2 * log(eps)))


FUNDAMENTAL_NEG = [d for d in range(-3, -3000, -1) if is_fundamental(d)]
FUNDAMENTAL_POS = [d for d in range(5, 1500) if is_fundamental(d)]


def test_small_class_numbers():
    assert class_number(-23) == 3
    assert class_number(-3) == 1
    assert class_number(-4) == 1
    assert class_number(-4027) == 9
    assert class_group(-4027).invariants() == [3, 3]
    assert class_group(-3299).invariants() == [3, 9]


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(FUNDAMENTAL_NEG))
def test_imaginary_class_number_formula(d):
    assert class_number(d) == analytic_class_number(d)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(FUNDAMENTAL_POS))
def test_real_class_number_formula(d):
    assert class_number(d) == analytic_class_number(d)


def test_rho3_examples():
    assert rho3(-23) == 1
    assert rho3(-3) == 0
    assert rho3(-4027) == 2
    assert rho3(229) == 1


def test_first_rank_two_discriminants():
    # smallest imaginary |d| with 3-rank 2, and the smallest real one
    assert max(d for d in range(-3, -3400, -1)
               if is_fundamental(d) and rho3(d) == 2) == -3299
    assert rho3(32009) == 2
    assert class_group(32009).invariants() == [3, 3]


def test_rank_distribution_imaginary_to_20000():
    counts = {}
    for d in range(-3, -20001, -1):
        if is_fundamental(d):
            r = rho3(d)
            counts[r] = counts.get(r, 0) + 1
    # rho = 1 and 2 strata give 2143 singlets and 22 quartets
    assert counts == {0: 3914, 1: 2143, 2: 22}


def test_non_fundamental_rejected():
    with pytest.raises(NonFundamentalError) as exc:
        class_group(-92)
    assert exc.value.square == 2
    with pytest.raises(NonFundamentalError):
        rho3(45)


def test_fundamental_units():
    assert fundamental_unit(5) == QuadraticNumber(5, Fraction(1, 2), Fraction(1, 2))
    assert fundamental_unit(8) == QuadraticNumber(8, 1, Fraction(1, 2))
    assert fundamental_unit(229) == QuadraticNumber(229, Fraction(15, 2), Fraction(1, 2))
    with pytest.raises(ValueError):
        fundamental_unit(1)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FUNDAMENTAL_POS))
def test_fundamental_unit_is_unit(d):
    eps = fundamental_unit(d)
    assert eps.is_integral()
    assert abs(eps.norm()) == 1
    assert eps.to_float() > 1


def test_selmer_rank():
    assert selmer_rank(3, -23, 1) == 1
    assert selmer_rank(3, -3, 0) == 1
    assert selmer_rank(3, 229, 1) == 2
    assert selmer_rank(5, -3, 0) == 0
    with pytest.raises(ValueError):
        selmer_rank(2, -3, 0)
    assert quadratic_field(229).sigma3 == 2


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FUNDAMENTAL_NEG + FUNDAMENTAL_POS[:200]), st.data())
def test_group_law(d, data):
    g = class_group(d)
    x, y, z = (data.draw(st.sampled_from(g.elements)) for _ in range(3))
    assert g.mul(x, g.identity) == x
    assert g.mul(x, y) == g.mul(y, x)
    assert g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z))
    assert g.mul(x, g.inverse(x)) == g.identity
    assert g.power(x, g.h) == g.identity


def test_p_torsion_basis_size():
    g = class_group(-4027)
    basis = g.p_torsion_basis(3)
    assert len(basis) == 2
    assert all(g.order(x) == 3 for x in basis)


def test_compose_disc():
    f = BinaryQuadraticForm(2, 1, 3)
    h, _ = f.compose(f)
    assert h.disc == -23
