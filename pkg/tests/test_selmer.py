from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from ringclass.conductor import (TAME_INERT, TAME_SPLIT, PrimePowerDivisor,
                                 divisor_lattice, factorization)
from ringclass.quadclass import BinaryQuadraticForm, positive_leading
from ringclass.quadfield import QuadraticNumber
from ringclass.selmer import (cube_generator, f3_kernel, f3_rank, is_local_cube,
                              local_dimension, local_image, ring_class_rank, ring_space,
                              selmer_basis)


def test_basis_examples():
    zeta = selmer_basis(-3)
    assert zeta.dimension == 1
    assert zeta.basis[0].element ** 3 == QuadraticNumber(-3, 1)

    b = selmer_basis(-23)
    assert b.dimension == 1
    alpha = b.basis[0].element
    assert abs(alpha.norm()) == 8

    assert selmer_basis(5).dimension == 1
    assert selmer_basis(5).basis[0].element == QuadraticNumber(5, Fraction(1, 2), Fraction(1, 2))
    assert selmer_basis(-4027).dimension == 2
    assert selmer_basis(-7).dimension == 0


@pytest.mark.parametrize("form", [
    BinaryQuadraticForm(2, 1, 3),
    BinaryQuadraticForm(2, -1, 3),
    BinaryQuadraticForm(-9, 7, 5),
])
def test_cube_generator_norm(form):
    alpha = cube_generator(form)
    assert alpha.is_integral()
    assert abs(alpha.norm()) == positive_leading(form).a ** 3


def _f25_power(x, y, k):
    """(x + y t)^k in F_5[t]/(t^2 - 2)."""
    rx, ry = 1, 0
    for _ in range(k):
        rx, ry = (rx * x + 2 * ry * y) % 5, (rx * y + ry * x) % 5
    return rx, ry


def test_local_cube_examples():
    two = PrimePowerDivisor(2, 1, TAME_INERT)
    zeta = selmer_basis(-3).basis[0]
    assert not is_local_cube(zeta, two)
    assert is_local_cube(QuadraticNumber(-3, 1), two)

    # 1 + sqrt 2 at the inert prime 5: a cube iff its 8th power is 1 in F_25
    eps = selmer_basis(8).basis[0]
    five = PrimePowerDivisor(5, 1, TAME_INERT)
    assert is_local_cube(eps, five) == (_f25_power(1, 1, 8) == (1, 0))


def test_local_dimensions():
    assert local_dimension(-23, PrimePowerDivisor(13, 1, TAME_SPLIT)) == 1
    assert local_dimension(-23, PrimePowerDivisor(5, 1, TAME_INERT)) == 1
    assert local_dimension(-4, PrimePowerDivisor(3, 2, "wild")) == 1
    assert local_dimension(-3, PrimePowerDivisor(3, 2, "wild", regular=False)) == 2


ELEMENT = st.tuples(st.integers(-40, 40), st.integers(-40, 40))
PRIMES = [(-23, 5, TAME_INERT), (-23, 13, TAME_SPLIT), (229, 2, TAME_INERT),
          (229, 19, TAME_SPLIT), (-4027, 11, TAME_INERT), (-3, 7, TAME_SPLIT)]


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(PRIMES), ELEMENT, ELEMENT)
def test_local_image_is_a_homomorphism(case, u, v):
    d, q, kind = case
    a = QuadraticNumber.from_half(d, 2 * u[0] + u[1] * (d % 2), u[1])
    b = QuadraticNumber.from_half(d, 2 * v[0] + v[1] * (d % 2), v[1])
    assume(a.norm() % q != 0 and b.norm() % q != 0)
    x = PrimePowerDivisor(q, 1, kind)
    ia, ib, iab = local_image(a, x), local_image(b, x), local_image(a * b, x)
    assert iab == tuple((s + t) % 3 for s, t in zip(ia, ib))
    assert all(c == 0 for c in local_image(a ** 3, x))
    # rational integers prime to q are always local cubes modulo (Z/q)^x
    assert all(c == 0 for c in local_image(QuadraticNumber(d, q + 3), x))


def test_f3_linear_algebra():
    assert f3_rank([(1, 2), (2, 1)]) == 1
    assert f3_rank([(1, 0), (0, 1)]) == 2
    assert f3_rank([()]) == 0
    kernel = f3_kernel([(1, 2), (2, 1)], 2)
    assert len(kernel) == 1


def test_ring_space_rank_zero():
    rep = ring_space(-7, factorization(-7, 5))
    assert rep.sigma == 0
    assert all(rep.freeFlags.values())


def test_ring_space_irregular():
    fact = factorization(-3, 9)
    rep = ring_space(-3, fact, divisor_lattice(fact))
    assert rep.defects == {1: 0, 3: 1, 9: 1}
    assert rep.ring_class_rank(9) == 1


def test_ring_class_rank_values():
    # d_L = -3 * 36 = -108 is the only field over d = -3 with conductor dividing 6
    assert ring_class_rank(-3, 6) == 1
    assert ring_class_rank(-23, 1) == 1
    assert ring_class_rank(-7, 10) == 1
