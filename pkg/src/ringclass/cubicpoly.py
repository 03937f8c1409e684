"""Exact arithmetic in Q[x]/(g) for monic integer cubics g.

Used for the pure-cubic radicand and for isomorphism certificates in the
polynomial oracle.  Elements are triples of Fractions (c0, c1, c2) for
c0 + c1*x + c2*x^2.
"""

import itertools
from fractions import Fraction
from math import isqrt

import mpmath

from .arith import factorize, is_square


def poly_disc(a2, a1, a0):
    """Discriminant of x^3 + a2 x^2 + a1 x + a0."""
    return (18 * a2 * a1 * a0 + a2 * a2 * a1 * a1 - 4 * a1 ** 3
            - 4 * a2 ** 3 * a0 - 27 * a0 * a0)


def has_rational_root(a2, a1, a0):
    """Rational root test for a monic integer cubic (roots are integers)."""
    if a0 == 0:
        return True
    for p in _divisors_abs(a0):
        for r in (p, -p):
            if ((r + a2) * r + a1) * r + a0 == 0:
                return True
    return False


def _divisors_abs(n):
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return divs


class CubicAlgebra:
    def __init__(self, a2, a1, a0):
        self.coeffs = (a2, a1, a0)

    def mul(self, u, v):
        a2, a1, a0 = self.coeffs
        prod = [Fraction(0)] * 5
        for i in range(3):
            for j in range(3):
                prod[i + j] += u[i] * v[j]
        # x^3 = -a2 x^2 - a1 x - a0
        for k in (4, 3):
            t = prod[k]
            prod[k] = 0
            prod[k - 1] -= a2 * t
            prod[k - 2] -= a1 * t
            prod[k - 3] -= a0 * t
        return tuple(prod[:3])

    def power_traces(self, kmax=4):
        """Tr(x^k) for k = 0..kmax via Newton's identities."""
        a2, a1, a0 = self.coeffs
        e1, e2, e3 = -a2, a1, -a0
        p = [3, e1, e1 * e1 - 2 * e2]
        for k in range(3, kmax + 1):
            p.append(e1 * p[k - 1] - e2 * p[k - 2] + e3 * p[k - 3])
        return p

    def evaluate(self, coeffs, elt):
        """Value of the polynomial with integer coefficients (high first)."""
        acc = (Fraction(0), Fraction(0), Fraction(0))
        for c in coeffs:
            acc = self.mul(acc, elt)
            acc = (acc[0] + c, acc[1], acc[2])
        return acc


def pure_radicand(a2, a1, a0):
    """Cube-free n > 1 with Q[x]/(g) = Q(n^(1/3)), or None.

    Looks for a nonzero element gamma with Tr(gamma) = Tr(gamma^2) = 0;
    such an element has a rational cube.
    """
    alg = CubicAlgebra(a2, a1, a0)
    p = alg.power_traces(4)
    # gamma = x0 + x1*x + x2*x^2 with x0 fixed by Tr(gamma) = 0
    def gamma(x1, x2):
        x0 = Fraction(-(x1 * p[1] + x2 * p[2]), 3)
        return (x0, Fraction(x1), Fraction(x2))

    def tr_sq(x1, x2):
        g = gamma(x1, x2)
        return sum(g[i] * g[j] * p[i + j] for i in range(3) for j in range(3))

    A = tr_sq(1, 0)
    C = tr_sq(0, 1)
    B = tr_sq(1, 1) - A - C
    if A == 0:
        candidates = [(1, 0)]
    else:
        disc = B * B - 4 * A * C
        if disc < 0:
            return None
        num, den = disc.numerator, disc.denominator
        if not (is_square(num) and is_square(den)):
            return None
        root = Fraction(isqrt(num), isqrt(den))
        candidates = []
        for sgn in (1, -1):
            t = (-B + sgn * root) / (2 * A)
            candidates.append((t.numerator, t.denominator))
    for x1, x2 in candidates:
        g = gamma(x1, x2)
        if g == (0, 0, 0):
            continue
        cube = alg.mul(alg.mul(g, g), g)
        if cube[1] != 0 or cube[2] != 0:
            continue
        return _cube_free(cube[0])
    return None


def _cube_free(q):
    q = Fraction(q)
    n = abs(q.numerator) * q.denominator ** 2
    out = 1
    for prime, e in factorize(n).items():
        out *= prime ** (e % 3)
    if out == 1:
        return None
    # n and n^2 (cube-free part) generate the same field; prefer the smaller
    alt = 1
    for prime, e in factorize(out).items():
        alt *= prime ** ((2 * e) % 3)
    return min(out, alt)


def roots(a2, a1, a0, dps=40):
    """All complex roots with mpmath at the given precision."""
    with mpmath.workdps(dps):
        return mpmath.polyroots([1, a2, a1, a0], maxsteps=200, extraprec=dps)


def isomorphic(g1, g2, dps=40):
    """Exact test whether Q[x]/(g1) and Q[x]/(g2) are isomorphic.

    A numerical candidate x -> u + v*x + w*x^2 is recovered from the
    roots and then checked exactly (g2 vanishes on it in Q[x]/(g1)).
    """
    r1 = roots(*g1, dps=dps)
    r2 = roots(*g2, dps=dps)
    disc = abs(poly_disc(*g1))
    alg = CubicAlgebra(*g1)
    with mpmath.workdps(dps):
        m = mpmath.matrix([[1, r, r * r] for r in r1])
        tol = mpmath.mpf(10) ** (-(dps // 2))
        for perm in itertools.permutations(r2):
            sol = mpmath.lu_solve(m, mpmath.matrix(list(perm)))
            if any(abs(mpmath.im(z)) > tol for z in sol):
                continue
            cand = tuple(
                Fraction(mpmath.nstr(mpmath.re(z), dps - 5)).limit_denominator(max(disc, 1))
                for z in sol
            )
            if alg.evaluate((1,) + tuple(g2), cand) == (0, 0, 0):
                return True
    return False
