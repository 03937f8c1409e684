"""Binary quadratic forms, class groups and units of quadratic fields.

Class groups are computed from reduced forms: for d < 0 the reduced
representative is unique, for d > 0 classes are cycles of reduced forms
under the rho operator.  Real class groups default to the wide (ideal)
class group; the narrow group is available with ``narrow=True``.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

from .arith import factorize, is_fundamental, square_factor, xgcd
from .errors import NonFundamentalError, ResourceError
from .quadfield import QuadraticNumber


def check_fundamental(d, allow_one=False):
    if allow_one and d == 1:
        return d
    if not is_fundamental(d):
        raise NonFundamentalError(d, square_factor(d) if d else None)
    return d


@dataclass(frozen=True, order=True)
class BinaryQuadraticForm:
    a: int
    b: int
    c: int

    @property
    def disc(self):
        return self.b * self.b - 4 * self.a * self.c

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def __repr__(self):
        return f"({self.a}, {self.b}, {self.c})"

    def negate(self):
        return BinaryQuadraticForm(-self.a, self.b, -self.c)

    def inverse(self):
        return BinaryQuadraticForm(self.a, -self.b, self.c)

    def evaluate(self, x, y):
        return self.a * x * x + self.b * x * y + self.c * y * y

    def compose(self, other):
        """Dirichlet composition; returns (form, content).

        For the ideals I = [|a|, (b + sqrt d)/2] attached to the inputs,
        the product ideal equals ``content`` times the ideal of the result.
        Neither input is reduced first.
        """
        f1 = positive_leading(self)
        f2 = positive_leading(other)
        a1, b1, c1 = f1
        a2, b2, c2 = f2
        if a1 > a2:
            a1, b1, c1, a2, b2, c2 = a2, b2, c2, a1, b1, c1
        s = (b1 + b2) // 2
        n = b2 - s
        if a2 % a1 == 0:
            y1, d = 0, a1
        else:
            d, y1, _ = xgcd(a2, a1)
        if s % d == 0:
            x2, y2, d1 = 0, -1, d
        else:
            d1, x2, y2 = xgcd(s, d)
            y2 = -y2
        v1 = a1 // d1
        v2 = a2 // d1
        r = (y1 * y2 * n - x2 * c2) % v1
        b3 = b2 + 2 * v2 * r
        a3 = v1 * v2
        c3 = (c2 * d1 + r * (b2 + v2 * r)) // v1
        return BinaryQuadraticForm(a3, b3, c3), d1

    def __mul__(self, other):
        return self.compose(other)[0].reduced()

    def is_reduced(self):
        a, b, c = self
        disc = self.disc
        if disc < 0:
            if a < 0:
                return False
            if not (-a < b <= a and a <= c):
                return False
            return not (a == c and b < 0)
        s = isqrt(disc)
        return 0 < b <= s and s - b < 2 * abs(a) <= s + b

    def reduced(self):
        if self.disc < 0:
            return _reduce_definite(self)
        f = self
        s = isqrt(self.disc)
        for _ in range(10 * (self.disc.bit_length() + abs(self.a).bit_length() + 10)):
            if f.is_reduced():
                return f
            f = rho(f, s)
        raise ResourceError(f"indefinite reduction of {self} did not terminate")


def positive_leading(f):
    """An equivalent form with a > 0 (identity when a > 0 already)."""
    if f.a > 0:
        return f
    if f.disc < 0:
        raise ValueError(f"negative definite form {f}")
    if f.c > 0:
        return BinaryQuadraticForm(f.c, -f.b, f.a)
    # substitute (X, Y) -> (xX - Y, X), a proper change of variables
    a, b, c = f
    x = 1
    while f.evaluate(x, 1) <= 0:
        x += 1
    na = f.evaluate(x, 1)
    nb = -(2 * a * x + b)
    nc = a
    return BinaryQuadraticForm(na, nb, nc)


def _normalize_definite(a, b, c, disc):
    r = (a - b) // (2 * a)
    b2 = b + 2 * a * r
    return a, b2, (b2 * b2 - disc) // (4 * a)


def _reduce_definite(f):
    a, b, c = f
    disc = f.disc
    if a < 0:
        raise ValueError(f"negative definite form {f}")
    a, b, c = _normalize_definite(a, b, c, disc)
    while a > c:
        a, b, c = _normalize_definite(c, -b, a, disc)
    if a == c and b < 0:
        b = -b
    return BinaryQuadraticForm(a, b, c)


def rho(f, s=None):
    """One reduction step (a, b, c) -> (c, b', c') with b' = -b mod 2c."""
    a, b, c = f
    disc = f.disc
    if disc < 0:
        c_abs = c
        r = (-b) % (2 * c_abs)
        bp = r if r <= c_abs else r - 2 * c_abs
        return BinaryQuadraticForm(c, bp, (bp * bp - disc) // (4 * c))
    if s is None:
        s = isqrt(disc)
    ca = abs(c)
    r = (-b) % (2 * ca)
    if ca > s:
        bp = r if r <= ca else r - 2 * ca
    else:
        bp = s - ((s - r) % (2 * ca))
    return BinaryQuadraticForm(c, bp, (bp * bp - disc) // (4 * c))


def principal_form(d):
    if d < 0:
        b = d % 2
        return BinaryQuadraticForm(1, b, (b * b - d) // 4)
    s = isqrt(d)
    b = s if (s - d) % 2 == 0 else s - 1
    return BinaryQuadraticForm(1, b, (b * b - d) // 4)


def reduced_forms(d):
    """All reduced forms of discriminant d (both signs of a when d > 0)."""
    out = []
    if d < 0:
        amax = isqrt(-d // 3)
        for a in range(1, amax + 1):
            for b in range(-a + 1, a + 1):
                if (b - d) % 2:
                    continue
                num = b * b - d
                if num % (4 * a):
                    continue
                c = num // (4 * a)
                if c < a or (c == a and b < 0):
                    continue
                out.append(BinaryQuadraticForm(a, b, c))
        return out
    s = isqrt(d)
    for b in range(s, 0, -1):
        if (b - d) % 2:
            continue
        n = (d - b * b) // 4
        lo, hi = s - b, s + b
        for a in _divisors_in(n, (lo // 2) + 1, hi // 2):
            if lo < 2 * a <= hi:
                out.append(BinaryQuadraticForm(a, b, -n // a))
                out.append(BinaryQuadraticForm(-a, b, n // a))
    return out


def _divisors_in(n, lo, hi):
    if n <= 0:
        return []
    divs = [1]
    for p, e in factorize(n).items():
        divs = [x * p ** k for x in divs for k in range(e + 1)]
    return [x for x in divs if lo <= x <= hi]


class ClassGroup:
    """Finite abelian group of form classes of a fundamental discriminant.

    Elements are canonical reduced forms; ``mul`` composes and reduces.
    """

    def __init__(self, d, narrow=False):
        self.d = d
        self.narrow = narrow if d > 0 else False
        self.identity = principal_form(d)
        if d < 0:
            self.elements = sorted(reduced_forms(d))
            self._canon = {f: f for f in self.elements}
        else:
            self._build_real()
        self.h = len(self.elements)

    def _build_real(self):
        # plain tuples here: this loop dominates real class group sweeps
        d = self.d
        s = isqrt(d)
        cycle_of = {}
        cycles = []
        for f in reduced_forms(d):
            f = (f.a, f.b, f.c)
            if f in cycle_of:
                continue
            idx = len(cycles)
            members = []
            a, b, c = f
            while (a, b, c) not in cycle_of:
                cycle_of[(a, b, c)] = idx
                members.append((a, b, c))
                ca = abs(c)
                r = (-b) % (2 * ca)
                if ca > s:
                    bp = r if r <= ca else r - 2 * ca
                else:
                    bp = s - ((s - r) % (2 * ca))
                a, b, c = c, bp, (bp * bp - d) // (4 * c)
            cycles.append(members)
        keys = [min(m) for m in cycles]
        if not self.narrow:
            # identify each cycle with the cycle of its negatives
            merged = list(keys)
            for i, m in enumerate(cycles):
                a, b, c = m[0]
                j = cycle_of[(-a, b, -c)]
                merged[i] = min(keys[i], keys[j])
            keys = merged
        forms = {k: BinaryQuadraticForm(*k) for k in set(keys)}
        self._canon = {f: forms[keys[i]] for f, i in cycle_of.items()}
        one = principal_form(d)
        self.identity = self._canon[(one.a, one.b, one.c)]
        self.elements = sorted(forms.values())
        self.principal_cycle_has_minus_one = any(
            abs(a) == 1 and a < 0 for a, _, _ in cycles[cycle_of[(one.a, one.b, one.c)]]
        )

    def canonical(self, f):
        r = f.reduced()
        if self.d < 0:
            return r
        return self._canon[(r.a, r.b, r.c)]

    def mul(self, x, y):
        return self.canonical(x.compose(y)[0])

    def inverse(self, x):
        return self.canonical(x.inverse())

    def power(self, x, n):
        result = self.identity
        base = x
        if n < 0:
            base, n = self.inverse(x), -n
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def order(self, x):
        k, y = 1, x
        while y != self.identity:
            y = self.mul(y, x)
            k += 1
        return k

    def torsion(self, n):
        """Elements with x**n == identity."""
        return [x for x in self.elements if self.power(x, n) == self.identity]

    def invariants(self):
        """Invariant factors (n_1 | n_2 | ...), all > 1."""
        parts = {}
        for p, e in factorize(self.h).items() if self.h > 1 else ():
            counts = [1]
            k = 1
            while counts[-1] < p ** e:
                counts.append(len(self.torsion(p ** k)))
                k += 1
            exps = []
            for j in range(1, len(counts)):
                ge = _log(counts[j] // counts[j - 1], p)
                exps.append(ge)
            # exps[j-1] = number of cyclic factors of order >= p^j
            cyc = []
            for j, num in enumerate(exps, start=1):
                nxt = exps[j] if j < len(exps) else 0
                cyc.extend([p ** j] * (num - nxt))
            parts[p] = sorted(cyc, reverse=True)
        width = max((len(v) for v in parts.values()), default=0)
        inv = []
        for i in range(width):
            n = 1
            for p, v in parts.items():
                if i < len(v):
                    n *= v[i]
            inv.append(n)
        return sorted(inv)

    def p_rank(self, p):
        if self.h % p:
            return 0
        return _log(len(self.torsion(p)), p)

    def p_torsion_basis(self, p):
        """Independent elements spanning the p-torsion (an F_p-basis)."""
        span = {self.identity}
        basis = []
        for x in self.torsion(p):
            if x in span:
                continue
            basis.append(x)
            new = set()
            for y in span:
                z = y
                for _ in range(p):
                    new.add(z)
                    z = self.mul(z, x)
            span = new
        return basis

    def generators(self):
        """Generators (form, order) of a decomposition matching ``invariants``."""
        gens = []
        for p, e in (factorize(self.h).items() if self.h > 1 else ()):
            sylow = [x for x in self.torsion(p ** e)]
            gens.extend(_sylow_basis(self, sylow, p))
        return gens


def _log(n, p):
    k = 0
    while n > 1:
        if n % p:
            raise ValueError("not a power")
        n //= p
        k += 1
    return k


def _sylow_basis(group, sylow, p):
    remaining = sorted(sylow, key=lambda x: -group.order(x))
    target = len(sylow)
    chosen = []
    span = {group.identity}

    def extend(span, x, ordx):
        new = set()
        for y in span:
            z = y
            for _ in range(ordx):
                new.add(z)
                z = group.mul(z, x)
        return new

    while len(span) < target:
        for x in remaining:
            ordx = group.order(x)
            new = extend(span, x, ordx)
            if len(new) == len(span) * ordx:
                chosen.append((x, ordx))
                span = new
                break
        else:  # pragma: no cover - abelian p-groups always admit this greedy basis
            raise RuntimeError("could not split Sylow subgroup")
    return chosen


@lru_cache(maxsize=4096)
def class_group(d, narrow=False):
    check_fundamental(d)
    return ClassGroup(d, narrow)


def class_number(d, narrow=False):
    return class_group(d, narrow).h


def rho3(d):
    """3-rank of the class group of Q(sqrt d)."""
    return class_group(d).p_rank(3)


def selmer_rank(p, d, rho):
    """p-Selmer rank: rho, plus one for d > 0 or (p, d) = (3, -3)."""
    if p % 2 == 0 or p < 3:
        raise ValueError(f"p must be an odd prime, got {p}")
    if d > 0 or (p == 3 and d == -3):
        return rho + 1
    return rho


# --- principal ideals and units -------------------------------------------

def ideal_generator(f, max_steps=None):
    """Generator gamma of the ideal [|a|, (b + sqrt d)/2] attached to f.

    Raises ResourceError when the ideal is not found principal within
    the step budget (for d < 0 reduction is exact, so this means the
    ideal is not principal).
    """
    d = f.disc
    gamma = QuadraticNumber(d, 1)
    s = isqrt(d) if d > 0 else None
    if max_steps is None:
        max_steps = 64 + 8 * (isqrt(abs(d)) + 1) * max(1, abs(d).bit_length())
    g = f
    for _ in range(max_steps):
        if abs(g.a) == 1:
            return gamma
        a, b, c = g
        if d < 0:
            a, b, c = _normalize_definite(a, b, c, d)
            if a == 1:
                return gamma
            if c >= a:
                raise ResourceError(f"ideal of {f} is not principal")
        beta = QuadraticNumber.from_half(d, b, 1)
        sign = 1 if a > 0 else -1
        gamma = gamma * beta * QuadraticNumber(d, sign) / c
        g = rho(BinaryQuadraticForm(a, b, c), s)
    raise ResourceError(f"no principal generator for {f} within {max_steps} steps")


def ideal_contains(f, alpha):
    """alpha in [|a|, (b + sqrt d)/2]?"""
    v = 2 * alpha.y
    if v.denominator != 1:
        return False
    u = (alpha.x - v * f.b / 2) / abs(f.a)
    return u.denominator == 1


@lru_cache(maxsize=65536)
def fundamental_unit(d):
    """Smallest unit eps > 1 of the maximal order of Q(sqrt d), d > 1."""
    if d <= 1:
        raise ValueError("fundamental units exist only for real fields (d > 1)")
    check_fundamental(d)
    s = isqrt(d)
    g = principal_form(d)
    gamma = QuadraticNumber(d, 1)
    steps = 0
    while True:
        a, b, c = g
        beta = QuadraticNumber.from_half(d, b, 1)
        sign = 1 if a > 0 else -1
        gamma = gamma * beta * QuadraticNumber(d, sign) / c
        g = rho(g, s)
        steps += 1
        if abs(g.a) == 1:
            break
    eps = gamma
    if not eps.is_positive_real():
        eps = -eps
    if not (eps - 1).is_positive_real():
        eps = eps.inverse()
        if not eps.is_positive_real():
            eps = -eps
    return eps


@dataclass(frozen=True)
class QuadraticFieldData:
    d: int
    h: int
    rho3: int
    sigma3: int
    fundamental_unit: object = None
    torsion: bool = False


@lru_cache(maxsize=65536)
def quadratic_field(d):
    cg = class_group(d)
    r = cg.p_rank(3)
    unit = fundamental_unit(d) if d > 0 else None
    return QuadraticFieldData(
        d=d, h=cg.h, rho3=r, sigma3=selmer_rank(3, d, r),
        fundamental_unit=unit, torsion=(d == -3),
    )
