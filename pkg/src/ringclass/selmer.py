"""3-virtual units of a quadratic field and their local cube classes.

The Selmer space V of K is spanned (mod cubes) by generators alpha of
a^3 for a basis of Cl(K)[3], by the fundamental unit when d > 0 and by
zeta_3 when d = -3.  For a conductor c, each virtual unit maps to

    G_c / G_c^3,   G_c = (O_K / c)^x / (Z / c)^x,

a product of local F_3-spaces, one per prime power q^e || c.  The ring
space V(c) is the kernel of that map and the defect delta(c) its rank.
The 3-rank of the ring class group of conductor c is then
rho + dim(G_c / G_c^3) - delta(c).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .arith import hensel_sqrt, kronecker, valuation
from .conductor import TAME_INERT, TAME_SPLIT, WILD, divisor_lattice
from .errors import ResourceError
from .quadclass import (
    class_group, fundamental_unit, ideal_contains, ideal_generator, positive_leading,
    quadratic_field,
)
from .quadfield import QuadraticNumber

UNIT = "unit"
TORSION = "torsion"
CLASS = "class"


@dataclass(frozen=True)
class VirtualUnit:
    element: QuadraticNumber
    source: str
    index: int = 0
    ideal: object = None

    def __repr__(self):
        tag = f"{self.source}{self.index}" if self.source == CLASS else self.source
        return f"VirtualUnit({tag}: {self.element!r})"


@dataclass(frozen=True)
class SelmerSpace:
    d: int
    rho: int
    basis: tuple

    @property
    def dimension(self):
        return len(self.basis)


def cube_generator(form):
    """alpha with (alpha) = a^3 for the ideal a of ``form`` (a^3 principal).

    Forms with a < 0 are first replaced by an equivalent one with a > 0,
    whose ideal is the one used.  Raises ResourceError if a^3 is not
    found to be principal.
    """
    form = positive_leading(form)
    sq, c1 = form.compose(form)
    cube, c2 = sq.compose(form)
    gamma = ideal_generator(cube)
    content = c1 * c2
    alpha = gamma * content
    d = form.disc
    norm = abs(alpha.norm())
    if norm != abs(form.a) ** 3 or not ideal_contains(cube, gamma):
        raise ResourceError(f"bad cube generator for {form} in Q(sqrt {d})")
    return alpha


@lru_cache(maxsize=4096)
def selmer_basis(d):
    """SelmerSpace of Q(sqrt d) for p = 3."""
    K = quadratic_field(d)
    basis = []
    for i, form in enumerate(class_group(d).p_torsion_basis(3)):
        basis.append(VirtualUnit(cube_generator(form), CLASS, i, form))
    if d > 0:
        basis.append(VirtualUnit(fundamental_unit(d), UNIT))
    if d == -3:
        basis.append(VirtualUnit(QuadraticNumber.from_half(-3, -1, 1), TORSION))
    if len(basis) != K.sigma3:
        raise AssertionError(f"Selmer basis of {d} has {len(basis)} != sigma3 elements")
    return SelmerSpace(d, K.rho3, tuple(basis))


# --- coordinates in O_K = Z[w] -----------------------------------------------

def _omega(d):
    """(delta, c0) with w = (delta + sqrt d)/2, w^2 = delta*w - c0."""
    delta = d % 2
    return delta, (delta * delta - d) // 4


def _omega_coords(alpha):
    """(x, y) with alpha = x + y*w; Fractions when alpha is not integral."""
    d = alpha.d
    delta, _ = _omega(d)
    u, v = alpha.half_coords()
    return (u - v * delta) / 2, v


def _mod(fr, n):
    fr = Fraction(fr)
    return fr.numerator * pow(fr.denominator, -1, n) % n


def _ring_mul(x, y, c0, delta, n):
    (a, b), (c, e) = x, y
    # (a + b w)(c + e w) with w^2 = delta*w - c0
    return ((a * c - b * e * c0) % n, (a * e + b * c + b * e * delta) % n)


def _ring_pow(x, k, c0, delta, n):
    result = (1, 0)
    while k:
        if k & 1:
            result = _ring_mul(result, x, c0, delta, n)
        x = _ring_mul(x, x, c0, delta, n)
        k >>= 1
    return result


# --- tame local characters ----------------------------------------------------

def _mu3_log(z, zeta, mul, one):
    if z == one:
        return 0
    if z == zeta:
        return 1
    if z == mul(zeta, zeta):
        return 2
    raise AssertionError("value is not a cube root of unity")


def _split_units(alpha, q, root_prec=None):
    """Unit parts mod q of alpha in the two q-adic embeddings (q odd, split)."""
    d = alpha.d
    u, v = alpha.half_coords()
    norm = alpha.norm()
    vn = valuation(norm.numerator, q) if norm != 0 else 0
    k = vn + 2 if root_prec is None else root_prec
    mod = q ** k
    s = hensel_sqrt(d, q, k)
    out = []
    for sg in (1, -1):
        val = _mod((u + sg * v * s) / 2, mod)
        e = 0
        while val % q == 0:
            if val == 0 or e > vn:
                raise AssertionError("q-adic precision exhausted")
            val //= q
            e += 1
        out.append(val % q)
    return out


def tame_character(alpha, q, kind):
    """Image of alpha in G_q / G_q^3 as an element of {0, 1, 2}."""
    d = alpha.d
    if kind == TAME_SPLIT:
        if q % 3 != 1:
            return None
        u1, u2 = _split_units(alpha, q)
        ratio = u1 * pow(u2, -1, q) % q
        e = (q - 1) // 3
        g = 2
        while pow(g, e, q) == 1:
            g += 1
        zeta = pow(g, e, q)
        return _mu3_log(pow(ratio, e, q), zeta, lambda a, b: a * b % q, 1)
    if kind == TAME_INERT:
        if q % 3 != 2:
            return None
        delta, c0 = _omega(d)
        x, y = _omega_coords(alpha)
        # strip the power of q
        while True:
            xr, yr = Fraction(x) / q, Fraction(y) / q
            if xr.denominator % q == 0 or yr.denominator % q == 0:
                break
            x, y = xr, yr
        elt = (_mod(x, q), _mod(y, q))
        e = (q * q - 1) // 3
        mul = lambda a, b: _ring_mul(a, b, c0, delta, q)
        zeta = None
        for a in range(q):
            for b in range(1, q):
                z = _ring_pow((a, b), e, c0, delta, q)
                if z != (1, 0):
                    zeta = z
                    break
            if zeta:
                break
        return _mu3_log(_ring_pow(elt, e, c0, delta, q), zeta, mul, (1, 0))
    return None


# --- wild local groups ----------------------------------------------------------

@lru_cache(maxsize=None)
def _wild_table(delta, c0, e):
    """Discrete logs for (O/3^e)^x / ((Z/3^e)^x * cubes), O = Z[w]."""
    n = 3 ** e
    units = []
    for x in range(n):
        for y in range(n):
            if (x * x + delta * x * y + c0 * y * y) % 3:
                units.append((x, y))
    mul = lambda a, b: _ring_mul(a, b, c0, delta, n)
    sub = set()
    cubes = {mul(mul(u, u), u) for u in units}
    for z in range(1, n):
        if z % 3:
            for c in cubes:
                sub.add(mul((z, 0), c))
    gens = []
    # every element of the span gets its coordinates in the chosen generators
    table = {s: () for s in sub}
    for u in units:
        if u in table:
            continue
        gens.append(u)
        new = {}
        for elt, coords in table.items():
            g = elt
            for k in range(3):
                new[g] = coords + (k,)
                g = mul(g, u)
        table = new
    dim = len(gens)
    return dim, {k: v + (0,) * (dim - len(v)) for k, v in table.items()}


def _wild_local_element(alpha, e):
    """alpha as a unit of O/3^e after removing its part at primes above 3."""
    d = alpha.d
    delta, c0 = _omega(d)
    n = 3 ** e
    if d % 3 == 0:
        norm = alpha.norm()
        v = valuation(norm.numerator, 3) if norm else 0
        if v:
            alpha = alpha / QuadraticNumber(d, 0, 1) ** v
        x, y = _omega_coords(alpha)
        return (_mod(x, n), _mod(y, n))
    if kronecker(d, 3) == -1:
        x, y = _omega_coords(alpha)
        while True:
            xr, yr = Fraction(x) / 3, Fraction(y) / 3
            if xr.denominator % 3 == 0 or yr.denominator % 3 == 0:
                break
            x, y = xr, yr
        return (_mod(x, n), _mod(y, n))
    # 3 splits: work in the two 3-adic embeddings and glue with CRT
    u, v = alpha.half_coords()
    norm = alpha.norm()
    vn = valuation(norm.numerator, 3) if norm else 0
    k = vn + e + 1
    mod = 3 ** k
    s = hensel_sqrt(d, 3, k)
    comps = []
    for sg in (1, -1):
        val = _mod((u + sg * v * s) / 2, mod)
        while val % 3 == 0:
            val //= 3
        comps.append(val % n)
    # w maps to (delta + s)/2 and (delta - s)/2
    r1 = _mod(Fraction(delta + s, 2), n)
    r2 = _mod(Fraction(delta - s, 2), n)
    y = (comps[0] - comps[1]) * pow(r1 - r2, -1, n) % n
    x = (comps[0] - y * r1) % n
    return (x, y)


def wild_dimension(d, e):
    delta, c0 = _omega(d)
    return _wild_table(delta, c0 % 3 ** e, e)[0]


def wild_character(alpha, e):
    """Image of alpha in G_{3^e} / cubes as a tuple over F_3."""
    d = alpha.d
    delta, c0 = _omega(d)
    dim, table = _wild_table(delta, c0 % 3 ** e, e)
    return table[_wild_local_element(alpha, e)]


def local_dimension(d, divisor):
    """dim over F_3 of G_{q^e} / G_{q^e}^3."""
    if divisor.kind == WILD:
        return wild_dimension(d, divisor.e)
    if divisor.kind == TAME_SPLIT:
        return 1 if divisor.q % 3 == 1 else 0
    if divisor.kind == TAME_INERT:
        return 1 if divisor.q % 3 == 2 else 0
    return 0


def local_image(alpha, divisor):
    """Vector of the local cube class of alpha at one prime power divisor."""
    if divisor.kind == WILD:
        return wild_character(alpha, divisor.e)
    if local_dimension(alpha.d, divisor) == 0:
        return ()
    return (tame_character(alpha, divisor.q, divisor.kind),)


def is_local_cube(u, divisor, d=None):
    """Is the virtual unit u a cube in G_{q^e} (trivial local class)?"""
    alpha = u.element if isinstance(u, VirtualUnit) else u
    return all(x == 0 for x in local_image(alpha, divisor))


# --- F_3 linear algebra ----------------------------------------------------------

def f3_rank(rows):
    rows = [list(r) for r in rows if r]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i][col] % 3:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 if rows[rank][col] % 3 == 1 else 2
        rows[rank] = [(v * inv) % 3 for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % 3:
                m = rows[i][col]
                rows[i] = [(a - m * b) % 3 for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def f3_kernel(rows, n):
    """Basis of {x in F_3^n : sum_i x_i * rows[i] = 0}."""
    if not rows or not rows[0]:
        return [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    ncols = len(rows[0])
    # solve x^T M = 0, i.e. M^T x = 0
    mt = [[rows[i][j] % 3 for i in range(n)] for j in range(ncols)]
    pivots = []
    r = 0
    for col in range(n):
        p = next((i for i in range(r, len(mt)) if mt[i][col]), None)
        if p is None:
            continue
        mt[r], mt[p] = mt[p], mt[r]
        inv = 1 if mt[r][col] == 1 else 2
        mt[r] = [(v * inv) % 3 for v in mt[r]]
        for i in range(len(mt)):
            if i != r and mt[i][col]:
                m = mt[i][col]
                mt[i] = [(a - m * b) % 3 for a, b in zip(mt[i], mt[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        x = [0] * n
        x[fcol] = 1
        for i, pc in enumerate(pivots):
            x[pc] = (-mt[i][fcol]) % 3
        basis.append(tuple(x))
    return basis


# --- ring spaces -------------------------------------------------------------------

@dataclass
class RingSpaceReport:
    conductor: int
    d: int
    sigma: int
    rho: int
    subspaceDims: dict = field(default_factory=dict)
    freeFlags: dict = field(default_factory=dict)
    localDims: dict = field(default_factory=dict)
    defects: dict = field(default_factory=dict)
    kernels: dict = field(default_factory=dict)

    @property
    def defect(self):
        return self.defects[self.conductor]

    def ring_class_rank(self, c):
        """3-rank of the ring class group of conductor c."""
        return self.rho + self.localDims[c] - self.defects[c]


def _divisor_images(space, fact):
    """Matrix rows (one per basis element) over all prime powers of fact."""
    rows = []
    for u in space.basis:
        row = []
        for x in fact.divisors:
            row.extend(local_image(u.element, x))
        rows.append(row)
    return rows


def conductor_images(d, fact):
    """(local dimension, rows of the Selmer map) for a conductor."""
    space = selmer_basis(d)
    dims = sum(local_dimension(d, x) for x in fact.divisors)
    return dims, _divisor_images(space, fact)


def ring_space(d, fact, divisors=None):
    """RingSpaceReport for every c in the divisor lattice of fact.f."""
    space = selmer_basis(d)
    rep = RingSpaceReport(fact.f, d, space.dimension, space.rho)
    for c_fact in divisors or divisor_lattice(fact):
        c = c_fact.f
        dims, rows = conductor_images(d, c_fact)
        delta = f3_rank(rows) if rows and rows[0] else 0
        rep.localDims[c] = dims
        rep.defects[c] = delta
        rep.subspaceDims[c] = space.dimension - delta
        rep.freeFlags[c] = delta == 0
        rep.kernels[c] = tuple(f3_kernel(rows, space.dimension)) if space.dimension else ()
    return rep


def ring_class_rank(d, f):
    """3-rank of the ring class group mod f of Q(sqrt d), any f >= 1."""
    from .conductor import ConductorFactorization, PrimePowerDivisor, _splitting
    from .arith import factorize
    divs = []
    for q, e in sorted(factorize(f).items()) if f > 1 else ():
        if q == 3:
            divs.append(PrimePowerDivisor(3, e, WILD, regular=True))
        else:
            if e > 1:
                raise ValueError("tame part of f must be squarefree")
            divs.append(PrimePowerDivisor(q, 1, _splitting(d, q)))
    fact = ConductorFactorization(f, d, tuple(divs))
    dims, rows = conductor_images(d, fact)
    delta = f3_rank(rows) if rows and rows[0] else 0
    return quadratic_field(d).rho3 + dims - delta
