"""Enumeration of cubic fields through reduced integral binary cubic forms.

Forms F = (a, b, c, d) stand for a x^3 + b x^2 y + c x y^2 + d y^3 under the
twisted GL2(Z) action.  Maximal irreducible forms correspond to cubic
fields with disc(F) = d_L (Delone-Faddeev / Davenport-Heilbronn).

* d_L > 0: the Hessian (P, Q, R) is positive definite and is reduced.
* d_L < 0: F = a (x - t y)(x^2 - s x y + n y^2) with t real; the
  quadratic factor is reduced (|s| < 1 < n).

A small polynomial search (``brute_force_oracle``) cross-checks the
enumeration on tiny ranges.
"""

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import isqrt, sqrt

import mpmath

from .arith import factorize
from .conductor import decompose
from .cubicpoly import (
    has_rational_root, isomorphic, poly_disc, pure_radicand,
)
from .errors import ResourceError

DEFAULT_LIMIT = 10 ** 6
ORACLE_LIMIT = 2000


@dataclass(frozen=True, order=True)
class BinaryCubicForm:
    a: int
    b: int
    c: int
    d: int

    def __iter__(self):
        return iter((self.a, self.b, self.c, self.d))

    @property
    def disc(self):
        a, b, c, d = self
        return (18 * a * b * c * d + b * b * c * c - 4 * a * c ** 3
                - 4 * b ** 3 * d - 27 * a * a * d * d)

    def hessian(self):
        a, b, c, d = self
        return (b * b - 3 * a * c, b * c - 9 * a * d, c * c - 3 * b * d)

    def __call__(self, x, y):
        a, b, c, d = self
        return ((a * x + b * y) * x + c * y * y) * x + d * y ** 3

    def act(self, m):
        """Twisted action by m = (p, q, r, s): F(p x + q y, r x + s y) / det."""
        p, q, r, s = m
        a, b, c, d = self
        det = p * s - q * r
        if det not in (1, -1):
            raise ValueError("matrix must be in GL2(Z)")
        # expand F(p x + q y, r x + s y)
        A = self(p, r)
        D = self(q, s)
        B = (3 * a * p * p * q + b * (p * p * s + 2 * p * q * r)
             + c * (2 * p * r * s + q * r * r) + 3 * d * r * r * s)
        C = (3 * a * p * q * q + b * (2 * p * q * s + q * q * r)
             + c * (p * s * s + 2 * q * r * s) + 3 * d * r * s * s)
        return BinaryCubicForm(A * det, B * det, C * det, D * det)

    def is_irreducible(self):
        a, b, c, d = self
        if a == 0 or d == 0:
            return False
        # roots x/y = u/v with u | d, v | a
        for v in _pos_divisors(a):
            for u in _pos_divisors(d):
                for sgn in (1, -1):
                    if self(sgn * u, v) == 0:
                        return False
        return True

    def monic(self):
        """Monic integer cubic (a2, a1, a0) whose root is a*t, t a root of F(x, 1)."""
        a, b, c, d = self
        return (b, a * c, a * a * d)


def _pos_divisors(n):
    n = abs(n)
    divs = [1]
    for p, e in factorize(n).items():
        divs = [x * p ** k for x in divs for k in range(e + 1)]
    return divs


# matrices with entries in {-1, 0, 1} and det +-1; they connect all
# reduced forms in one class
_SMALL_GL2 = tuple(
    (p, q, r, s)
    for p in (-1, 0, 1) for q in (-1, 0, 1)
    for r in (-1, 0, 1) for s in (-1, 0, 1)
    if p * s - q * r in (1, -1)
)


def _hessian_reduced(h):
    P, Q, R = h
    return abs(Q) <= P <= R


def _canonical_positive(form):
    """Smallest form with a > 0, b >= 0 and reduced Hessian in the class."""
    best = None
    for m in _SMALL_GL2:
        g = form.act(m)
        for cand in (g, BinaryCubicForm(-g.a, -g.b, -g.c, -g.d)):
            if cand.a <= 0 or cand.b < 0:
                continue
            if not _hessian_reduced(cand.hessian()):
                continue
            if best is None or cand < best:
                best = cand
    return best


def _positive_forms_for_a(a, bound):
    out = []
    pmax = isqrt(bound)
    bmax = int(1.5 * a + sqrt(pmax)) + 1
    for b in range(0, bmax + 1):
        # P = b^2 - 3ac in [1, pmax]
        cmin = -((pmax - b * b) // (3 * a))
        cmax = (b * b - 1) // (3 * a)
        for c in range(cmin, cmax + 1):
            P = b * b - 3 * a * c
            if P < 1 or P > pmax or 27 * a * a > 4 * P ** 3:
                continue
            if b > 1.5 * a + sqrt(P) + 1e-9:
                continue
            dlo = -((P - b * c) // (9 * a))
            dhi = (b * c + P) // (9 * a)
            for d in range(dlo, dhi + 1):
                if d == 0:
                    continue
                F = BinaryCubicForm(a, b, c, d)
                D = F.disc
                if D <= 0 or D > bound:
                    continue
                if not _hessian_reduced(F.hessian()):
                    continue
                if _canonical_positive(F) != F or not F.is_irreducible():
                    continue
                out.append(F)
    return out


def _real_root_float(a, b, c, d):
    """Real root of a x^3 + b x^2 + c x + d with negative discriminant."""
    # depressed cubic t^3 + p t + q with x = t - b/(3a)
    p = (3 * a * c - b * b) / (3.0 * a * a)
    q = (2 * b ** 3 - 9 * a * b * c + 27 * a * a * d) / (27.0 * a ** 3)
    root = sqrt(q * q / 4 + p ** 3 / 27)
    u = -q / 2 + root
    v = -q / 2 - root
    t = (abs(u) ** (1 / 3)) * (1 if u >= 0 else -1) + (abs(v) ** (1 / 3)) * (1 if v >= 0 else -1)
    x = t - b / (3.0 * a)
    for _ in range(2):
        fx = ((a * x + b) * x + c) * x + d
        dfx = (3 * a * x + 2 * b) * x + c
        if dfx == 0:
            break
        x -= fx / dfx
    return x


_MARGIN = 1e-7


def _negative_reduced(form):
    """|s| < 1 < n for F = a (x - t y)(x^2 - s x y + n y^2)."""
    a, b, c, d = form
    t = _real_root_float(a, b, c, d)
    s = -b / a - t
    n = -d / (a * t)
    if abs(abs(s) - 1) > _MARGIN and abs(n - 1) > _MARGIN:
        return abs(s) < 1 and n > 1
    with mpmath.workdps(50):
        rs = mpmath.polyroots([a, b, c, d], maxsteps=200, extraprec=50)
        t = mpmath.re(min(rs, key=lambda z: abs(mpmath.im(z))))
        s = -mpmath.mpf(b) / a - t
        n = -mpmath.mpf(d) / (a * t)
        return abs(s) < 1 and n > 1


def _negative_forms_for_a(a, bound):
    out = []
    mmax = sqrt(bound / 3.0) / (a * a)
    if mmax < 0.75:
        return out
    tmax = 0.5 + sqrt(mmax - 0.75)
    nmax = (16.0 * bound / (27.0 * a ** 4)) ** (1.0 / 3.0)
    a27 = 27 * a * a
    for b in range(0, int(a * (tmax + 1)) + 1):
        tspan = min(tmax, b / a + 1)
        cmin = int(a * (1 - tspan)) - 1
        cmax = int(a * (nmax + tspan)) + 1
        for c in range(cmin, cmax + 1):
            P = b * b - 3 * a * c
            base = 2 * b ** 3 - 9 * a * b * c
            lo = 4 * P ** 3 + a27
            hi = 4 * P ** 3 + a27 * bound
            if hi < 0:
                continue
            glo = isqrt(lo - 1) + 1 if lo > 0 else 0
            ghi = isqrt(hi)
            for sign in (1, -1):
                # g = sign * |g| = base + 27 a^2 d
                if sign == 1:
                    dmin = -((base - glo) // a27)
                    dmax = (ghi - base) // a27
                else:
                    dmin = -((base + ghi) // a27)
                    dmax = (-glo - base) // a27
                for d in range(dmin, dmax + 1):
                    if d == 0 or (b == 0 and d < 0):
                        continue
                    if sign == -1 and glo == 0 and base + a27 * d == 0:
                        continue  # g = 0 already seen with sign = +1
                    F = BinaryCubicForm(a, b, c, d)
                    D = F.disc
                    if D >= 0 or -D > bound:
                        continue
                    if not F.is_irreducible() or not _negative_reduced(F):
                        continue
                    out.append(F)
    return out


def _forms_for_a(args):
    a, bound, sign = args
    if sign > 0:
        return _positive_forms_for_a(a, bound)
    return _negative_forms_for_a(a, bound)


def _sign_value(sign):
    if sign in (1, "positive", "+"):
        return 1
    if sign in (-1, "negative", "-"):
        return -1
    raise ValueError(f"sign must be positive or negative, got {sign!r}")


def _a_max(bound, sign):
    if sign > 0:
        return int(sqrt(4.0 / 27.0) * bound ** 0.25) + 1
    return int((16.0 * bound / 27.0) ** 0.25) + 1


def default_workers():
    try:
        return max(1, int(os.environ.get("RINGCLASS_WORKERS", "1")))
    except ValueError:
        return 1


def enumerate_forms(bound, sign, workers=None):
    """Reduced irreducible forms with 0 < sign*disc <= bound, one per class.

    Sorted by (|disc|, a, b, c, d).  The result does not depend on
    ``workers``; the work is split by leading coefficient.
    """
    sign = _sign_value(sign)
    if bound < 23:
        return []
    if bound > 10 ** 7:
        raise ResourceError(f"bound {bound} exceeds the supported 10^7")
    workers = workers or default_workers()
    jobs = [(a, bound, sign) for a in range(1, _a_max(bound, sign) + 1)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_forms_for_a, jobs))
    else:
        chunks = [_forms_for_a(j) for j in jobs]
    forms = [F for chunk in chunks for F in chunk]
    forms.sort(key=lambda F: (abs(F.disc), F.a, F.b, F.c, F.d))
    return forms


def is_maximal(form):
    """Is the cubic ring of an irreducible form the full ring of integers?

    Dedekind's criterion at each p with p^2 | disc: the ring is not
    p-maximal iff F = 0 mod p, or F has a multiple root r mod p and
    p^2 divides F at a primitive lift of r.
    """
    if not form.is_irreducible():
        raise ValueError(f"{form} is reducible")
    D = form.disc
    for p, e in factorize(D).items():
        if e >= 2 and not _maximal_at(form, p):
            return False
    return True


def _multiple_root(form, p):
    a, b, c, d = (x % p for x in form)
    if a == 0 and b == 0:
        return (1, 0)
    for r in range(p):
        val = ((a * r + b) * r + c) * r + d
        der = (3 * a * r + 2 * b) * r + c
        if val % p == 0 and der % p == 0:
            return (r, 1)
    return None


def _maximal_at(form, p):
    if all(x % p == 0 for x in form):
        return False
    root = _multiple_root(form, p)
    if root is None:
        return True
    return form(*root) % (p * p) != 0


@dataclass(frozen=True)
class CubicFieldRecord:
    poly: tuple
    dL: int
    f: int
    dK: int
    signature: str
    isCyclic: bool
    isPure: bool
    radicand: int = 0

    @property
    def sort_key(self):
        return (abs(self.dL), self.poly)

    def row(self):
        a2, a1, a0 = self.poly
        return {
            "dL": self.dL, "f": self.f, "dK": self.dK,
            "a2": a2, "a1": a1, "a0": a0,
            "signature": self.signature,
            "cyclic": int(self.isCyclic), "pure": int(self.isPure),
        }


def _shift(poly):
    """Translate x -> x - k so the x^2 coefficient lies in {-1, 0, 1}."""
    a2, a1, a0 = poly
    k = round(a2 / 3)
    # g(x - k) for g = x^3 + a2 x^2 + a1 x + a0
    b2 = a2 - 3 * k
    b1 = a1 - 2 * a2 * k + 3 * k * k
    b0 = a0 - a1 * k + a2 * k * k - k ** 3
    return (b2, b1, b0)


def field_record(form):
    """CubicFieldRecord of a maximal irreducible form."""
    dL = form.disc
    f, dK = decompose(dL)
    poly = _shift(form.monic())
    radicand = 0
    if dK == -3:
        n = pure_radicand(*poly)
        if n is None:
            raise AssertionError(f"no radicand for {poly} with d_K = -3")
        radicand = n
        poly = (0, 0, -n)
    return CubicFieldRecord(
        poly=poly, dL=dL, f=f, dK=dK,
        signature="totallyReal" if dL > 0 else "simplyReal",
        isCyclic=(dK == 1), isPure=(dK == -3), radicand=radicand,
    )


def enumerate_fields(bound, sign, workers=None, maximal_only=True):
    """One record per cubic field with 0 < sign*d_L <= bound.

    ``maximal_only=False`` keeps non-maximal rings as well; only useful
    to demonstrate what the maximality filter removes.
    """
    if bound > DEFAULT_LIMIT:
        raise ResourceError(f"bound {bound} exceeds the configured limit {DEFAULT_LIMIT}")
    out = []
    for F in enumerate_forms(bound, sign, workers):
        if maximal_only and not is_maximal(F):
            continue
        if maximal_only:
            out.append(field_record(F))
        else:
            out.append(_raw_record(F))
    out.sort(key=lambda r: r.sort_key)
    return out


def _raw_record(form):
    dL = form.disc
    try:
        f, dK = decompose(dL)
    except ValueError:
        f, dK = 0, 0
    return CubicFieldRecord(
        poly=_shift(form.monic()), dL=dL, f=f, dK=dK,
        signature="totallyReal" if dL > 0 else "simplyReal",
        isCyclic=(dK == 1), isPure=(dK == -3),
    )


# --- polynomial oracle -------------------------------------------------------

def _field_disc_of_poly(poly):
    """Field discriminant of Q[x]/(g) by descending to a p-maximal form."""
    F = BinaryCubicForm(1, *poly)
    D = F.disc
    for p, e in factorize(D).items():
        while e >= 2:
            if all(x % p == 0 for x in F):
                F = BinaryCubicForm(*(x // p for x in F))
                e -= 4
                continue
            root = _multiple_root(F, p)
            if root is None or F(*root) % (p * p):
                break
            # move the root to (1 : 0) and divide out the index-p overring
            u, v = root
            if v == 0:
                G = F
            else:
                G = F.act((u, -1, 1, 0))
            a, b, c, d = G
            F = BinaryCubicForm(a // (p * p), b // p, c, d * p)
            e -= 2
    return F.disc


def _split_signature(poly, primes):
    """Roots of g mod p for primes p not dividing disc(g); a field invariant."""
    a2, a1, a0 = poly
    D = poly_disc(*poly)
    return {
        p: sum(1 for r in range(p) if (((r + a2) * r + a1) * r + a0) % p == 0)
        for p in primes if D % p
    }


def _signatures_agree(s1, s2):
    return all(s2[p] == n for p, n in s1.items() if p in s2)


def brute_force_oracle(bound, sign):
    """Cubic fields with 0 < sign*d_L <= bound from a search over monic cubics.

    Every cubic field has a generator alpha of trace 0 or 1 with
    T2(alpha) <= 1/3 + (2/3) sqrt|d_L| (Hunter), which bounds the
    coefficients of its minimal polynomial.  Fields are deduplicated by
    splitting signatures and an exact isomorphism test.
    """
    sign = _sign_value(sign)
    if bound > ORACLE_LIMIT:
        raise ResourceError(f"oracle bound {bound} exceeds {ORACLE_LIMIT}")
    if bound < 1:
        return []
    t2 = 1.0 / 3.0 + (2.0 / 3.0) * sqrt(bound)
    e2max = int(t2) + 1
    e3max = int((t2 / 3.0) ** 1.5) + 1
    primes = [p for p in range(5, 200) if all(p % q for q in range(2, isqrt(p) + 1))]
    by_disc = {}
    for a2 in (0, -1):
        for a1 in range(-e2max, e2max + 1):
            for a0 in range(-e3max, e3max + 1):
                poly = (a2, a1, a0)
                D = poly_disc(*poly)
                if D == 0 or (D > 0) != (sign > 0):
                    continue
                if has_rational_root(*poly):
                    continue
                dL = _field_disc_of_poly(poly)
                if abs(dL) > bound:
                    continue
                by_disc.setdefault(dL, []).append(poly)
    records = []
    for dL, polys in sorted(by_disc.items(), key=lambda kv: abs(kv[0])):
        classes = []
        for poly in sorted(polys, key=lambda g: (abs(poly_disc(*g)), g)):
            sig = _split_signature(poly, primes)
            for rep, rep_sig in classes:
                if _signatures_agree(rep_sig, sig) and isomorphic(rep, poly):
                    break
            else:
                classes.append((poly, sig))
        for poly, _ in classes:
            f, dK = decompose(dL)
            records.append(CubicFieldRecord(
                poly=_shift(poly), dL=dL, f=f, dK=dK,
                signature="totallyReal" if dL > 0 else "simplyReal",
                isCyclic=(dK == 1), isPure=(dK == -3),
            ))
    return records


# --- serialization -----------------------------------------------------------

FIELD_COLUMNS = ("dL", "f", "dK", "a2", "a1", "a0", "signature", "cyclic", "pure")


def records_to_csv(records):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=FIELD_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


def records_to_jsonl(records):
    return "".join(json.dumps(r.row()) + "\n" for r in records)


def records_from_jsonl(text):
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        row = json.loads(line)
        out.append(CubicFieldRecord(
            poly=(row["a2"], row["a1"], row["a0"]), dL=row["dL"], f=row["f"],
            dK=row["dK"], signature=row["signature"],
            isCyclic=bool(row["cyclic"]), isPure=bool(row["pure"]),
        ))
    return out


def discriminant_counts(records):
    """Map d_L -> number of fields."""
    counts = {}
    for r in records:
        counts[r.dL] = counts.get(r.dL, 0) + 1
    return counts
