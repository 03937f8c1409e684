"""Small exact integer helpers shared by the other modules."""

from functools import lru_cache
from math import gcd, isqrt


def is_square(n):
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def xgcd(a, b):
    """Return (g, u, v) with u*a + v*b == g == gcd(a, b) >= 0."""
    u0, v0, u1, v1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if a < 0:
        return -a, -u0, -v0
    return a, u0, v0


@lru_cache(maxsize=8)
def spf_table(limit):
    """Smallest-prime-factor sieve for 0..limit (as a list)."""
    spf = list(range(limit + 1))
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == p:
            for m in range(p * p, limit + 1, p):
                if spf[m] == m:
                    spf[m] = p
    return spf


_SIEVE_LIMIT = 1 << 18


def factorize(n):
    """Prime factorisation of |n| as a dict {p: e}."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out = {}
    if n <= _SIEVE_LIMIT:
        spf = spf_table(_SIEVE_LIMIT)
        while n > 1:
            p = spf[n]
            n //= p
            out[p] = out.get(p, 0) + 1
        return out
    p = 2
    while p * p <= n:
        while n % p == 0:
            n //= p
            out[p] = out.get(p, 0) + 1
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n):
    if n < 2:
        return False
    if n <= _SIEVE_LIMIT:
        return spf_table(_SIEVE_LIMIT)[n] == n
    return factorize(n) == {n: 1}


def primes_up_to(n):
    spf = spf_table(max(n, 2))
    return [p for p in range(2, n + 1) if spf[p] == p]


def is_squarefree(n):
    return all(e == 1 for e in factorize(n).values())


def kronecker(d, n):
    """Kronecker symbol (d/n) for n > 0."""
    if n <= 0:
        raise ValueError("n must be positive")
    result = 1
    while n % 2 == 0:
        n //= 2
        if d % 2 == 0:
            return 0
        if d % 8 in (3, 5):
            result = -result
    # Jacobi symbol (d/n) for odd n
    a = d % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_fundamental(d):
    """True for fundamental discriminants (d = 1 excluded)."""
    if d in (0, 1):
        return False
    r = d % 4
    if r == 1:
        return is_squarefree(d)
    if r == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def square_factor(d):
    """Largest s with s**2 | d (used in diagnostics)."""
    s = 1
    for p, e in factorize(d).items():
        s *= p ** (e // 2)
    return s


def fundamental_part(n):
    """Split n != 0 (n = 0, 1 mod 4 or a square) as n = f**2 * dk.

    dk is a fundamental discriminant, or 1 when n is a perfect square.
    Returns (f, dk) or raises ValueError.
    """
    if n == 0:
        raise ValueError("zero has no fundamental part")
    sign = -1 if n < 0 else 1
    core = 1
    f = 1
    for p, e in factorize(n).items():
        f *= p ** (e // 2)
        if e % 2:
            core *= p
    core *= sign
    if core == 1:
        return f, 1
    if core % 4 == 1:
        dk = core
    else:
        dk = 4 * core
        if f % 2:
            raise ValueError(f"{n} is not of the form f^2 * d_K")
        f //= 2
    return f, dk


def divisors(n):
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


def sqrt_mod_prime(a, p):
    """A square root of a modulo the odd prime p (Tonelli-Shanks) or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def hensel_sqrt(a, p, k):
    """Square root of a modulo p**k for odd p not dividing a, or None."""
    r = sqrt_mod_prime(a, p)
    if r is None:
        return None
    mod = p
    for _ in range(1, k):
        mod_next = mod * p
        # r <- r - (r^2 - a) / (2r)
        r = (r - (r * r - a) * pow(2 * r, -1, mod_next)) % mod_next
        mod = mod_next
    return r % (p ** k)


def valuation(n, p):
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def integer_cbrt(n):
    """Integer cube root of n >= 0 (floor)."""
    if n < 0:
        raise ValueError("negative")
    x = int(round(n ** (1 / 3))) if n < 1 << 52 else 1 << ((n.bit_length() + 2) // 3)
    while x ** 3 > n:
        x -= 1
    while (x + 1) ** 3 <= n:
        x += 1
    return x


def lcm(a, b):
    return a // gcd(a, b) * b
