"""Rational integers and the localized ring Z[1/n]."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .errors import UsageError


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    for d in range(3, isqrt(q) + 1, 2):
        if q % d == 0:
            return False
    return True


@lru_cache(maxsize=None)
def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime divisors of |n| by trial division, ascending."""
    n = abs(n)
    if n == 0:
        raise UsageError("n must be nonzero")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


def radical(n: int) -> int:
    r = 1
    for q in prime_factors(n):
        r *= q
    return r


def require_odd_prime(p: int) -> int:
    if not isinstance(p, int) or p < 3 or not is_prime(p):
        raise UsageError(f"p must be an odd prime, got {p!r}")
    return p


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def valuation(x: int, q: int) -> int:
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    while x % q == 0:
        x //= q
        v += 1
    return v


class ZInv:
    """The ring Z[1/n], identified by the radical of n.

    Fractions serve as its elements; membership means the reduced
    denominator is n-smooth.
    """

    __slots__ = ("n", "primes")

    def __init__(self, n: int):
        if n == 0:
            raise UsageError("n = 0 is not allowed")
        self.primes = prime_factors(n)
        self.n = radical(n)

    def __repr__(self) -> str:
        return f"ZInv({self.n})"

    def __eq__(self, other) -> bool:
        return isinstance(other, ZInv) and other.n == self.n

    def __hash__(self) -> int:
        return hash(("ZInv", self.n))

    def split(self, m: int) -> tuple[int, int]:
        """Split |m| > 0 into (n-smooth part, n-free part)."""
        m = abs(m)
        if m == 0:
            raise ValueError("cannot split zero")
        smooth = 1
        for q in self.primes:
            while m % q == 0:
                m //= q
                smooth *= q
        return smooth, m

    def is_smooth(self, m: int) -> bool:
        return m != 0 and self.split(m)[1] == 1

    def contains(self, x) -> bool:
        return self.is_smooth(Fraction(x).denominator)

    def is_unit(self, x) -> bool:
        x = Fraction(x)
        return x != 0 and self.is_smooth(x.numerator) and self.is_smooth(x.denominator)

    def free_part(self, x) -> int:
        """n-free part of the numerator of x (the generator of x*Z[1/n] up to sign)."""
        x = Fraction(x)
        if not self.contains(x):
            raise ValueError(f"{x} is not in {self!r}")
        return self.split(x.numerator)[1]

    def inverse_mod(self, x, d: int) -> int:
        """Residue of x in Z[1/n]/dZ[1/n] = Z/d, as an integer in [0, d)."""
        x = Fraction(x)
        if d == 1:
            return 0
        return x.numerator * pow(x.denominator, -1, d) % d
