"""Exact arithmetic in the cyclotomic field Q(xi_p).

Elements are stored on the power basis 1, xi, ..., xi^(p-2) as a tuple of
integer numerators over one common positive denominator, kept in lowest
terms.  Reduction uses xi^(p-1) = -(1 + xi + ... + xi^(p-2)).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Iterable, NamedTuple

import mpmath

from .errors import DomainError, UsageError
from .integers import ZInv, require_odd_prime


def _normalize(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        nums = [-c for c in nums]
        den = -den
    g = reduce(gcd, nums, den)
    if g > 1:
        nums = [c // g for c in nums]
        den //= g
    return tuple(nums), den


class CycElt:
    """An element of Q(xi_p) in canonical power-basis coordinates."""

    __slots__ = ("p", "num", "den", "_hash")

    def __init__(self, p: int, coords: Iterable = (), *, _raw: tuple | None = None):
        self.p = p
        if _raw is not None:
            self.num, self.den = _raw
        else:
            coords = [Fraction(c) for c in coords]
            if len(coords) > p - 1:
                raise UsageError(f"expected at most {p - 1} coordinates, got {len(coords)}")
            coords += [Fraction(0)] * (p - 1 - len(coords))
            den = 1
            for c in coords:
                den = den * c.denominator // gcd(den, c.denominator)
            self.num, self.den = _normalize([int(c * den) for c in coords], den)
        self._hash = None

    @classmethod
    def _from_ints(cls, p: int, nums, den: int = 1) -> CycElt:
        return cls(p, _raw=_normalize(list(nums), den))

    @classmethod
    def from_int(cls, p: int, k) -> CycElt:
        return cls(p, [k])

    @classmethod
    def xi(cls, p: int, power: int = 1) -> CycElt:
        """The root of unity xi^power."""
        power %= p
        nums = [0] * p
        nums[power] = 1
        return cls._from_ints(p, _reduce_cyclic(nums, p))

    @classmethod
    def from_poly(cls, p: int, coeffs) -> CycElt:
        """Reduce a polynomial in xi of any degree (coefficients low to high)."""
        acc = [Fraction(0)] * p
        for i, c in enumerate(coeffs):
            acc[i % p] += Fraction(c)
        top = acc[p - 1]
        return cls(p, [c - top for c in acc[: p - 1]])

    # -- views -------------------------------------------------------------
    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def __repr__(self) -> str:
        return f"CycElt(p={self.p}, [{format_elt(self)}])"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coords):
            if c == 0:
                continue
            mono = "" if i == 0 else ("xi" if i == 1 else f"xi^{i}")
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            terms.append(("-" if c < 0 else "+") + body)
        if not terms:
            return "0"
        s = "".join(terms)
        return s[1:] if s[0] == "+" else s

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise DomainError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def is_integral(self) -> bool:
        """Membership in Z[xi]."""
        return self.den == 1

    def is_real(self) -> bool:
        return self == self.conj()

    def height(self) -> int:
        return max(max(abs(c) for c in self.num), self.den)

    # -- ring structure ----------------------------------------------------
    def _coerce(self, other) -> CycElt:
        if isinstance(other, CycElt):
            if other.p != self.p:
                raise UsageError(f"mismatched primes {self.p} and {other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycElt(self.p, [other])
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        if not isinstance(other, CycElt):
            return NotImplemented
        return self.p == other.p and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.p, self.num, self.den))
        return self._hash

    def __neg__(self) -> CycElt:
        return CycElt(self.p, _raw=(tuple(-c for c in self.num), self.den))

    def __add__(self, other) -> CycElt:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = self.den * other.den // gcd(self.den, other.den)
        a, b = d // self.den, d // other.den
        return CycElt._from_ints(self.p, [x * a + y * b for x, y in zip(self.num, other.num)], d)

    __radd__ = __add__

    def __sub__(self, other) -> CycElt:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> CycElt:
        return (-self) + other

    def __mul__(self, other) -> CycElt:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        acc = [0] * p
        for i, x in enumerate(self.num):
            if x:
                for j, y in enumerate(other.num):
                    if y:
                        acc[(i + j) % p] += x * y
        return CycElt._from_ints(p, _reduce_cyclic(acc, p), self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> CycElt:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> CycElt:
        return self.inverse() * other

    def __pow__(self, e: int) -> CycElt:
        if e < 0:
            return self.inverse() ** (-e)
        result = CycElt.from_int(self.p, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self) -> CycElt:
        if self.is_zero():
            raise DomainError("zero is not invertible")
        if self.is_rational():
            return CycElt(self.p, [1 / Fraction(self.num[0], self.den)])
        # adjugate: the product of the other conjugates, divided by the norm
        adj = CycElt.from_int(self.p, 1)
        for k in range(2, self.p):
            adj = adj * self.galois(k)
        return adj * (1 / (self * adj).rational())

    # -- Galois structure --------------------------------------------------
    def galois(self, k: int) -> CycElt:
        """Image under the automorphism xi -> xi^k."""
        p = self.p
        k %= p
        if k == 0:
            raise UsageError("Galois index must be coprime to p")
        if k == 1:
            return self
        acc = [0] * p
        for i, c in enumerate(self.num):
            acc[i * k % p] = c
        return CycElt._from_ints(p, _reduce_cyclic(acc, p), self.den)

    def conj(self) -> CycElt:
        return self.galois(self.p - 1)

    def trace(self) -> Fraction:
        return Fraction(self.p * self.num[0] - sum(self.num), self.den)

    def norm_real(self) -> CycElt:
        """x * conj(x), the norm down to the maximal real subfield."""
        return self * self.conj()

    def norm(self) -> Fraction:
        """Absolute norm to Q."""
        r = self.norm_real()
        acc = r
        for k in range(2, (self.p - 1) // 2 + 1):
            acc = acc * r.galois(k)
        return acc.rational()

    # -- numerics ----------------------------------------------------------
    def embed(self, k: int):
        """mpmath complex value at the current precision under xi -> exp(2 pi i k / p)."""
        z = mpmath.expjpi(mpmath.mpf(2 * k) / self.p)
        acc = mpmath.mpc(0)
        w = mpmath.mpc(1)
        for c in self.num:
            if c:
                acc += c * w
            w *= z
        return acc / self.den


def _reduce_cyclic(acc: list[int], p: int) -> list[int]:
    top = acc[p - 1]
    return [c - top for c in acc[: p - 1]]


# -- text form ---------------------------------------------------------------

def format_elt(x: CycElt) -> str:
    return ", ".join(str(c) for c in x.coords)


def parse_elt(p: int, text: str) -> CycElt:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != p - 1:
        raise UsageError(f"expected {p - 1} comma-separated rationals, got {len(parts)}")
    try:
        return CycElt(p, [Fraction(s) for s in parts])
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational in {text!r}: {exc}") from None


# -- operation-level API -----------------------------------------------------

def arithmetic(x: CycElt, y: CycElt, op: str) -> CycElt:
    if x.p != y.p:
        raise UsageError(f"mismatched primes {x.p} and {y.p}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise UsageError(f"unknown operation {op!r}")


class Inverse(NamedTuple):
    value: CycElt
    in_ring: bool  # True when the inverse lies in Z[1/n][xi]


def invert(x: CycElt, n: int) -> Inverse:
    y = x.inverse()
    ring = ZInv(n)
    return Inverse(y, ring.is_smooth(y.den))


def apply_galois(x: CycElt, k: int) -> CycElt:
    if not 1 <= k <= x.p - 1:
        raise UsageError(f"Galois index must satisfy 1 <= k <= {x.p - 1}")
    return x.galois(k)


class TraceNorm(NamedTuple):
    trace: Fraction
    norm_real: CycElt
    norm_abs: Fraction


def trace_and_norm(x: CycElt) -> TraceNorm:
    return TraceNorm(x.trace(), x.norm_real(), x.norm())


@lru_cache(maxsize=None)
def different_generator(p: int) -> CycElt:
    """D = p * xi^((p+1)/2) / (xi - 1), a generator of the different of Z[xi]."""
    require_odd_prime(p)
    return p * CycElt.xi(p, (p + 1) // 2) / (CycElt.xi(p) - 1)


def is_unit(x: CycElt, n: int) -> bool:
    """True iff x is invertible in Z[1/n][xi]."""
    ring = ZInv(n)
    if x.is_zero() or not ring.is_smooth(x.den):
        return False
    return ring.is_unit(x.norm())
