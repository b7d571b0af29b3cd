"""Fractional ideals of Z[1/n][xi] as canonical Z[1/n]-lattices in Q(xi)."""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Callable, Iterable, Sequence

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor_sqf

from .cyclo import CycElt
from .errors import DomainError, SearchExhausted, UsageError
from .integers import ZInv
from .linalg import hnf_int, hnf_local, lll, mat_inverse, mat_mul

COMBO_WEIGHT = 3  # largest number of reduced basis vectors combined when hunting for a generator


def _t2(p: int) -> Callable:
    # tr(x * conj(y)) on power-basis coordinates: Gram matrix p*I - J
    def inner(u, v):
        return p * sum(a * b for a, b in zip(u, v)) - sum(u) * sum(v)
    return inner


def _mult_rows(x: CycElt) -> list[tuple[Fraction, ...]]:
    """Coordinates of x, x*xi, ..., x*xi^(p-2)."""
    xi = CycElt.xi(x.p)
    rows, y = [], x
    for _ in range(x.p - 1):
        rows.append(y.coords)
        y = y * xi
    return rows


class IdealBasis:
    """A nonzero fractional ideal, stored as its canonical Z[1/n]-Hermite basis."""

    __slots__ = ("p", "ring", "rows")

    def __init__(self, p: int, n: int, rows: Sequence[Sequence]):
        self.p = p
        self.ring = ZInv(n)
        self.rows = tuple(hnf_local(rows, self.ring))
        if len(self.rows) != p - 1:
            raise DomainError("generators span a lattice of deficient rank")

    @classmethod
    def from_generators(cls, p: int, n: int, gens: Iterable[CycElt]) -> IdealBasis:
        rows = []
        for g in gens:
            if g.p != p:
                raise UsageError("mismatched primes")
            rows += _mult_rows(g)
        if not rows:
            raise DomainError("the zero ideal is not allowed")
        return cls(p, n, rows)

    @classmethod
    def principal(cls, x: CycElt, n: int) -> IdealBasis:
        if x.is_zero():
            raise DomainError("the zero ideal is not allowed")
        return cls.from_generators(x.p, n, [x])

    @classmethod
    def from_lattice(cls, p: int, n: int, rows: Sequence[Sequence]) -> IdealBasis:
        """Accept a Z[1/n]-basis only if it is stable under multiplication by xi."""
        ideal = cls(p, n, rows)
        if not ideal.is_xi_stable():
            raise DomainError("lattice is not an ideal: not closed under multiplication by xi")
        return ideal

    @property
    def n(self) -> int:
        return self.ring.n

    def elements(self) -> list[CycElt]:
        return [CycElt(self.p, r) for r in self.rows]

    def __eq__(self, other) -> bool:
        return isinstance(other, IdealBasis) and (self.p, self.ring, self.rows) == (other.p, other.ring, other.rows)

    def __hash__(self) -> int:
        return hash((self.p, self.ring.n, self.rows))

    def __repr__(self) -> str:
        return f"IdealBasis(p={self.p}, n={self.n}, norm~{self.norm_free()})"

    def coordinates(self, x: CycElt) -> list[Fraction]:
        inv = _cached_inverse(self.rows)
        return mat_mul([list(x.coords)], inv)[0]

    def contains(self, x: CycElt) -> bool:
        return all(self.ring.contains(c) for c in self.coordinates(x))

    def is_xi_stable(self) -> bool:
        xi = CycElt.xi(self.p)
        return all(self.contains(x * xi) for x in self.elements())

    def product(self, other: IdealBasis) -> IdealBasis:
        return IdealBasis.from_generators(
            self.p, self.n, [a * b for a in self.elements() for b in other.elements()]
        )

    def conj(self) -> IdealBasis:
        return IdealBasis.from_generators(self.p, self.n, [x.conj() for x in self.elements()])

    def galois(self, k: int) -> IdealBasis:
        return IdealBasis.from_generators(self.p, self.n, [x.galois(k) for x in self.elements()])

    def scale(self, x: CycElt) -> IdealBasis:
        return IdealBasis.from_generators(self.p, self.n, [x * y for y in self.elements()])

    def norm_free(self) -> Fraction:
        """Absolute norm with all primes dividing n removed (well defined on ideals)."""
        d = Fraction(1)
        for i, r in enumerate(self.rows):
            d *= r[i]
        _, num = self.ring.split(d.numerator)
        _, den = self.ring.split(d.denominator)
        return Fraction(num, den)

    def is_generated_by(self, x: CycElt) -> bool:
        if x.is_zero() or not self.contains(x):
            return False
        xinv = x.inverse()
        return all(self.ring.is_smooth((y * xinv).den) for y in self.elements())

    def find_generator(self) -> CycElt:
        """An element generating the ideal; SearchExhausted if none is found among short vectors."""
        # clear denominators, then look in the Z[xi]-ideal spanned by the integral basis
        den = 1
        for r in self.rows:
            for c in r:
                den = den * c.denominator // gcd(den, c.denominator)
        gens = [y * den for y in self.elements()]

        def accept(x: CycElt) -> bool:
            return self.is_generated_by(x / den)

        x = lattice_generator(self.p, gens, accept)
        return x / den


@lru_cache(maxsize=4096)
def _cached_inverse(rows):
    return mat_inverse([list(r) for r in rows])


def integral_basis(gens: Sequence[CycElt]) -> list[list[int]]:
    """Integer Hermite basis of the Z[xi]-ideal generated by integral elements."""
    rows = []
    for g in gens:
        if not g.is_integral():
            raise DomainError(f"{g} is not integral")
        rows += [[int(c) for c in r] for r in _mult_rows(g)]
    return hnf_int(rows)


def lattice_generator(
    p: int,
    gens: Sequence[CycElt],
    accept: Callable[[CycElt], bool],
    *,
    weight: int = COMBO_WEIGHT,
) -> CycElt:
    """Search short vectors of the Z[xi]-ideal generated by ``gens`` for one passing ``accept``.

    The lattice is LLL-reduced for the trace form; combinations of up to
    ``weight`` reduced vectors with coefficients +-1 are tried in order.
    """
    basis = integral_basis(gens)
    if len(basis) != p - 1:
        raise DomainError("ideal has deficient rank")
    inner = _t2(p)
    red = lll(basis, inner)
    red.sort(key=lambda v: (inner(v, v), v))
    vecs = np.array(red, dtype=object)
    for w in range(1, weight + 1):
        for idx in itertools.combinations(range(len(red)), w):
            for signs in itertools.product((1, -1), repeat=w - 1):
                v = vecs[idx[0]].copy()
                for s, j in zip(signs, idx[1:]):
                    v = v + s * vecs[j]
                x = CycElt(p, [int(c) for c in v])
                if not x.is_zero() and accept(x):
                    return x
    raise SearchExhausted(f"no generator among combinations of {weight} reduced vectors", weight)


@lru_cache(maxsize=None)
def prime_ideal_generators(p: int, q: int) -> tuple[CycElt, ...]:
    """Integral generators (q, h(xi)) of one prime of Z[xi] over q != p.

    h is the least monic irreducible factor of the cyclotomic polynomial mod q.
    """
    _, factors = gf_factor_sqf([1] * p, q, ZZ)
    polys = [[int(c) % q for c in f] for f in factors]
    polys.sort(key=lambda c: (len(c), c))
    h = polys[0][::-1]
    return (CycElt.from_int(p, q), CycElt.from_poly(p, h))
