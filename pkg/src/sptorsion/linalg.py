"""Exact linear algebra over Z, Z[1/n], Q and GF(2).

Matrices are lists of rows.  Rational entries are ``Fraction``; integer
routines take and return plain ints.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Callable, Sequence

from .errors import DomainError
from .integers import ZInv, ext_gcd

Matrix = list[list[Fraction]]


# -- dense rational matrices ---------------------------------------------------

def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def as_fractions(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col) if x and y), Fraction(0)) for col in bt] for row in a]


def mat_pow(a: Matrix, e: int) -> Matrix:
    result = identity(len(a))
    base = a
    while e:
        if e & 1:
            result = mat_mul(result, base)
        e >>= 1
        if e:
            base = mat_mul(base, base)
    return result


def mat_inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise DomainError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def det(a: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(x) for x in row] for row in a]
    n = len(m)
    d = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            d = -d
        d *= m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] / m[col][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return d


def charpoly(a: Sequence[Sequence]) -> list[Fraction]:
    """Coefficients c_0..c_n (low to high, monic) of det(xI - A), by Faddeev-LeVerrier."""
    n = len(a)
    a = as_fractions(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = zeros(n, n)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        m = mat_mul(a, m)
        for i in range(n):
            m[i][i] += coeffs[n - k + 1]
        am = mat_mul(a, m)
        coeffs[n - k] = -sum(am[i][i] for i in range(n)) / k
    return coeffs


# -- integer echelon forms -------------------------------------------------------

def _echelon_int(rows: list[list[int]], ncols: int, reduce_above: bool) -> list[list[int]]:
    a = [list(r) for r in rows if any(r)]
    prow = 0
    for col in range(ncols):
        while True:
            nz = [i for i in range(prow, len(a)) if a[i][col] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(a[i][col]))
            a[prow], a[best] = a[best], a[prow]
            pv = a[prow][col]
            clean = True
            for i in range(prow + 1, len(a)):
                if a[i][col] != 0:
                    q = a[i][col] // pv
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[prow])]
                    if a[i][col] != 0:
                        clean = False
            if clean:
                break
        if prow < len(a) and a[prow][col] != 0:
            if a[prow][col] < 0:
                a[prow] = [-x for x in a[prow]]
            if reduce_above:
                pv = a[prow][col]
                for r in range(prow):
                    q = a[r][col] // pv
                    if q:
                        a[r] = [x - q * y for x, y in zip(a[r], a[prow])]
            prow += 1
            a = a[:prow] + [r for r in a[prow:] if any(r)]
    return a[:prow]


def hnf_int(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row Hermite normal form over Z (nonzero rows only)."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    return _echelon_int(rows, ncols, reduce_above=True)


def left_kernel_int(a: Sequence[Sequence[int]]) -> list[list[int]]:
    """Z-basis of {v in Z^r : v A = 0} for an r x c integer matrix A."""
    r = len(a)
    if r == 0:
        return []
    c = len(a[0])
    aug = [list(row) + [int(i == j) for j in range(r)] for i, row in enumerate(a)]
    prow = 0
    for col in range(c):
        while True:
            nz = [i for i in range(prow, r) if aug[i][col] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(aug[i][col]))
            aug[prow], aug[best] = aug[best], aug[prow]
            pv = aug[prow][col]
            clean = True
            for i in range(prow + 1, r):
                if aug[i][col] != 0:
                    q = aug[i][col] // pv
                    aug[i] = [x - q * y for x, y in zip(aug[i], aug[prow])]
                    if aug[i][col] != 0:
                        clean = False
            if clean:
                break
        if prow < r and aug[prow][col] != 0:
            prow += 1
    kernel = [row[c:] for row in aug[prow:]]
    assert all(not any(row[:c]) for row in aug[prow:])
    return hnf_int(kernel) if kernel else []


# -- Hermite form over Z[1/n] ----------------------------------------------------

def hnf_local(rows: Sequence[Sequence], ring: ZInv) -> list[tuple[Fraction, ...]]:
    """Canonical row basis of the Z[1/n]-span of ``rows``.

    Pivots are positive n-free integers and entries above a pivot d are
    integers in [0, d).  Two spans are equal iff their forms are equal.
    """
    rows = [[Fraction(x) for x in r] for r in rows]
    rows = [r for r in rows if any(r)]
    if not rows:
        return []
    ncols = len(rows[0])
    den = 1
    for r in rows:
        for x in r:
            den = den * x.denominator // gcd(den, x.denominator)
    if not ring.is_smooth(den):
        raise DomainError(f"entries leave Z[1/{ring.n}]")
    ints = [[int(x * den) for x in r] for r in rows]
    h = _echelon_int(ints, ncols, reduce_above=False)
    out: list[list[Fraction]] = []
    pivots: list[int] = []
    for r in h:
        col = next(i for i, x in enumerate(r) if x)
        smooth, _ = ring.split(r[col])
        out.append([Fraction(x, smooth) for x in r])
        pivots.append(col)
    for i, col in enumerate(pivots):
        d = out[i][col]
        assert d.denominator == 1 and d > 0
        d = int(d)
        for r in range(i):
            e = out[r][col]
            if e == 0:
                continue
            res = ring.inverse_mod(e, d)
            t = (e - res) / d
            if t:
                out[r] = [x - t * y for x, y in zip(out[r], out[i])]
    return [tuple(r) for r in out]


def bezout_local(values: Sequence[Fraction], ring: ZInv) -> list[Fraction]:
    """Coefficients c in Z[1/n] with sum(c_i * v_i) = 1, or DomainError."""
    values = [Fraction(v) for v in values]
    den = 1
    for v in values:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in values]
    g, coeffs = 0, [0] * len(ints)
    for i, x in enumerate(ints):
        g2, s, t = ext_gcd(g, x)
        coeffs = [c * s for c in coeffs]
        coeffs[i] += t
        g = g2
    if g == 0 or not ring.is_smooth(g):
        raise DomainError("entries do not generate the unit ideal of Z[1/n]")
    scale = Fraction(den, g)
    return [c * scale for c in coeffs]


# -- GF(2) -------------------------------------------------------------------------

class GF2Span:
    """Subspace of GF(2)^d with pivots chosen at the highest available index."""

    def __init__(self, dim: int, vectors=()):
        self.dim = dim
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []
        for v in vectors:
            self.add(v)

    def reduce(self, v) -> list[int]:
        v = [x & 1 for x in v]
        for row, piv in zip(self.rows, self.pivots):
            if v[piv]:
                v = [a ^ b for a, b in zip(v, row)]
        return v

    def add(self, v) -> bool:
        v = self.reduce(v)
        nz = [i for i, x in enumerate(v) if x]
        if not nz:
            return False
        piv = nz[-1]
        for k, row in enumerate(self.rows):
            if row[piv]:
                self.rows[k] = [a ^ b for a, b in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(piv)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def complement_coords(self) -> list[int]:
        return [i for i in range(self.dim) if i not in self.pivots]


# -- lattice reduction -------------------------------------------------------------

def lll(basis: Sequence[Sequence[int]], inner: Callable, delta: Fraction = Fraction(3, 4)) -> list[list[int]]:
    """Exact LLL reduction of integer vectors under the positive definite form ``inner``."""
    b = [list(v) for v in basis]
    n = len(b)
    if n <= 1:
        return b
    mu = [[Fraction(0)] * n for _ in range(n)]
    bb: list[Fraction] = []
    for i in range(n):
        for j in range(i):
            s = Fraction(inner(b[i], b[j])) - sum((mu[j][t] * mu[i][t] * bb[t] for t in range(j)), Fraction(0))
            mu[i][j] = s / bb[j]
        bb.append(Fraction(inner(b[i], b[i])) - sum((mu[i][t] ** 2 * bb[t] for t in range(i)), Fraction(0)))

    def size_reduce(k: int, l: int) -> None:
        q = round(mu[k][l])
        if q:
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            for j in range(l):
                mu[k][j] -= q * mu[l][j]
            mu[k][l] -= q

    k = 1
    while k < n:
        size_reduce(k, k - 1)
        if bb[k] < (delta - mu[k][k - 1] ** 2) * bb[k - 1]:
            m = mu[k][k - 1]
            big = bb[k] + m * m * bb[k - 1]
            mu[k][k - 1] = m * bb[k - 1] / big
            bb[k] = bb[k - 1] * bb[k] / big
            bb[k - 1] = big
            b[k], b[k - 1] = b[k - 1], b[k]
            for j in range(k - 1):
                mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
            for i in range(k + 1, n):
                t = mu[i][k]
                mu[i][k] = mu[i][k - 1] - m * t
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]
            k = max(k - 1, 1)
        else:
            for l in range(k - 2, -1, -1):
                size_reduce(k, l)
            k += 1
    return b
