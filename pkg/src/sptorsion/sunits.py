"""S-unit groups of Z[1/n][xi] and Z[1/n][xi + 1/xi], and the norm map between them.

Only primes p <= 19 are supported: there both rings of integers have class
number one, so cyclotomic units together with one generator per prime over
n generate the S-unit groups.  Nothing here trusts that silently; every
decomposition is verified by exact reconstruction.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import mpmath
import numpy as np

from .cyclo import CycElt, is_unit
from .ideals import lattice_generator, prime_ideal_generators
from .errors import DomainError, SearchExhausted, UsageError, VerificationError
from .integers import ZInv, require_odd_prime, valuation
from .linalg import GF2Span, hnf_int, left_kernel_int
from .splitting import INERT, RAMIFIED, SPLIT, split_summary

SUPPORTED_PRIMES = (3, 5, 7, 11, 13, 17, 19)
PRECISION_LADDER = (128, 256, 512)
SEARCH_BUDGET = 4_000_000  # candidates examined per generator search

REAL, FULL = "real", "full"


def require_supported(p: int) -> int:
    require_odd_prime(p)
    if p not in SUPPORTED_PRIMES:
        raise UsageError(
            f"p = {p} is outside the class-number-one range {SUPPORTED_PRIMES}; "
            "supply the ideal class data externally"
        )
    return p


def _precision_ladder() -> tuple[int, ...]:
    start = os.environ.get("SPTORSION_PRECISION_BITS")
    if not start:
        return PRECISION_LADDER
    try:
        bits = int(start)
    except ValueError:
        raise UsageError(f"SPTORSION_PRECISION_BITS must be an integer, got {start!r}") from None
    if bits < 53:
        raise UsageError("SPTORSION_PRECISION_BITS must be at least 53")
    return (bits, 2 * bits, 4 * bits)


# -- generators ------------------------------------------------------------------

def cyclotomic_unit(p: int, a: int) -> CycElt:
    """The real unit xi^((1-a)/2) (1 - xi^a) / (1 - xi)."""
    require_odd_prime(p)
    if not 2 <= a <= (p - 1) // 2:
        raise UsageError(f"cyclotomic unit index must satisfy 2 <= a <= {(p - 1) // 2}")
    half = (p + 1) // 2
    shift = (1 - a) * half % p
    return CycElt.xi(p, shift) * CycElt.from_poly(p, [1] * a)


@lru_cache(maxsize=None)
def real_basis(p: int) -> tuple[CycElt, ...]:
    """Z-basis 1, xi^k + xi^-k (1 <= k < (p-1)/2) of Z[xi + 1/xi]."""
    m = (p - 1) // 2
    out = [CycElt.from_int(p, 1)]
    for k in range(1, m):
        out.append(CycElt.xi(p, k) + CycElt.xi(p, -k))
    return tuple(out)


def _digit_values(h: int) -> list[int]:
    vals = [0]
    for v in range(1, h + 1):
        vals += [v, -v]
    return vals


def _candidates(dim: int, h: int, chunk: int = 1 << 16) -> Iterator[np.ndarray]:
    """Integer vectors of max-abs height exactly h, lexicographic in digit order 0, 1, -1, 2, -2, ..."""
    vals = np.array(_digit_values(h), dtype=np.int64)
    base = len(vals)
    total = base ** dim
    powers = base ** np.arange(dim - 1, -1, -1, dtype=object)
    powers = np.array([int(x) for x in powers], dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % base
        vecs = vals[digits]
        keep = np.abs(vecs).max(axis=1) == h
        if keep.any():
            yield vecs[keep]


@lru_cache(maxsize=None)
def _embedding_table(p: int, field_: str) -> np.ndarray:
    m = (p - 1) // 2
    ks = np.arange(1, m + 1)
    if field_ == FULL:
        exps = np.arange(p - 1)
        return np.exp(2j * np.pi * np.outer(exps, ks) / p)
    table = np.empty((m, m))
    table[0] = 1.0
    for i in range(1, m):
        table[i] = 2 * np.cos(2 * np.pi * i * ks / p)
    return table


def _to_elt(p: int, vec, field_: str) -> CycElt:
    if field_ == FULL:
        return CycElt(p, [int(c) for c in vec])
    acc = CycElt.from_int(p, 0)
    for c, b in zip(vec, real_basis(p)):
        if c:
            acc = acc + int(c) * b
    return acc


def _exact_norm(x: CycElt, field_: str) -> Fraction:
    """Norm to Q from the indicated field (the real norm is signed)."""
    if field_ == FULL:
        return x.norm()
    p = x.p
    acc = x
    for k in range(2, (p - 1) // 2 + 1):
        acc = acc * x.galois(k)
    return acc.rational()


def search_generator(p: int, target: int, field_: str, budget: int = SEARCH_BUDGET) -> CycElt:
    """First element (height, then lexicographic) whose norm has absolute value ``target``."""
    dim = p - 1 if field_ == FULL else (p - 1) // 2
    table = _embedding_table(p, field_)
    seen = 0
    h = 0
    while seen < budget:
        h += 1
        for block in _candidates(dim, h):
            vals = block.astype(float) @ table
            if field_ == FULL:
                norms = np.prod(np.abs(vals) ** 2, axis=1)
            else:
                norms = np.abs(np.prod(vals, axis=1))
            hits = np.nonzero(np.abs(norms - target) < 0.5)[0]
            for i in hits:
                x = _to_elt(p, block[i], field_)
                if abs(_exact_norm(x, field_)) == target:
                    return x
            seen += len(block)
            if seen >= budget:
                break
    raise SearchExhausted(f"no element of norm {target} in the {field_} ring of Q(xi_{p})", h)


def _coset_reps(p: int, gens: Sequence[int]) -> list[int]:
    sub = {1}
    frontier = [1]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g % p
            if y not in sub:
                sub.add(y)
                frontier.append(y)
    reps, covered = [], set()
    for k in range(1, p):
        if k not in covered:
            reps.append(k)
            covered |= {k * s % p for s in sub}
    return reps


@lru_cache(maxsize=None)
def _real_prime_gens(p: int, q: int) -> tuple[CycElt, ...]:
    rec = split_summary(p, q).records[0]
    if rec.kind == RAMIFIED:
        x = 1 - CycElt.xi(p)
        return (x.norm_real(),)
    if rec.count == 1:
        return (CycElt.from_int(p, q),)
    g0 = search_generator(p, q ** rec.real_degree, REAL)
    return tuple(g0.galois(k) for k in _coset_reps(p, [q, p - 1]))


@lru_cache(maxsize=None)
def _full_prime_gens(p: int, q: int) -> tuple[CycElt, ...]:
    rec = split_summary(p, q).records[0]
    if rec.kind == RAMIFIED:
        return (1 - CycElt.xi(p),)
    if rec.kind == INERT:
        return _real_prime_gens(p, q)
    target = q ** rec.f
    if 3 ** (p - 1) <= SEARCH_BUDGET:
        g0 = search_generator(p, target, FULL)
    else:
        # the coefficient box is too large; take short vectors of the prime ideal instead
        g0 = lattice_generator(p, prime_ideal_generators(p, q), lambda x: abs(x.norm()) == target)
    out = []
    for k in _coset_reps(p, [q, p - 1]):
        g = g0.galois(k)
        out += [g, g.conj()]
    return tuple(out)


def prime_generator(p: int, n: int, q: int, which: int = 0, field: str = REAL) -> CycElt:
    """Generator of the ``which``-th prime over q of Z[xi + 1/xi] (real) or Z[xi] (full)."""
    require_supported(p)
    if q not in ZInv(n).primes:
        raise UsageError(f"{q} does not divide n = {n}")
    gens = _full_prime_gens(p, q) if field == FULL else _real_prime_gens(p, q)
    if not 0 <= which < len(gens):
        raise UsageError(f"there are {len(gens)} primes over {q} in the {field} ring")
    return gens[which]


# -- bases -------------------------------------------------------------------------

@dataclass(frozen=True)
class UnitGen:
    tag: str  # "CycUnit" or "PrimeGen"
    value: CycElt
    a: int | None = None
    q: int | None = None
    index: int | None = None
    kind: str | None = None
    ramification: int = 1

    def label(self) -> str:
        if self.tag == "CycUnit":
            return f"eps_{self.a}"
        return f"g[{self.q}.{self.index}]"

    def to_json(self) -> dict:
        out = {"tag": self.tag, "label": self.label(), "value": [str(c) for c in self.value.coords]}
        if self.tag == "PrimeGen":
            out.update(q=self.q, index=self.index, kind=self.kind)
        return out


@dataclass(frozen=True)
class Decomposition:
    torsion: int
    exponents: tuple[int, ...]


class SUnitBasis:
    """Torsion generator plus free generators of an S-unit group."""

    def __init__(self, p: int, n: int, field_: str):
        self.p, self.n, self.field = p, ZInv(n).n, field_
        self.ring = ZInv(n)
        m = (p - 1) // 2
        if field_ == FULL:
            self.torsion = -CycElt.xi(p)
            self.torsion_order = 2 * p
        else:
            self.torsion = CycElt.from_int(p, -1)
            self.torsion_order = 2
        free = [UnitGen("CycUnit", cyclotomic_unit(p, a), a=a) for a in range(2, m + 1)]
        summary = split_summary(p, n)
        order = {INERT: 0, SPLIT: 1, RAMIFIED: 2}
        for rec in sorted(summary.records, key=lambda r: (order[r.kind], r.q)):
            gens = _full_prime_gens(p, rec.q) if field_ == FULL else _real_prime_gens(p, rec.q)
            if rec.kind == RAMIFIED:
                e = p - 1 if field_ == FULL else m
            else:
                e = 1
            for i, g in enumerate(gens):
                free.append(UnitGen("PrimeGen", g, q=rec.q, index=i, kind=rec.kind, ramification=e))
        self.free: tuple[UnitGen, ...] = tuple(free)
        self.summary = summary
        self._unit_idx = [i for i, g in enumerate(free) if g.tag == "CycUnit"]
        self._prime_idx = [i for i, g in enumerate(free) if g.tag == "PrimeGen"]
        self._inverses = {i: g.value.inverse() for i, g in enumerate(free)}
        self._log_tables: dict[int, mpmath.matrix] = {}
        self._torsion_powers = {}
        t = CycElt.from_int(p, 1)
        for k in range(self.torsion_order):
            self._torsion_powers[t] = k
            t = t * self.torsion

    @property
    def rank(self) -> int:
        return len(self.free)

    def __repr__(self) -> str:
        return f"SUnitBasis(p={self.p}, n={self.n}, field={self.field!r}, rank={self.rank})"

    def element(self, torsion: int, exponents: Sequence[int]) -> CycElt:
        acc = self.torsion ** (torsion % self.torsion_order)
        for i, e in enumerate(exponents):
            if e > 0:
                acc = acc * self.free[i].value ** e
            elif e < 0:
                acc = acc * self._inverses[i] ** -e
        return acc

    def _valuation(self, x0: CycElt, i: int) -> int:
        ginv = self._inverses[i]
        v = 0
        while True:
            y = x0 * ginv
            if not y.is_integral():
                return v
            x0 = y
            v += 1

    def _log_table(self, bits: int):
        if bits not in self._log_tables:
            m = (self.p - 1) // 2
            with mpmath.workprec(bits):
                rows = []
                for k in range(1, m + 1):
                    rows.append([mpmath.log(abs(self.free[i].value.embed(k))) for i in self._unit_idx])
                self._log_tables[bits] = mpmath.matrix(rows)
        return self._log_tables[bits]

    def _unit_exponents(self, rest: CycElt, bits: int) -> list[int]:
        if not self._unit_idx:
            return []
        m = (self.p - 1) // 2
        with mpmath.workprec(bits):
            a = self._log_table(bits)
            b = mpmath.matrix([mpmath.log(abs(rest.embed(k))) for k in range(1, m + 1)])
            x = mpmath.lu_solve(a.T * a, a.T * b)
            return [int(mpmath.nint(x[i])) for i in range(len(self._unit_idx))]

    def decompose(self, u: CycElt) -> Decomposition:
        """Exponents with u = torsion^t * prod(free_i ^ e_i), verified exactly."""
        if u.p != self.p:
            raise UsageError("mismatched primes")
        if not is_unit(u, self.n):
            raise DomainError(f"{u} is not a unit of Z[1/{self.n}][xi]")
        if self.field == REAL and not u.is_real():
            raise DomainError(f"{u} is not real")
        exps = [0] * self.rank
        d = u.den
        x0 = u * d
        rest = u
        for i in self._prime_idx:
            g = self.free[i]
            v = self._valuation(x0, i) - g.ramification * (valuation(d, g.q) if d % g.q == 0 else 0)
            exps[i] = v
            if v:
                rest = rest * (self._inverses[i] ** v if v > 0 else g.value ** (-v))
        if not rest.is_integral() or abs(rest.norm()) != 1:
            raise VerificationError(f"S-part of {u} not captured by the prime generators")
        for bits in _precision_ladder():
            ue = self._unit_exponents(rest, bits)
            r = rest
            for i, e in zip(self._unit_idx, ue):
                if e:
                    r = r * (self._inverses[i] ** e if e > 0 else self.free[i].value ** -e)
            t = self._torsion_powers.get(r)
            if t is not None:
                for i, e in zip(self._unit_idx, ue):
                    exps[i] = e
                dec = Decomposition(t, tuple(exps))
                if self.element(dec.torsion, dec.exponents) != u:
                    raise VerificationError(f"reconstruction of {u} failed")
                return dec
        raise VerificationError(f"unit part of {u} is not generated by the cyclotomic units")

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "field": self.field,
            "torsion_generator": [str(c) for c in self.torsion.coords],
            "torsion_order": self.torsion_order,
            "free_generators": [g.to_json() for g in self.free],
        }


@lru_cache(maxsize=None)
def _basis(p: int, n: int, field_: str) -> SUnitBasis:
    return SUnitBasis(p, n, field_)


def s_unit_basis(p: int, n: int, field: str = FULL) -> SUnitBasis:
    require_supported(p)
    if field not in (REAL, FULL):
        raise UsageError(f"field must be 'real' or 'full', got {field!r}")
    return _basis(p, ZInv(n).n, field)


def decompose_unit(u: CycElt, basis: SUnitBasis) -> Decomposition:
    return basis.decompose(u)


# -- norm map ------------------------------------------------------------------------

class NormQuotient:
    """The GF(2)-space  real S-units / norms of full S-units."""

    def __init__(self, p: int, n: int):
        self.p, self.n = p, ZInv(n).n
        self.real = s_unit_basis(p, n, REAL)
        self.full = s_unit_basis(p, n, FULL)
        self.dim = 1 + self.real.rank
        self.norm_decompositions = [self.real.decompose(g.value.norm_real()) for g in self.full.free]
        self.image = GF2Span(self.dim, [self._bits(d) for d in self.norm_decompositions])
        self.coords = self.image.complement_coords()

    @staticmethod
    def _bits(d: Decomposition) -> list[int]:
        return [d.torsion & 1] + [e & 1 for e in d.exponents]

    @property
    def quotient_dim(self) -> int:
        return len(self.coords)

    def labels(self) -> list[str]:
        names = ["-1"] + [g.label() for g in self.real.free]
        return [names[i] for i in self.coords]

    def vector(self, u: CycElt) -> tuple[int, ...]:
        if not u.is_real():
            raise DomainError(f"{u} is not real")
        reduced = self.image.reduce(self._bits(self.real.decompose(u)))
        return tuple(reduced[i] for i in self.coords)

    def lift(self, bits: Sequence[int]) -> CycElt:
        if len(bits) != self.quotient_dim:
            raise UsageError(f"class vector must have {self.quotient_dim} bits")
        u = CycElt.from_int(self.p, 1)
        for b, c in zip(bits, self.coords):
            if b & 1:
                u = u * (self.real.torsion if c == 0 else self.real.free[c - 1].value)
        return u


@lru_cache(maxsize=None)
def _norm_quotient(p: int, n: int) -> NormQuotient:
    return NormQuotient(p, n)


def norm_quotient(p: int, n: int) -> NormQuotient:
    require_supported(p)
    return _norm_quotient(p, ZInv(n).n)


@dataclass(frozen=True)
class NormIndex:
    formula_value: int
    constructive_value: int

    @property
    def agree(self) -> bool:
        return self.formula_value == self.constructive_value


def norm_index(p: int, n: int) -> NormIndex:
    require_supported(p)
    tau = split_summary(p, n).tau
    formula = 2 ** ((p - 1) // 2 + tau)
    return NormIndex(formula, 2 ** norm_quotient(p, n).quotient_dim)


def quotient_vector(u: CycElt, p: int, n: int) -> tuple[int, ...]:
    return norm_quotient(p, n).vector(u)


@dataclass(frozen=True)
class NormKernel:
    torsion_order: int
    rank: int
    generators: tuple[CycElt, ...]
    exponent_basis: tuple[tuple[int, ...], ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "torsion_order": self.torsion_order,
            "rank": self.rank,
            "generators": [[str(c) for c in g.coords] for g in self.generators],
        }


def _torsion_order_by_enumeration(p: int) -> int:
    one = CycElt.from_int(p, 1)
    z = -CycElt.xi(p)
    seen, t = set(), one
    while True:
        if t * t.conj() != 1:
            raise VerificationError(f"root of unity {t} has nontrivial norm")
        seen.add(t)
        t = t * z
        if t == one:
            return len(seen)


@lru_cache(maxsize=None)
def _norm_kernel(p: int, n: int) -> NormKernel:
    nq = norm_quotient(p, n)
    full = nq.full
    rows = [list(d.exponents) for d in nq.norm_decompositions]
    kernel = left_kernel_int(rows) if rows and rows[0] else [[int(i == j) for j in range(full.rank)] for i in range(full.rank)]
    rank = len(kernel)

    # ratios g / conj(g) over split primes; check they span the computed kernel
    ratio_vecs, ratios = [], []
    for i, g in enumerate(full.free):
        if g.kind == SPLIT and g.index % 2 == 0:
            j = i + 1
            assert full.free[j].value == g.value.conj()
            vec = [0] * full.rank
            vec[i], vec[j] = 1, -1
            ratio_vecs.append(vec)
            ratios.append(g.value / full.free[j].value)
    if hnf_int(ratio_vecs) == hnf_int(kernel):
        gens = ratios
    else:
        gens = [full.element(0, v) for v in kernel]
    for w in gens:
        if w * w.conj() != 1:
            raise VerificationError(f"kernel generator {w} has norm != 1")
    return NormKernel(_torsion_order_by_enumeration(p), rank, tuple(gens), tuple(tuple(v) for v in kernel))


def norm_kernel(p: int, n: int) -> NormKernel:
    require_supported(p)
    return _norm_kernel(p, ZInv(n).n)
