"""Decomposition of rational primes in Z[xi_p] and its real subring."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import UsageError
from .integers import is_prime, prime_factors, require_odd_prime

INERT, SPLIT, RAMIFIED = "inert", "split", "ramified"


def residue_degree(q: int, p: int) -> int:
    """Multiplicative order of q modulo p."""
    require_odd_prime(p)
    if not is_prime(q):
        raise UsageError(f"{q} is not prime")
    if q == p:
        raise UsageError(f"q = p = {p} ramifies; use classify_prime")
    f, x = 1, q % p
    while x != 1:
        x = x * q % p
        f += 1
    return f


@dataclass(frozen=True)
class SplitRecord:
    q: int
    f: int  # residue degree in Q(xi); p - 1 for the ramified prime by convention
    kind: str
    count: int  # primes of the real subring over q

    @property
    def full_count(self) -> int:
        """Primes of Z[xi] over q."""
        return 2 * self.count if self.kind == SPLIT else self.count

    @property
    def real_degree(self) -> int:
        """Residue degree of each real prime over q."""
        if self.kind == INERT:
            return self.f // 2
        if self.kind == SPLIT:
            return self.f
        return 1

    def to_json(self) -> dict:
        return {"q": self.q, "f": self.f, "kind": self.kind, "count": self.count}


def classify_prime(q: int, p: int) -> SplitRecord:
    require_odd_prime(p)
    if not is_prime(q):
        raise UsageError(f"{q} is not prime")
    if q == p:
        return SplitRecord(q, p - 1, RAMIFIED, 1)
    f = residue_degree(q, p)
    if f % 2 == 0:
        return SplitRecord(q, f, INERT, (p - 1) // f)
    return SplitRecord(q, f, SPLIT, (p - 1) // (2 * f))


@dataclass(frozen=True)
class SplitSummary:
    p: int
    n: int
    records: tuple[SplitRecord, ...] = field(default_factory=tuple)

    @property
    def tau(self) -> int:
        return sum(r.count for r in self.records if r.kind == INERT)

    @property
    def sigma(self) -> int:
        return sum(r.count for r in self.records if r.kind == SPLIT)

    @property
    def p_divides_n(self) -> bool:
        return any(r.kind == RAMIFIED for r in self.records)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "tau": self.tau,
            "sigma": self.sigma,
            "p_divides_n": self.p_divides_n,
            "records": [r.to_json() for r in self.records],
        }


def split_summary(p: int, n: int) -> SplitSummary:
    require_odd_prime(p)
    if n == 0:
        raise UsageError("n must be nonzero")
    return SplitSummary(p, n, tuple(classify_prime(q, p) for q in prime_factors(n)))
