"""Classes of pairs [a, a] with a * conj(a) = (a), their group law and Galois twists.

In the supported range every ideal is principal, so a class is pinned down
by the image of a real unit u in the GF(2)-space of real S-units modulo
norms.  Classes therefore live as bit vectors; ideal-level data is kept
when a class was built from an explicit pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .cyclo import CycElt, different_generator, is_unit
from .errors import DomainError, UsageError, VerificationError
from .ideals import IdealBasis
from .integers import ZInv, require_odd_prime
from .splitting import split_summary
from .sunits import SUPPORTED_PRIMES, norm_quotient, require_supported


@dataclass(frozen=True, eq=False)
class PairClass:
    p: int
    n: int
    vector: tuple[int, ...]
    ideal: IdealBasis | None = field(default=None, repr=False)
    a: CycElt | None = field(default=None, repr=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PairClass):
            return NotImplemented
        return (self.p, self.n, self.vector) == (other.p, other.n, other.vector)

    def __hash__(self) -> int:
        return hash((self.p, self.n, self.vector))

    @property
    def u(self) -> CycElt:
        """Canonical real unit representing the class as [R, u]."""
        return norm_quotient(self.p, self.n).lift(self.vector)

    def bits(self) -> str:
        return "".join(str(b) for b in self.vector)

    def to_json(self) -> dict:
        return {"vector": list(self.vector), "representative_u": [str(c) for c in self.u.coords]}


def unit_ideal(p: int, n: int) -> IdealBasis:
    return IdealBasis.principal(CycElt.from_int(p, 1), n)


def class_from_vector(p: int, n: int, bits: Sequence[int]) -> PairClass:
    require_supported(p)
    n = ZInv(n).n
    nq = norm_quotient(p, n)
    bits = tuple(int(b) for b in bits)
    if len(bits) != nq.quotient_dim or any(b not in (0, 1) for b in bits):
        raise UsageError(f"class vector must be {nq.quotient_dim} bits, got {bits}")
    return PairClass(p, n, bits)


def parse_bits(text: str) -> tuple[int, ...]:
    text = text.replace(",", "").replace(" ", "")
    if not text or set(text) - {"0", "1"}:
        raise UsageError(f"class selector must be a string of 0/1, got {text!r}")
    return tuple(int(c) for c in text)


def class_of_unit(u: CycElt, n: int) -> PairClass:
    """The class [R, u] of a real unit u."""
    p = u.p
    require_supported(p)
    if not u.is_real():
        raise DomainError(f"{u} is not real")
    if not is_unit(u, n):
        raise DomainError(f"{u} is not a unit of Z[1/{ZInv(n).n}][xi]")
    n = ZInv(n).n
    return PairClass(p, n, norm_quotient(p, n).vector(u), unit_ideal(p, n), u)


def make_pair(ideal: IdealBasis, a: CycElt) -> PairClass:
    p, n = ideal.p, ideal.n
    require_supported(p)
    if a.p != p:
        raise UsageError("mismatched primes")
    if a.is_zero() or not a.is_real():
        raise DomainError(f"a = {a} must be a nonzero real element")
    if ideal.product(ideal.conj()) != IdealBasis.principal(a, n):
        raise DomainError("not a valid pair: the ideal times its conjugate differs from (a)")
    x = ideal.find_generator()
    u = a / x.norm_real()
    if not u.is_real() or not is_unit(u, n):
        raise VerificationError(f"a / (x conj x) = {u} is not a real unit")
    return PairClass(p, n, norm_quotient(p, n).vector(u), ideal, a)


def _check_same(x: PairClass, y: PairClass) -> None:
    if (x.p, x.n) != (y.p, y.n):
        raise UsageError(f"classes live over different rings: {(x.p, x.n)} vs {(y.p, y.n)}")


def class_ops(x: PairClass, y: PairClass | None, op: str):
    if op == "inv":
        # [a, a][conj a, a] = [(a), a^2] is trivial and the quotient has exponent 2
        return PairClass(x.p, x.n, x.vector, x.ideal.conj() if x.ideal else None, x.a)
    if y is None:
        raise UsageError(f"operation {op!r} needs two classes")
    _check_same(x, y)
    if op == "mul":
        return PairClass(x.p, x.n, tuple(a ^ b for a, b in zip(x.vector, y.vector)))
    if op == "eq":
        return x.vector == y.vector
    raise UsageError(f"unknown class operation {op!r}")


def ideal_product(x: PairClass, y: PairClass) -> PairClass:
    """[a, a][b, b] = [ab, ab] computed on ideals, then renormalized."""
    _check_same(x, y)
    ia, a = (x.ideal, x.a) if x.ideal is not None else (unit_ideal(x.p, x.n), x.u)
    ib, b = (y.ideal, y.a) if y.ideal is not None else (unit_ideal(y.p, y.n), y.u)
    return make_pair(ia.product(ib), a * b)


# -- counting and enumeration ------------------------------------------------------

def count_classes(p: int, n: int, class_number: int | None = None) -> int:
    require_odd_prime(p)
    if p in SUPPORTED_PRIMES:
        if class_number not in (None, 1):
            raise UsageError(f"the class number for p = {p} is 1, got {class_number}")
        h = 1
    else:
        if class_number is None:
            raise UsageError(f"p = {p}: the class number is not built in; pass it explicitly")
        if class_number < 1:
            raise UsageError("class number must be positive")
        h = class_number
    tau = split_summary(p, n).tau
    return h * 2 ** ((p - 1) // 2 + tau)


@dataclass(frozen=True)
class ClassSet:
    p: int
    n: int
    classes: tuple[PairClass, ...]
    class_number_C0: int = 1

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)


@lru_cache(maxsize=None)
def _enumerate(p: int, n: int) -> ClassSet:
    dim = norm_quotient(p, n).quotient_dim
    classes = tuple(PairClass(p, n, bits) for bits in itertools.product((0, 1), repeat=dim))
    return ClassSet(p, n, classes)


def enumerate_classes(p: int, n: int) -> ClassSet:
    require_supported(p)
    return _enumerate(p, ZInv(n).n)


# -- Galois twists -------------------------------------------------------------------

@lru_cache(maxsize=None)
def _twist_unit(p: int, k: int) -> CycElt:
    d = different_generator(p)
    return d.galois(k) / d


def twist_unit(u: CycElt, k: int) -> CycElt:
    """u -> D^-1 gamma_k(D u)."""
    return _twist_unit(u.p, k % u.p) * u.galois(k)


@lru_cache(maxsize=None)
def _twist_images(p: int, n: int, k: int) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
    """Vector of D^-1 gamma_k(D) and of gamma_k applied to each quotient basis element."""
    nq = norm_quotient(p, n)
    offset = nq.vector(_twist_unit(p, k))
    images = []
    for i in range(nq.quotient_dim):
        bits = [0] * nq.quotient_dim
        bits[i] = 1
        images.append(nq.vector(nq.lift(bits).galois(k)))
    return offset, tuple(images)


def twist_vector(p: int, n: int, bits: Sequence[int], k: int) -> tuple[int, ...]:
    # the quotient map is a homomorphism and gamma_k is multiplicative, so the twist is affine
    offset, images = _twist_images(p, n, k)
    out = list(offset)
    for b, img in zip(bits, images):
        if b:
            out = [x ^ y for x, y in zip(out, img)]
    return tuple(out)


def twist_vector_direct(p: int, n: int, bits: Sequence[int], k: int) -> tuple[int, ...]:
    """Same as twist_vector, by decomposing the twisted representative itself."""
    nq = norm_quotient(p, n)
    return nq.vector(twist_unit(nq.lift(bits), k))


def galois_twist(c: PairClass, k: int) -> PairClass:
    p = c.p
    if not 1 <= k <= p - 1:
        raise UsageError(f"Galois index must satisfy 1 <= k <= {p - 1}")
    if k == 1:
        return c
    return PairClass(p, c.n, twist_vector(p, c.n, c.vector, k))


@dataclass(frozen=True)
class NCQuotient:
    j: int
    stabilizer: tuple[int, ...]


def nc_quotient(c: PairClass) -> NCQuotient:
    p = c.p
    stab = tuple(k for k in range(1, p) if galois_twist(c, k) == c)
    sset = set(stab)
    if any(a * b % p not in sset for a in stab for b in stab):
        raise VerificationError(f"stabilizer {stab} is not a subgroup")
    j = len(stab)
    if (p - 1) % j:
        raise VerificationError(f"stabilizer order {j} does not divide {p - 1}")
    if c.n % p == 0 and j % 2 == 0:
        raise VerificationError(f"stabilizer order {j} is even although p divides n")
    return NCQuotient(j, stab)


def action_on_centralizer(k: int, w: CycElt) -> CycElt:
    if w.norm_real() != 1:
        raise DomainError(f"{w} is not in the kernel of the norm")
    if not 1 <= k <= w.p - 1:
        raise UsageError(f"Galois index must satisfy 1 <= k <= {w.p - 1}")
    return w.galois(k)


def odd_divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1, 2) if m % d == 0]


def orbit_report(p: int, n: int) -> dict:
    cs = enumerate_classes(p, n)
    rows, seen = [], set()
    for c in cs:
        q = nc_quotient(c)
        seen.add(q.j)
        rows.append({**c.to_json(), "j": q.j, "stabilizer": list(q.stabilizer)})
    return {
        "p": p,
        "n": cs.n,
        "classes": rows,
        "odd_divisors_covered": [d for d in odd_divisors(p - 1) if d in seen],
    }
