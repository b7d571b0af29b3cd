"""Order-p symplectic matrices over Z[1/n] and their pair-class invariants."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Sequence

from .cyclo import CycElt, different_generator
from .errors import DomainError, UsageError, VerificationError
from .ideals import IdealBasis
from .integers import ZInv, require_odd_prime
from .linalg import (
    Matrix,
    as_fractions,
    bezout_local,
    charpoly,
    det,
    hnf_local,
    identity,
    mat_inverse,
    mat_mul,
    mat_pow,
    transpose,
)
from .pairs import PairClass, class_ops, make_pair, unit_ideal
from .splitting import split_summary
from .sunits import norm_kernel, require_supported


def standard_j(size: int) -> Matrix:
    """[[0, I], [-I, 0]]."""
    if size % 2:
        raise UsageError("symplectic forms need even size")
    m = size // 2
    j = [[Fraction(0)] * size for _ in range(size)]
    for i in range(m):
        j[i][m + i] = Fraction(1)
        j[m + i][i] = Fraction(-1)
    return j


@dataclass(frozen=True)
class SympMatrix:
    p: int
    n: int
    entries: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def make(cls, p: int, n: int, rows) -> SympMatrix:
        require_odd_prime(p)
        ring = ZInv(n)
        rows = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if len(rows) != p - 1 or any(len(r) != p - 1 for r in rows):
            raise UsageError(f"matrix must be {p - 1} x {p - 1}")
        for r in rows:
            for x in r:
                if not ring.contains(x):
                    raise DomainError(f"entry {x} is not in Z[1/{ring.n}]")
        return cls(p, ring.n, rows)

    @property
    def rows(self) -> Matrix:
        return [list(r) for r in self.entries]

    def __matmul__(self, other: SympMatrix) -> SympMatrix:
        return SympMatrix(self.p, self.n, _freeze(mat_mul(self.rows, other.rows)))

    def __pow__(self, e: int) -> SympMatrix:
        if e < 0:
            return SympMatrix(self.p, self.n, _freeze(mat_pow(mat_inverse(self.rows), -e)))
        return SympMatrix(self.p, self.n, _freeze(mat_pow(self.rows, e)))

    def inverse(self) -> SympMatrix:
        return self ** -1

    def is_identity(self) -> bool:
        return self.rows == identity(len(self.entries))

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "entries": [[f"{x.numerator}/{x.denominator}" for x in r] for r in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> SympMatrix:
        try:
            p, n, entries = int(data["p"]), int(data["n"]), data["entries"]
            rows = [[Fraction(str(x)) for x in r] for r in entries]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"malformed matrix file: {exc}") from None
        return cls.make(p, n, rows)


def _freeze(rows) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in r) for r in rows)


def write_matrix(m: SympMatrix, path) -> None:
    Path(path).write_text(json.dumps(m.to_json(), indent=1) + "\n")


def read_matrix(path) -> SympMatrix:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not JSON: {exc}") from None
    return SympMatrix.from_json(data)


# -- trace form -------------------------------------------------------------------

@dataclass(frozen=True)
class GramForm:
    p: int
    n: int
    basis: tuple[CycElt, ...]
    a: CycElt
    gram: tuple[tuple[Fraction, ...], ...]


def trace_form(basis: Sequence[CycElt], a: CycElt, n: int) -> GramForm:
    """gram[r][s] = tr(alpha_r * conj(alpha_s) / (a D)), checked alternating and unimodular."""
    p = a.p
    ring = ZInv(n)
    scale = (a * different_generator(p)).inverse()
    conjs = [b.conj() for b in basis]
    g = [[(x * y * scale).trace() for y in conjs] for x in basis]
    for r in range(len(g)):
        for s in range(len(g)):
            if g[r][s] != -g[s][r]:
                raise DomainError("trace form is not alternating")
            if not ring.contains(g[r][s]):
                raise DomainError("pair invalid: trace form leaves Z[1/n]")
    if not ring.is_unit(det(g)):
        raise DomainError("pair invalid: trace form is not unimodular")
    return GramForm(p, ring.n, tuple(basis), a, _freeze(g))


def gram_form(c: PairClass) -> GramForm:
    """Trace form of the class on the power basis of the full ring, with a = u."""
    return trace_form([CycElt.xi(c.p, i) for i in range(c.p - 1)], c.u, c.n)


def _bilinear(g: Matrix, x, y) -> Fraction:
    return sum((xi * gij * yj for xi, row in zip(x, g) for gij, yj in zip(row, y) if xi and gij and yj), Fraction(0))


def symplectic_reduce(gram, n: int) -> Matrix:
    """S over Z[1/n] with S^T G S = J.

    Takes the first remaining basis vector e, finds f with G(e, f) = 1 by a
    Bezout combination, splits off the hyperbolic plane <e, f> and recurses on
    the Hermite basis of the orthogonal projections.
    """
    g = as_fractions(gram)
    size = len(g)
    ring = ZInv(n)
    if any(g[i][j] != -g[j][i] for i in range(size) for j in range(size)):
        raise DomainError("form is not alternating")
    if size % 2 or not ring.is_unit(det(g)):
        raise DomainError("form is not unimodular over Z[1/n]")
    vecs = [list(r) for r in identity(size)]
    es, fs = [], []
    while vecs:
        e, rest = vecs[0], vecs[1:]
        vals = [_bilinear(g, e, v) for v in rest]
        try:
            coeffs = bezout_local(vals, ring)
        except DomainError:
            raise DomainError("form is not unimodular over Z[1/n]") from None
        f = [sum((c * v[i] for c, v in zip(coeffs, rest)), Fraction(0)) for i in range(size)]
        es.append(e)
        fs.append(f)
        proj = []
        for x in vecs:
            ge, gf = _bilinear(g, x, e), _bilinear(g, x, f)
            proj.append([xi + ge * fi - gf * ei for xi, ei, fi in zip(x, e, f)])
        vecs = [list(r) for r in hnf_local(proj, ring)]
    s = transpose(es + fs)
    if mat_mul(mat_mul(transpose(s), g), s) != standard_j(size):
        raise VerificationError("symplectic reduction failed its exact check")
    return s


# -- matrices from pairs ---------------------------------------------------------

def _coords(xs: Sequence[CycElt]) -> Matrix:
    return [list(x.coords) for x in xs]


def _mult_matrix(w: CycElt) -> Matrix:
    """Row-vector matrix of multiplication by w on the power basis."""
    return _coords([w * CycElt.xi(w.p, i) for i in range(w.p - 1)])


@dataclass(frozen=True)
class Construction:
    matrix: SympMatrix
    basis: tuple[CycElt, ...]  # the symplectic basis beta
    a: CycElt


def construct_from_ideal(ideal: IdealBasis, a: CycElt) -> Construction:
    p, n = ideal.p, ideal.n
    form = trace_form(ideal.elements(), a, n)
    s = symplectic_reduce(form.gram, n)
    b_alpha = _coords(form.basis)
    b_beta = mat_mul(transpose(s), b_alpha)
    beta = tuple(CycElt(p, r) for r in b_beta)
    y = mat_mul(mat_mul(b_beta, _mult_matrix(CycElt.xi(p))), mat_inverse(b_beta))
    m = SympMatrix.make(p, n, y)
    checks = verify(m)
    if not all(checks.values()):
        raise VerificationError(f"constructed matrix failed verification: {checks}\n{m.to_json()}")
    return Construction(m, beta, a)


def matrix_from_pair(c: PairClass) -> SympMatrix:
    return construct_from_ideal(unit_ideal(c.p, c.n), c.u).matrix


def verify(m: SympMatrix) -> dict:
    p, rows = m.p, m.rows
    size = len(rows)
    j = standard_j(size)
    symplectic = mat_mul(mat_mul(transpose(rows), j), rows) == j
    order_p = not m.is_identity() and mat_pow(rows, p) == identity(size)
    cyclotomic = charpoly(rows) == [Fraction(1)] * (p)
    return {"symplectic": symplectic, "order_p": order_p, "char_poly_is_cyclotomic": cyclotomic}


# -- invariants --------------------------------------------------------------------

def eigenvector(m: SympMatrix) -> list[CycElt]:
    """alpha with M alpha = xi alpha, integral, by elimination over Q(xi)."""
    p = m.p
    size = p - 1
    xi = CycElt.xi(p)
    a = [[CycElt.from_int(p, x) - (xi if i == k else 0) for k, x in enumerate(row)] for i, row in enumerate(m.rows)]
    pivots = []
    r = 0
    for col in range(size):
        cand = [i for i in range(r, size) if not a[i][col].is_zero()]
        if not cand:
            continue
        best = min(cand, key=lambda i: (a[i][col].height(), i))
        a[r], a[best] = a[best], a[r]
        inv = a[r][col].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(size):
            if i != r and not a[i][col].is_zero():
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(size) if c not in pivots]
    if len(free) != 1:
        raise DomainError(f"eigenspace for xi has dimension {len(free)}, expected 1")
    fc = free[0]
    alpha = [CycElt.from_int(p, 0)] * size
    alpha[fc] = CycElt.from_int(p, 1)
    for row, pc in zip(a, pivots):
        alpha[pc] = -row[fc]
    den = 1
    for x in alpha:
        den = den * x.den // gcd(den, x.den)
    return [x * den for x in alpha]


def invariant_of_matrix(m: SympMatrix) -> PairClass:
    checks = verify(m)
    if not all(checks.values()):
        raise DomainError(f"matrix is not a symplectic element of order {m.p}: {checks}")
    require_supported(m.p)
    p, n = m.p, m.n
    alpha = eigenvector(m)
    half = (p - 1) // 2
    form = CycElt.from_int(p, 0)
    for i in range(half):
        form = form + alpha[i] * alpha[half + i].conj() - alpha[half + i] * alpha[i].conj()
    a = form / different_generator(p)
    ideal = IdealBasis.from_lattice(p, n, [x.coords for x in alpha])
    return make_pair(ideal, a)


def conjugacy_test(m1: SympMatrix, m2: SympMatrix) -> bool:
    if (m1.p, m1.n) != (m2.p, m2.n):
        raise UsageError("matrices over different rings")
    return class_ops(invariant_of_matrix(m1), invariant_of_matrix(m2), "eq")


# -- centralizer -----------------------------------------------------------------

def centralizer_matrix(c: PairClass, w: CycElt) -> SympMatrix:
    if w.p != c.p or w.norm_real() != 1:
        raise DomainError(f"{w} is not in the kernel of the norm")
    con = construct_from_ideal(unit_ideal(c.p, c.n), c.u)
    b_beta = _coords(con.basis)
    z = mat_mul(mat_mul(b_beta, _mult_matrix(w)), mat_inverse(b_beta))
    try:
        zm = SympMatrix.make(c.p, c.n, z)
    except DomainError:
        raise DomainError(f"{w} is not an S-unit, its matrix leaves Z[1/{c.n}]") from None
    if not verify(zm)["symplectic"]:
        raise VerificationError("centralizer matrix is not symplectic")
    if (zm @ con.matrix).entries != (con.matrix @ zm).entries:
        raise VerificationError("centralizer matrix does not commute")
    return zm


def centralizer_structure(p: int, n: int) -> dict:
    require_supported(p)
    summary = split_summary(p, n)
    nk = norm_kernel(p, n)
    rank_formula = summary.sigma + (1 if summary.p_divides_n else 0)
    return {
        "torsion": nk.torsion_order,
        "rank_first_principles": nk.rank,
        "rank_formula": rank_formula,
        "agree": nk.rank == rank_formula,
    }
