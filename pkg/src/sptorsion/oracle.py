"""Brute-force ground truth for p = 3, where Sp(2) = SL(2).

Everything here is exhaustive search over entries of bounded height, kept
independent of the number theory in the other modules except where a
comparison is the point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import UsageError
from .integers import ZInv
from .linalg import mat_mul
from .pairs import count_classes
from .symplectic import SympMatrix, invariant_of_matrix

P = 3


def _check_bound(height: int) -> int:
    if not isinstance(height, int) or height < 1:
        raise UsageError(f"search height must be a positive integer, got {height!r}")
    return height


@lru_cache(maxsize=None)
def bounded_values(n: int, height: int) -> tuple[Fraction, ...]:
    """Elements num/den of Z[1/n] in lowest terms with |num| <= height, den <= height, den | n^3."""
    ring = ZInv(n)
    cube = ring.n ** 3
    dens = [d for d in range(1, height + 1) if cube % d == 0]
    vals = {Fraction(a, d) for d in dens for a in range(-height, height + 1)}
    vals = {v for v in vals if abs(v.numerator) <= height and v.denominator in dens}
    return tuple(sorted(vals))


def enumerate_order_p_sl2(n: int, height: int) -> list[SympMatrix]:
    """All [[a, b], [c, -1 - a]] of determinant 1 with entries in the bounded value set."""
    _check_bound(height)
    vals = bounded_values(n, height)
    vset = set(vals)
    out = []
    for a in vals:
        d = -1 - a
        if d not in vset:
            continue
        bc = a * d - 1  # det = ad - bc = 1
        for b in vals:
            if b == 0:
                continue
            c = bc / b
            if c in vset:
                out.append(SympMatrix.make(P, n, [[a, b], [c, d]]))
    return out


def _commutant_basis(m1: SympMatrix, m2: SympMatrix) -> list[list[Fraction]]:
    """Q (flattened q11 q12 q21 q22) with Q M1 = M2 Q, as a rational null-space basis."""
    (a, b), (c, d) = m1.rows
    (e, f), (g, h) = m2.rows
    # entries of Q M1 - M2 Q as linear forms in (q11, q12, q21, q22)
    eqs = [
        [a - e, c, -f, 0],
        [b, d - e, 0, -f],
        [-g, 0, a - h, c],
        [0, -g, b, d - h],
    ]
    # row reduce
    rows = [[Fraction(x) for x in r] for r in eqs]
    pivots, r = [], 0
    for col in range(4):
        piv = next((i for i in range(r, 4) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][col]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(4):
            if i != r and rows[i][col] != 0:
                fct = rows[i][col]
                rows[i] = [x - fct * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(4) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * 4
        v[fc] = Fraction(1)
        for row, pc in zip(rows, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis, free


def conjugator_search(m1: SympMatrix, m2: SympMatrix, height: int) -> SympMatrix | None:
    """Some Q in SL(2, Z[1/n]) with entries of bounded height and Q M1 = M2 Q, else None."""
    _check_bound(height)
    if (m1.p, m1.n) != (m2.p, m2.n) or m1.p != P:
        raise UsageError("conjugator search needs two 2x2 matrices over the same ring")
    n = m1.n
    vals = bounded_values(n, height)
    vset = set(vals)
    basis, free = _commutant_basis(m1, m2)
    if not basis:
        return None
    # the free coordinates parametrize the solution space; enumerate them over the value set
    for coeffs in product(vals, repeat=len(free)):
        q = [sum((c * v[i] for c, v in zip(coeffs, basis)), Fraction(0)) for i in range(4)]
        if all(x in vset for x in q) and q[0] * q[3] - q[1] * q[2] == 1:
            return SympMatrix(P, n, ((q[0], q[1]), (q[2], q[3])))
    return None


def partition_by_conjugacy(matrices: list[SympMatrix], height: int) -> dict:
    """Greedy conjugator partition, merged with the invariant classes."""
    _check_bound(height)
    if not matrices:
        raise UsageError("nothing to partition")
    n = matrices[0].n
    invariants = [invariant_of_matrix(m) for m in matrices]
    groups: list[list[int]] = []
    witnesses = []
    unsound = 0
    for i, m in enumerate(matrices):
        placed = False
        for grp in groups:
            rep = grp[0]
            q = conjugator_search(matrices[rep], m, height)
            if q is not None:
                if mat_mul(q.rows, matrices[rep].rows) != mat_mul(m.rows, q.rows):
                    raise AssertionError("conjugator check failed")
                if invariants[rep] != invariants[i]:
                    unsound += 1
                grp.append(i)
                if len(witnesses) < 16:
                    witnesses.append({"from": rep, "to": i, "conjugator": q.to_json()["entries"]})
                placed = True
                break
        if not placed:
            groups.append([i])
    classes = sorted({inv.vector for inv in invariants})
    predicted = count_classes(P, n)
    return {
        "n": n,
        "bound": height,
        "matrices_found": len(matrices),
        "conjugator_groups": len(groups),
        "invariant_classes_observed": len(classes),
        "observed_vectors": [list(v) for v in classes],
        "predicted_count": predicted,
        "unsound_witnesses": unsound,
        "witnesses": witnesses,
    }


def oracle_report(n: int, height: int) -> dict:
    return partition_by_conjugacy(enumerate_order_p_sl2(n, height), height)
