from fractions import Fraction

import pytest

from sptorsion.cyclo import CycElt
from sptorsion.errors import DomainError, UsageError
from sptorsion.ideals import IdealBasis
from sptorsion.linalg import det, identity, mat_mul, transpose
from sptorsion.pairs import class_from_vector, enumerate_classes, galois_twist, make_pair
from sptorsion.sunits import norm_kernel
from sptorsion.symplectic import (
    SympMatrix,
    centralizer_matrix,
    centralizer_structure,
    conjugacy_test,
    construct_from_ideal,
    gram_form,
    invariant_of_matrix,
    matrix_from_pair,
    read_matrix,
    standard_j,
    symplectic_reduce,
    trace_form,
    verify,
    write_matrix,
)

M3 = SympMatrix.make(3, 1, [[0, -1], [1, -1]])


def test_gram_examples():
    g = gram_form(class_from_vector(3, 1, (0,)))
    assert g.gram == ((0, -1), (1, 0))
    g5 = gram_form(class_from_vector(5, 1, (0, 0)))
    assert all(g5.gram[i][i] == 0 for i in range(4))
    assert abs(det(g5.gram)) == 1
    for c in enumerate_classes(7, 6):
        gr = gram_form(c).gram
        assert all(gr[r][s] == -gr[s][r] for r in range(6) for s in range(6))


def test_gram_rejects_invalid_pair():
    basis = [CycElt.xi(3, i) for i in range(2)]
    with pytest.raises(DomainError):
        trace_form(basis, CycElt.from_int(3, 2), 1)


def test_symplectic_reduce_examples():
    j4 = standard_j(4)
    assert symplectic_reduce(j4, 1) == identity(4)
    minus = [[-x for x in r] for r in j4]
    s = symplectic_reduce(minus, 1)
    assert mat_mul(mat_mul(transpose(s), minus), s) == j4
    g = [[0, -1], [1, 0]]
    s = symplectic_reduce(g, 1)
    assert mat_mul(mat_mul(transpose(s), g), s) == standard_j(2)
    with pytest.raises(DomainError):
        symplectic_reduce([[0, 2], [-2, 0]], 1)
    assert symplectic_reduce([[0, 2], [-2, 0]], 2) is not None


def test_verify_examples():
    assert verify(SympMatrix.make(3, 1, identity(2))) == {
        "symplectic": True, "order_p": False, "char_poly_is_cyclotomic": False}
    assert all(verify(M3).values())
    assert verify(SympMatrix.make(3, 1, [[1, 1], [0, 1]])) == {
        "symplectic": True, "order_p": False, "char_poly_is_cyclotomic": False}


def test_matrix_entries_must_be_in_ring():
    with pytest.raises(DomainError):
        SympMatrix.make(3, 2, [[Fraction(1, 3), 0], [0, 3]])
    with pytest.raises(UsageError):
        SympMatrix.make(5, 1, identity(2))


def test_identity_class_p3():
    m = matrix_from_pair(class_from_vector(3, 1, (0,)))
    rows = m.rows
    assert rows[0][0] + rows[1][1] == -1 and det(rows) == 1
    assert conjugacy_test(m, M3)


def test_invariant_examples():
    assert invariant_of_matrix(M3).vector == (0,)
    assert invariant_of_matrix(M3 @ M3).vector == (1,)
    assert invariant_of_matrix(M3 @ M3) == galois_twist(invariant_of_matrix(M3), 2)
    with pytest.raises(DomainError):
        invariant_of_matrix(SympMatrix.make(3, 1, identity(2)))


@pytest.mark.parametrize("p,n", [(3, 2), (5, 1), (5, 10), (7, 14)])
def test_construct_round_trip(p, n):
    for c in enumerate_classes(p, n):
        m = matrix_from_pair(c)
        assert all(verify(m).values())
        assert invariant_of_matrix(m) == c


def test_classes_pairwise_non_conjugate():
    ms = [matrix_from_pair(c) for c in enumerate_classes(3, 2)]
    for i, a in enumerate(ms):
        for b in ms[i + 1:]:
            assert not conjugacy_test(a, b)


def _random_symplectic(size, rng, steps=2):
    m = size // 2
    q = identity(size)
    for _ in range(steps):
        kind = rng.randrange(3)
        t = identity(size)
        i, j = rng.randrange(m), rng.randrange(m)
        s = rng.choice([-1, 1])
        if kind == 0:  # [[I, S], [0, I]] with S symmetric
            t[i][m + j] += s
            if i != j:
                t[j][m + i] += s
        elif kind == 1:  # [[I, 0], [S, I]]
            t[m + i][j] += s
            if i != j:
                t[m + j][i] += s
        elif i != j:  # [[A, 0], [0, A^-T]] with A an elementary matrix
            t[i][j] += s
            t[m + j][m + i] -= s
        q = mat_mul(q, t)
    return q


def test_conjugacy_invariance_random(rng):
    for p, n in [(3, 1), (5, 1), (7, 2)]:
        size = p - 1
        for c in enumerate_classes(p, n).classes[:3]:
            m = matrix_from_pair(c)
            tries = 0
            while tries < 4:
                q = _random_symplectic(size, rng)
                if max(abs(x) for r in q for x in r) > 3:
                    continue
                tries += 1
                qm = SympMatrix.make(p, n, q)
                assert verify(qm)["symplectic"]
                conj = qm.inverse() @ m @ qm
                assert conjugacy_test(m, conj)


def test_conjugacy_m_vs_square():
    assert not conjugacy_test(M3, M3 @ M3)
    # over Z[1/7] the prime 7 splits, tau = 0, and -1 is still not a norm
    m7 = matrix_from_pair(class_from_vector(3, 7, (0,)))
    c1, c2 = invariant_of_matrix(m7), invariant_of_matrix(m7 @ m7)
    assert c1 != c2
    assert not conjugacy_test(m7, m7 @ m7)


def test_construct_from_general_ideal():
    x = CycElt(7, [1, 2, 0, 1, 0, 0])
    ideal = IdealBasis.principal(x, 1)
    c = class_from_vector(7, 1, (1, 0, 1))
    con = construct_from_ideal(ideal, x.norm_real() * c.u)
    assert invariant_of_matrix(con.matrix) == c == make_pair(ideal, x.norm_real() * c.u)


def test_power_twist_compatibility():
    for p, n in [(5, 5), (7, 1)]:
        for c in enumerate_classes(p, n).classes[:4]:
            m = matrix_from_pair(c)
            for l in range(1, p):
                assert invariant_of_matrix(m ** l) == galois_twist(c, pow(l, -1, p))


def test_centralizer_examples():
    c = class_from_vector(3, 1, (0,))
    assert centralizer_matrix(c, CycElt.from_int(3, 1)).is_identity()
    z = centralizer_matrix(c, -CycElt.xi(3))
    assert (z ** 6).is_identity() and not (z ** 3).is_identity() and not (z ** 2).is_identity()
    c7 = class_from_vector(3, 7, (1,))
    w = (3 + CycElt.xi(3)) / (3 + CycElt.xi(3, 2))
    z = centralizer_matrix(c7, w)
    m = matrix_from_pair(c7)
    assert (z @ m).entries == (m @ z).entries
    power = z
    for _ in range(24):
        assert not power.is_identity()
        power = power @ z
    with pytest.raises(DomainError):
        centralizer_matrix(c7, 3 + CycElt.xi(3))


def test_centralizer_homomorphism():
    for p, n in [(7, 29), (5, 11)]:
        ws = [-CycElt.xi(p)] + list(norm_kernel(p, n).generators)
        c = enumerate_classes(p, n).classes[1]
        for a in ws:
            for b in ws:
                assert centralizer_matrix(c, a) @ centralizer_matrix(c, b) == centralizer_matrix(c, a * b)


def test_centralizer_structure_examples():
    assert centralizer_structure(3, 1) == {"torsion": 6, "rank_first_principles": 0, "rank_formula": 0, "agree": True}
    assert centralizer_structure(3, 7) == {"torsion": 6, "rank_first_principles": 1, "rank_formula": 1, "agree": True}
    assert centralizer_structure(3, 3) == {"torsion": 6, "rank_first_principles": 0, "rank_formula": 1, "agree": False}


def test_matrix_file_round_trip(tmp_path):
    m = matrix_from_pair(class_from_vector(5, 6, (1, 0, 1, 1)))
    path = tmp_path / "m.json"
    write_matrix(m, path)
    assert read_matrix(path) == m
    bad = tmp_path / "bad.json"
    bad.write_text('{"p": 3}')
    with pytest.raises(UsageError):
        read_matrix(bad)
