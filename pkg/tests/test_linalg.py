from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sptorsion.errors import DomainError, UsageError
from sptorsion.integers import ZInv, ext_gcd, prime_factors, radical
from sptorsion.linalg import (
    GF2Span,
    bezout_local,
    charpoly,
    det,
    hnf_int,
    hnf_local,
    left_kernel_int,
    lll,
    mat_inverse,
    mat_mul,
)


def test_radical_semantics():
    assert ZInv(12) == ZInv(-6) == ZInv(18)
    assert ZInv(1).primes == () and ZInv(-1).n == 1
    assert prime_factors(360) == (2, 3, 5) and radical(360) == 30
    with pytest.raises(UsageError):
        ZInv(0)


def test_zinv_membership():
    r = ZInv(6)
    assert r.contains(Fraction(5, 12)) and not r.contains(Fraction(1, 5))
    assert r.is_unit(Fraction(-8, 9)) and not r.is_unit(10)
    assert r.split(360) == (72, 5)
    assert r.free_part(Fraction(20, 3)) == 5


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_ext_gcd(a, b):
    g, x, y = ext_gcd(a, b)
    assert a * x + b * y == g >= 0


def test_hnf_local_canonical():
    r = ZInv(2)
    assert hnf_local([[2, 4], [0, 6]], r) == [(1, 2), (0, 3)]
    # same module, different generators
    a = hnf_local([[1, 2], [0, 3]], r)
    b = hnf_local([[Fraction(1, 2), 1], [1, 5], [0, 12]], r)
    assert a == b


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=3, max_size=5), st.sampled_from([1, 2, 6, 15]))
def test_hnf_local_invariant_under_unimodular_change(rows, n):
    r = ZInv(n)
    h = hnf_local(rows, r)
    # adding multiples of one row to another and scaling by n-units keeps the span
    moved = [list(x) for x in rows]
    moved[0] = [a + 3 * b for a, b in zip(moved[0], moved[-1])]
    if n > 1:
        moved[-1] = [Fraction(a, n) for a in moved[-1]]
    assert hnf_local(moved, r) == h


def test_hnf_int_and_kernel():
    a = [[1, 2], [2, 4], [3, 7]]
    k = left_kernel_int(a)
    assert len(k) == 1
    assert mat_mul(k, a) == [[0, 0]]
    assert hnf_int([[2, 0], [0, 3], [4, 3]]) == [[2, 0], [0, 3]]


def test_bezout_local():
    r = ZInv(3)
    c = bezout_local([Fraction(9), Fraction(4)], r)
    assert c[0] * 9 + c[1] * 4 == 1
    c = bezout_local([Fraction(3), Fraction(9)], r)  # 3 is a unit of Z[1/3]
    assert c[0] * 3 + c[1] * 9 == 1
    with pytest.raises(DomainError):
        bezout_local([Fraction(5), Fraction(10)], r)


def test_det_inverse_charpoly():
    m = [[0, -1], [1, -1]]
    assert det(m) == 1
    assert mat_mul(m, mat_inverse(m)) == [[1, 0], [0, 1]]
    assert charpoly(m) == [1, 1, 1]
    with pytest.raises(DomainError):
        mat_inverse([[1, 2], [2, 4]])


def test_gf2_span():
    s = GF2Span(4, [[1, 1, 0, 0], [0, 1, 1, 0], [1, 0, 1, 0]])
    assert s.rank == 2
    assert s.complement_coords() == [0, 3]
    assert s.reduce([0, 0, 1, 0]) == [1, 0, 0, 0]


def test_lll_reduces_and_keeps_lattice():
    basis = [[1, 0, 0], [0, 1, 0], [1000, 999, 1]]
    dot = lambda u, v: sum(a * b for a, b in zip(u, v))
    red = lll(basis, dot)
    assert hnf_int(red) == hnf_int(basis)
    assert max(dot(v, v) for v in red) <= 2
