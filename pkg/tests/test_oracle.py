from fractions import Fraction

import pytest

from sptorsion.errors import UsageError
from sptorsion.oracle import (
    bounded_values,
    conjugator_search,
    enumerate_order_p_sl2,
    oracle_report,
    partition_by_conjugacy,
)
from sptorsion.pairs import class_from_vector, count_classes
from sptorsion.symplectic import SympMatrix, conjugacy_test, matrix_from_pair

M = SympMatrix.make(3, 1, [[0, -1], [1, -1]])


def test_enumeration_examples():
    found = enumerate_order_p_sl2(1, 2)
    assert M in found
    assert SympMatrix.make(3, 1, [[-1, 1], [-1, 0]]) in found
    assert all(m.rows[0][0] + m.rows[1][1] == -1 for m in enumerate_order_p_sl2(1, 5))
    assert any(any(x.denominator == 2 for r in m.entries for x in r) for m in enumerate_order_p_sl2(2, 4))


def test_value_set():
    assert Fraction(5, 4) in bounded_values(2, 6)
    assert Fraction(1, 3) not in bounded_values(2, 6)
    with pytest.raises(UsageError):
        enumerate_order_p_sl2(1, 0)


def test_conjugator_examples():
    q = conjugator_search(M, M, 1)
    assert q is not None
    assert conjugator_search(M, M @ M, 20) is None
    q0 = SympMatrix.make(3, 1, [[1, 2], [0, 1]])
    target = q0.inverse() @ M @ q0
    w = conjugator_search(M, target, 4)
    assert w is not None
    assert (w @ M).entries == (target @ w).entries


@pytest.mark.parametrize("n", [1, 2])
def test_partition_counts(n):
    r = oracle_report(n, 6)
    assert r["invariant_classes_observed"] == count_classes(3, n) == r["predicted_count"]
    assert r["unsound_witnesses"] == 0


def test_soundness_and_coverage():
    ms = enumerate_order_p_sl2(3, 4)
    for a in ms[:6]:
        for b in ms[:6]:
            if conjugator_search(a, b, 4) is not None:
                assert conjugacy_test(a, b)
    vectors = {tuple(v) for v in partition_by_conjugacy(ms, 4)["observed_vectors"]}
    for bits in [(0,), (1,)]:
        assert matrix_from_pair(class_from_vector(3, 3, bits)) in ms
        assert bits in vectors
