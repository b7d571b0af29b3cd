"""One test per acceptance criterion; each prints its pass/fail line."""

from sptorsion import acceptance


def _report(capsys, result):
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail


def test_criterion_1_count_formula(capsys):
    _report(capsys, acceptance.criterion_1())


def test_criterion_2_oracle(capsys):
    _report(capsys, acceptance.criterion_2())


def test_criterion_3_construction(capsys):
    _report(capsys, acceptance.criterion_3())


def test_criterion_4_bijection(capsys):
    _report(capsys, acceptance.criterion_4())


def test_criterion_5_normalizer_quotient(capsys):
    _report(capsys, acceptance.criterion_5())


def test_criterion_6_conjugation_twist(capsys):
    _report(capsys, acceptance.criterion_6())


def test_criterion_7_centralizer(capsys):
    _report(capsys, acceptance.criterion_7())


def test_criterion_8_unit_machinery(capsys):
    _report(capsys, acceptance.criterion_8())
