import json

from sptorsion.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_json(capsys):
    code, out, _ = _run(capsys, "classify", "--p", "3", "--n", "2", "--format", "json")
    assert code == 0
    r = json.loads(out)
    assert r["schema_version"] == 1
    assert r["split"]["tau"] == 1 and r["counts"]["count"] == 4
    assert len(r["classes"]) == 4
    assert "timing_seconds" not in r


def test_classify_deterministic(capsys):
    _, a, _ = _run(capsys, "classify", "--p", "7", "--n", "30")
    _, b, _ = _run(capsys, "classify", "--p", "7", "--n", "30")
    assert a == b


def test_classify_text_and_timing(capsys):
    code, out, _ = _run(capsys, "classify", "--p", "7", "--n", "6", "--format", "text")
    assert code == 0 and "tau = 1, sigma = 1" in out and "j = 3" in out
    code, out, _ = _run(capsys, "classify", "--p", "5", "--n", "1", "--timing")
    assert "timing_seconds" in json.loads(out)


def test_large_p_needs_class_number(capsys):
    code, _, err = _run(capsys, "classify", "--p", "23", "--n", "1")
    assert code == 2 and "class number" in err
    code, out, _ = _run(capsys, "classify", "--p", "23", "--n", "1", "--class-number", "3")
    assert code == 0 and json.loads(out)["counts"]["count"] == 3 * 2 ** 11


def test_construct_and_verify(capsys, tmp_path):
    path = tmp_path / "m.json"
    code, _, _ = _run(capsys, "construct", "--p", "3", "--n", "1", "--class", "0", "--out", str(path))
    assert code == 0
    code, out, _ = _run(capsys, "verify", "--p", "3", "--n", "1", "--matrix", str(path))
    r = json.loads(out)
    assert code == 0 and all(r["checks"].values()) and r["class"]["vector"] == [0]


def test_verify_failure_and_errors(capsys, tmp_path):
    path = tmp_path / "shear.json"
    path.write_text(json.dumps({"p": 3, "n": 1, "entries": [["1", "1"], ["0", "1"]]}))
    code, out, _ = _run(capsys, "verify", "--p", "3", "--n", "1", "--matrix", str(path))
    assert code == 3 and json.loads(out)["checks"]["order_p"] is False
    path.write_text(json.dumps({"p": 3, "n": 1, "entries": [["1/2", "0"], ["0", "2"]]}))
    assert _run(capsys, "verify", "--p", "3", "--n", "1", "--matrix", str(path))[0] == 3
    path.write_text(json.dumps({"p": 3, "n": 1, "entries": [["0", "-1"], ["1", "-1"]]}))
    assert _run(capsys, "verify", "--p", "5", "--n", "1", "--matrix", str(path))[0] == 2
    assert _run(capsys, "construct", "--p", "3", "--n", "1", "--class", "01")[0] == 2
    assert _run(capsys, "classify", "--p", "9", "--n", "1")[0] == 2
    assert _run(capsys, "nonsense")[0] == 2


def test_orbits(capsys):
    code, out, _ = _run(capsys, "orbits", "--p", "7", "--n", "7")
    assert code == 0 and json.loads(out)["odd_divisors_covered"] == [1, 3]


def test_internal_error_exit_code(capsys, monkeypatch):
    from sptorsion import cli
    from sptorsion.errors import VerificationError

    def boom(args):
        raise VerificationError("forced")

    monkeypatch.setitem(cli.COMMANDS, "orbits", boom)
    code, _, err = _run(capsys, "orbits", "--p", "7", "--n", "7")
    assert code == 4 and "forced" in err and "Traceback" in err


def test_selftest_small(capsys):
    code, out, _ = _run(capsys, "selftest", "--max-p", "3", "--oracle-height", "3")
    assert code == 0
    assert out.count("[PASS]") == 8
