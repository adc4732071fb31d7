import json
from pathlib import Path

import pytest

import pydarmon

GOLDEN = Path(__file__).resolve().parents[2] / "tests" / "golden"


def test_curve_and_arithmetic():
    info = pydarmon.curve("37a")
    assert info["conductor"] == "37"
    assert info["a_invariants"] == ["0", "0", "1", "-1", "0"]
    assert pydarmon.curve("0,-1,1,-10,-20")["conductor"] == "11"
    assert pydarmon.ap("11a", 2) == -2
    assert [pydarmon.genus_x0(n) for n in (11, 37, 64)] == [1, 2, 3]


def test_eigensymbol_certificate_verifies():
    cert = pydarmon.eigensymbol("11a", sign=1)
    assert cert["kind"] == "eigensymbol"
    assert all(isinstance(v, str) for v in cert["result"]["eigenvalues"].values())
    ok, kind, checks = pydarmon.verify(cert)
    assert ok and kind == "eigensymbol" and checks
    cert["result"]["generators"][2][2] = "99"
    assert not pydarmon.verify(cert)[0]


def test_l_invariant(tmp_path):
    cert = pydarmon.l_invariant("11a", 11, moments=8, cache_dir=str(tmp_path))
    assert cert["kind"] == "l-invariant"
    assert pydarmon.verify(cert)[0]
    assert any(tmp_path.iterdir())


def test_darmon_point_and_recognize(tmp_path):
    cert = pydarmon.darmon_point("37a", 37, 5, moments=12, cache_dir=str(tmp_path))
    assert cert["result"]["recognition"]["outcome"] == "matched"
    assert pydarmon.verify(cert)[0]
    path = tmp_path / "dp.json"
    path.write_text(json.dumps(cert))
    rec = pydarmon.recognize(path)
    assert rec["result"]["recognition"]["outcome"] == "matched"


def test_heegner_point():
    cert = pydarmon.heegner_point("37a", -7)
    assert cert["kind"] == "heegner-point"
    assert pydarmon.verify(cert)[0]


def test_preconditions_raise():
    with pytest.raises(pydarmon.PreconditionError):
        pydarmon.darmon_point("11a", 11, 5, moments=8, no_cache=True)
    with pytest.raises(ValueError):
        pydarmon.curve("not-a-curve")


def test_golden_certificates_verify():
    files = sorted(GOLDEN.glob("*.json"))
    assert files
    for f in files:
        ok, _, checks = pydarmon.verify(f.read_text())
        assert ok, (f.name, [c for c, passed in checks if not passed])


def test_selftest_subset():
    cert, passed = pydarmon.selftest(only=[1, 5])
    assert passed
    assert [c["id"] for c in cert["result"]["criteria"]] == ["1", "5"]
