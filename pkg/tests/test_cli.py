import json
import subprocess
import sys

import pytest

from ellperiods import cm
from ellperiods.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(scope="module")
def cert_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("cert") / "c1009.json"
    assert main(["prove", "1009", "--certificate", str(path)]) == 0
    return path


def test_prove_1009(capsys, cert_path):
    code, out, _ = run(capsys, "prove", "1009", "--format", "structured")
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "prime" and data["certificate"]["d"] == "479"
    assert data["certificate"]["m"] == "1"
    assert cm.Certificate.from_json(cert_path.read_text()).d == 479


def test_prove_composites(capsys):
    code, out, _ = run(capsys, "prove", "561", "--format", "structured")
    assert code == 1 and json.loads(out)["factor"] in ("3", "11", "17")
    code, out, _ = run(capsys, "prove", "10201")
    assert code == 1 and "prime" not in out.replace("composite", "")


def test_prove_inconclusive(capsys):
    code, _, _ = run(capsys, "prove", "1009", "--disc-cap", "7")
    assert code == 2


def test_usage_errors(capsys):
    for argv in (["prove", "abc"], ["prove", "1"], ["prove", "1009", "--seed", "-1"],
                 ["prove", "1009", "--force-small-d"], ["demo", "nope"], ["count-sd", "4"],
                 ["bogus"], []):
        code, _, err = run(capsys, *argv)
        assert code == 64, argv


def test_verify(capsys, cert_path, tmp_path):
    code, out, _ = run(capsys, "verify", str(cert_path))
    assert code == 0 and "valid" in out
    data = json.loads(cert_path.read_text())
    data["m"] = "2"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    assert run(capsys, "verify", str(bad))[0] == 1
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    assert run(capsys, "verify", str(junk))[0] == 65
    assert run(capsys, "verify", str(tmp_path / "missing.json"))[0] == 66


def test_missing_table(capsys, tmp_path):
    code, _, err = run(capsys, "prove", "1009", "--hilbert-table", str(tmp_path / "none.txt"))
    assert code == 66 and "table" in err


def test_demo(capsys):
    for name in ("f7", "z101sq", "n1009"):
        code, out, _ = run(capsys, "demo", name)
        assert code == 0 and "FAIL" not in out
    _, out, _ = run(capsys, "demo", "f7")
    assert "note:" in out


def test_count_sd(capsys):
    code, out, _ = run(capsys, "count-sd", "3", "--format", "structured")
    assert code == 0 and json.loads(out)["count"] == "6"
    code, out, _ = run(capsys, "count-sd", "2001", "--format", "structured")
    assert code == 0 and json.loads(out)["bound_174498"] is True


def test_strong_force_small_d_is_labelled(capsys):
    code, out, _ = run(capsys, "prove", "1009", "--criterion", "strong", "--force-small-d")
    assert code == 2 and "not a proof" in out


def test_structured_output_is_reproducible():
    cmd = [sys.executable, "-m", "ellperiods.cli", "prove", "1009", "--format", "structured",
           "--seed", "7"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["verdict"] == "prime"


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and "FAIL" not in out
