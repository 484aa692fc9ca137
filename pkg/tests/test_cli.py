import json
import subprocess
import sys

import numpy as np
import pytest

from harmonia import acceptance, circle, padic, solenoid
from harmonia.cli import main
from harmonia.group import FiniteAbelianGroup, GroupFun, GroupMeasure


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


@pytest.fixture
def delta0(tmp_path):
    path = tmp_path / "delta0.json"
    path.write_text(json.dumps(GroupFun.delta(FiniteAbelianGroup((2,))).to_json()))
    return path


def test_dft_delta(capsys, delta0):
    code, doc = run_json(capsys, "dft", "--moduli", "2", "--input", delta0)
    assert code == 0
    assert doc["values"] == [[1.0, 0.0], [1.0, 0.0]]
    assert doc["haar"] == "normalized"


def test_dft_roundtrip_through_files(capsys, tmp_path, rng):
    g = FiniteAbelianGroup((8, 5))
    f = GroupFun(g, rng.normal(size=40) + 1j * rng.normal(size=40))
    src, mid = tmp_path / "f.json", tmp_path / "fhat.json"
    src.write_text(json.dumps(f.to_json()))
    assert run(capsys, "dft", "--moduli", "8,5", "--input", src, "--out", mid)[0] == 0
    fhat = GroupFun.from_json(json.loads(mid.read_text()))
    code, doc = run_json(capsys, "dft", "--inverse", "--input", mid, "--method", "fast")
    assert code == 0
    back = GroupFun.from_json(doc)
    assert np.abs(back.values - f.values).max() < 1e-10
    assert fhat.group.moduli == (8, 5)


def test_dft_moduli_mismatch(capsys, delta0):
    code, doc = run_json(capsys, "dft", "--moduli", "3", "--input", delta0)
    assert code == 2 and doc["error"] == "moduli_mismatch"


def test_conv(capsys, tmp_path):
    g = FiniteAbelianGroup((4,))
    a = tmp_path / "a.json"
    a.write_text(json.dumps(GroupFun(g, [1, 1, 0, 0]).to_json()))
    code, doc = run_json(capsys, "conv", "--input", a, "--with", a)
    assert code == 0
    assert [v[0] for v in GroupFun.from_json(doc).to_json()["values"]] == [1, 2, 1, 0]
    m = tmp_path / "m.json"
    m.write_text(json.dumps(GroupMeasure.delta(g, (1,)).to_json()))
    code, doc = run_json(capsys, "conv", "--input", m, "--with", m)
    assert code == 0
    assert np.allclose(GroupMeasure.from_json(doc).masses, [0, 0, 1, 0])


def test_padic_examples(capsys):
    assert run_json(capsys, "padic", "abs", "--p", 3, "--x", 18) == (0, {"abs": "1/9"})
    code, doc = run_json(capsys, "padic", "inv", "--p", 3, "--L", 4, "--x", 2)
    assert code == 0 and doc["inverse"] == "41"
    assert padic.RAdicInt.from_json(doc).residue == 41
    code, doc = run_json(capsys, "padic", "normalize", "--p", 3, "--x", "18/5", "--L", 4)
    assert doc == {"p": 3, "v": 2, "unit": "49", "L": 4}
    assert padic.PAdicNumber.from_json(doc).abs() == padic.qp_normalize(3, "18/5", 4).abs()
    code, doc = run_json(capsys, "padic", "pair", "--p", 2, "--y", "1/2", "--x", 1)
    assert doc == {"fraction": "1/2", "value": [-1.0, 0.0]}
    code, doc = run_json(capsys, "padic", "abs", "--radices", "2,3,4", "--x", 12)
    assert doc == {"abs": "1/6"}


def test_padic_validation(capsys):
    code, doc = run_json(capsys, "padic", "inv", "--p", 3, "--L", 4, "--x", 3)
    assert code == 2 and doc["error"] == "NotAUnitError"
    code, doc = run_json(capsys, "padic", "abs", "--p", 4, "--x", 2)
    assert code == 2 and doc["error"] == "not_prime"
    code, doc = run_json(capsys, "padic", "abs", "--p", 3, "--x", "abc")
    assert code == 2 and set(doc) == {"error", "detail"}


def test_solenoid_commands(capsys, tmp_path):
    code, doc = run_json(capsys, "solenoid", "embed", "--radices", "2,3", "--a", "5/4")
    assert doc == {"radices": [2, 3], "angles": ["1/4", "5/4", "5/4"]}
    x = tmp_path / "x.json"
    x.write_text(json.dumps(doc))
    code, doc = run_json(capsys, "solenoid", "add", "--input", x, "--with", x)
    assert solenoid.SolenoidPoint.from_json(doc).angles[2] == 2 + 1 / 2
    code, doc = run_json(capsys, "solenoid", "zr", "--radices", "2,3", "--x", 5)
    assert doc["angles"] == ["0", "1", "5"]
    y = tmp_path / "y.json"
    y.write_text(json.dumps(solenoid.sol_from_real(padic.RadixTower((2, 3)), "3/2").to_json()))
    code, doc = run_json(capsys, "solenoid", "char", "--input", y, "--level", 1, "--a", 1)
    assert doc == {"frequency": "1/2", "value": [0.0, -1.0]}


def test_abel_and_poisson(capsys, tmp_path):
    p = tmp_path / "p.json"
    p.write_text(json.dumps(circle.TrigPoly.from_dict({1: 1}).to_json()))
    code, doc = run_json(capsys, "abel", "--input", p, "--r", 0.9, "--z", np.pi / 2)
    assert code == 0 and abs(complex(*doc["value"]) - 0.9j) < 1e-12
    code, doc = run_json(capsys, "poisson", "--r", 0, "--samples", 8, "--z", 0)
    assert code == 0
    assert abs(complex(*doc["value"]) - complex(*doc["mean"])) < 1e-12
    assert circle.SampledCircleFun.from_json(doc["samples"]).M == 8
    code, doc = run_json(capsys, "poisson", "--input", p, "--r", 0.5, "--z", 0, "--samples", 256)
    assert abs(complex(*doc["value"]) - 0.5) < 1e-9
    code, doc = run_json(capsys, "abel", "--input", p, "--r", 1.0)
    assert code == 2


def test_kernel_table_csv(capsys, tmp_path):
    out = tmp_path / "k.csv"
    code, doc = run_json(capsys, "poisson", "--r", 0.5, "--samples", 4, "--kernel-table", "--out", out)
    assert code == 0 and doc["rows"] == 16
    lines = out.read_text().splitlines()
    assert lines[0] == "r,theta_z,theta_w,P" and len(lines) == 17


def test_spectrum(capsys, tmp_path):
    t = tmp_path / "t.json"
    t.write_text(json.dumps(GroupFun.delta(FiniteAbelianGroup((4,)), (1,)).to_json()))
    code, doc = run_json(capsys, "spectrum", "--input", t, "--kmax", 8)
    assert code == 0
    assert np.allclose([complex(*v) for v in doc["eigenvalues"]], [1, -1j, -1, 1j])
    assert doc["estimate"] == pytest.approx(1)


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "frobnicate")[0] == 64
    assert run(capsys)[0] == 64
    code, doc = run_json(capsys, "dft", "--input", tmp_path / "missing.json")
    assert code == 65 and doc["error"] == "missing_input"
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run_json(capsys, "dft", "--input", bad)[0] == 65
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"moduli": [2], "values": [[1, 0]]}))
    assert run_json(capsys, "dft", "--input", wrong)[0] == 65
    code, doc = run_json(capsys, "dft", "--input", bad, "--bogus", 1)
    assert code == 2 and doc["error"] == "invalid_arguments"


def test_check_is_deterministic(capsys):
    code1, out1 = run(capsys, "check", "--format", "text", "--seed", 3)
    code2, out2 = run(capsys, "check", "--format", "text", "--seed", 3)
    assert out1 == out2
    assert code1 == code2 == (0 if "FAIL" not in out1 else 1)
    code, doc = run_json(capsys, "check")
    assert doc["total"] == 18 and code == (0 if doc["passed"] == 18 else 1)


def test_negated_kernel_fails_normalization():
    rng = np.random.default_rng(0)
    bad = lambda r, z, w: -circle.poisson_kernel(r, z, w)
    _, _, passed, _ = acceptance.poisson_normalization(rng, kernel=bad)
    assert not passed
    _, _, passed, _ = acceptance.poisson_normalization(np.random.default_rng(0))
    assert passed


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "harmonia", "padic", "abs", "--p", "3", "--x", "18"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"abs": "1/9"}
