import io
import json
import subprocess
import sys

import pytest

from cgaverma.cli import run
from cgaverma.polyring import MultiPoly


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_singvecs_json():
    code, out, _ = call("singvecs", "--ell", "2", "--delta", "0", "--p", "1", "--max-grade", "4", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert [v["grade"] for v in data] == [2, 4]
    assert all(v["verified"] for v in data)


def test_json_is_byte_stable():
    args = ("singvecs", "--ell", "3", "--delta", "1/3", "--p", "2", "--max-grade", "6", "--format", "json")
    assert call(*args)[1] == call(*args)[1]


def test_kernel_brute():
    code, out, _ = call("kernel", "--ell", "6", "--c", "0", "--grade", "6", "--method", "brute", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data["basis"]) == 4 and data["method"] == "brute"


@pytest.mark.parametrize("method", ["closed", "xu"])
def test_kernel_other_methods(method):
    code, out, _ = call("kernel", "--ell", "4", "--c", "3/2", "--grade", "6", "--method", method)
    assert code == 0
    # parts capped at ell = 4: (4,2), (3,3), (2,2,2)
    assert out.strip().endswith("dimension 3")


def test_kernel_xu_needs_nonzero_c():
    assert call("kernel", "--ell", "3", "--c", "0", "--grade", "3", "--method", "xu")[0] == 2


def test_character():
    code, out, _ = call("character", "--c", "1", "--order", "6")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "char F: 1 + q + 2q^2 + 3q^3 + 5q^4 + 7q^5 + 11q^6"
    assert lines[1] == "char M: 1 + q + 2q^2 + 3q^3 + 5q^4 + 7q^5 + 11q^6"
    assert lines[2] == "EQUAL"


def test_verify_file(tmp_path):
    good = MultiPoly("z", {(2,): 1, (0, 1): 1})
    path = tmp_path / "v.json"
    path.write_text(json.dumps(good.to_json()))
    code, out, _ = call("verify", "--ell", "2", "--delta", "0", "--p", "1", "--poly", str(path))
    assert code == 0 and "epsilon=4 q=1" in out
    path.write_text(json.dumps(MultiPoly.var("z", 0).to_json(2)))
    code, out, _ = call("verify", "--ell", "2", "--delta", "0", "--p", "1", "--poly", str(path))
    assert code == 1 and "fails at C" in out


def test_verify_bad_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert call("verify", "--ell", "2", "--delta", "0", "--p", "1", "--poly", str(path))[0] == 2


def test_basis_commands():
    assert call("basis", "t", "--k", "2", "--c", "1/2")[1].strip() == "z0^2 + z1"
    assert call("basis", "t0", "--k", "2")[1].strip() == "-2*z0*z2 + z1^2"
    assert call("basis", "s", "--r", "2", "--partition", "2")[1].strip() == "z0*z2 - 1/2*z1^2"
    code, out, _ = call("basis", "t", "--partition", "2,2", "--c", "1", "--format", "json")
    assert code == 0 and json.loads(out)["vars"] == ["z0", "z1"]
    assert call("basis", "s", "--r", "2")[0] == 2
    assert call("basis", "s", "--r", "2", "--partition", "3")[0] == 2


def test_check_homomorphism_command():
    code, out, _ = call("check-homomorphism", "--ell", "2", "--delta", "1/3", "--p", "2", "--rep", "pi_hat")
    assert code == 0 and "0 failing" in out


def test_newton_commands():
    assert call("newton", "e2p", "--n", "2")[1].strip() == "-1/2*p2 + 1/2*p1^2"
    assert call("newton", "p-reduce", "--k", "3", "--r", "2")[1].strip() == "3/2*p1*p2 - 1/2*p1^3"
    assert call("newton", "p-reduce-mod-p1", "--k", "4", "--r", "2")[1].strip() == "1/2*p2^2"
    code, out, _ = call("newton", "e2p", "--n", "3", "--format", "json")
    assert json.loads(out)["terms"][0] == {"coeff": "1/3", "partition": [3]}


@pytest.mark.parametrize(
    "argv",
    [
        ["singvecs", "--ell", "2", "--delta", "0.5", "--p", "1", "--max-grade", "2"],
        ["singvecs", "--ell", "0", "--delta", "0", "--p", "1", "--max-grade", "2"],
        ["kernel", "--ell", "2", "--c", "1"],
        ["basis", "s", "--r", "2", "--partition", "1,2"],
        ["nonsense"],
    ],
)
def test_flag_errors_exit_2(argv, capsys):
    assert run(argv) == 2


def test_selftest_small():
    code, out, _ = call("selftest", "--max-grade", "4")
    assert code == 0
    assert out.strip().endswith("12/12 criteria passed")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cgaverma", "character", "--c", "0", "--order", "3"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "EQUAL" in proc.stdout
