import json

import numpy as np
import pytest

from entrosep import io as fio
from entrosep.cli import main
from entrosep.states import werner_qubit


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def state_file(tmp_path):
    def write(rho=None, obj=None, name="state.json"):
        path = tmp_path / name
        text = fio.dumps(obj if obj is not None else fio.state_to_json(rho))
        path.write_text(text)
        return str(path)

    return write


def test_check_entangled_exit_3(state_file, capsys):
    code, out, _ = run(["check", state_file(werner_qubit(0.9))], capsys)
    assert code == 3
    assert out.splitlines()[0].split(",")[0] == "criterion_id"


def test_check_maximally_mixed_exit_0(state_file, capsys):
    path = state_file(obj={"dims": [2, 2], "matrix": fio.encode_array(np.eye(4) / 4)})
    code, out, _ = run(["check", path, "--format", "json"], capsys)
    assert code == 0
    assert all(not r["violated"] for r in json.loads(out))


def test_check_non_hermitian_exit_1(state_file, capsys):
    m = np.eye(4) / 4
    m[0, 1] = 0.2
    path = state_file(obj={"dims": [2, 2], "matrix": fio.encode_array(m)})
    code, _, err = run(["check", path], capsys)
    assert code == 1 and "hermitian" in err


@pytest.mark.parametrize("text", ["{oops", '{"matrix": 3}', '{"matrix": [[[NaN, 0]]]}', "[]"])
def test_malformed_files_exit_1(tmp_path, text, capsys):
    path = tmp_path / "bad.json"
    path.write_text(text)
    code, _, err = run(["check", str(path)], capsys)
    assert code == 1 and err.startswith("error:")


def test_missing_file_exit_1(capsys):
    assert run(["check", "/nonexistent/x.json"], capsys)[0] == 1


@pytest.mark.parametrize("argv", [[], ["check"], ["scan", "--family", "nope"],
                                  ["check", "x.json", "--criterion", "bogus"]])
def test_usage_errors_exit_2(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_scan_and_curve(tmp_path, capsys):
    curve = tmp_path / "curve.csv"
    code, out, _ = run(["scan", "--family", "werner-qubit", "--criterion", "mub", "--format",
                        "json", "--emit-curve", str(curve)], capsys)
    assert code == 0
    res = json.loads(out)
    assert res["c_star"] == pytest.approx(0.5773503, abs=1e-6)
    lines = curve.read_text().strip().split("\n")
    assert lines[0] == "c,margin" and len(lines) > 10


def test_scan_no_detection_reports_none(capsys):
    code, out, _ = run(["scan", "--family", "werner-qubit", "--criterion", "correlation"], capsys)
    assert code == 0 and ",NONE," in out


def test_profile_json(capsys):
    code, out, _ = run(["profile", "--theta", "0.7853981633974483", "--format", "json"], capsys)
    prof = json.loads(out)
    assert code == 0 and prof["d_star"] == 2
    assert prof["w"] == pytest.approx([0.70710678, 0.29289322])


@pytest.mark.parametrize("kind", ["z", "rotated", "pauli-mubs", "prime-mubs", "qutrit-cross",
                                  "sic", "mum", "gsic"])
def test_construct_then_validate(kind, tmp_path, capsys):
    dim = "3" if kind in ("prime-mubs", "sic", "gsic") else "2"
    code, out, _ = run(["construct", "--kind", kind, "--dim", dim], capsys)
    assert code == 0
    path = tmp_path / "m.json"
    path.write_text(out)
    code, out, _ = run(["validate", str(path)], capsys)
    assert code == 0 and json.loads(out)["valid"]


def test_validate_bad_state(state_file, capsys):
    path = state_file(obj={"matrix": fio.encode_array(np.diag([0.6, 0.5]))})
    code, out, _ = run(["validate", path], capsys)
    assert code == 1 and json.loads(out)["state"]["invariant"] == "trace"


def test_random_separable_sweep(capsys):
    code, out, _ = run(["validate", "--random-separable", "30", "--format", "json"], capsys)
    assert code == 0 and not any(json.loads(out)["violations"].values())


def test_reproduce_single_case(capsys):
    code, out, _ = run(["reproduce", "--case", "werner-qubit-mu", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0 and len(data["rows"]) == 1
    assert data["rows"][0]["value"] == pytest.approx(0.7071068, abs=1e-6)


def test_determinism(state_file, capsys):
    argv = ["validate", "--random-separable", "20", "--seed", "7"]
    first = run(argv, capsys)[1]
    assert run(argv, capsys)[1] == first
    path = state_file(werner_qubit(0.6))
    a = run(["check", path, "--format", "json"], capsys)[1]
    assert run(["check", path, "--format", "json"], capsys)[1] == a


def test_measurement_file_drives_check(state_file, tmp_path, capsys):
    _, out, _ = run(["construct", "--kind", "qutrit-cross"], capsys)
    mpath = tmp_path / "cross.json"
    mpath.write_text(out)
    _, out, _ = run(["construct", "--state", "qutrit", "--c", "0.7"], capsys)
    spath = tmp_path / "q.json"
    spath.write_text(out)
    code, out, _ = run(["check", str(spath), "--measurements", str(mpath), "--criterion", "mub",
                        "--format", "json"], capsys)
    assert code == 3 and json.loads(out)[0]["params"]["K"] == 3
