import json
import subprocess
import sys

import numpy as np
import pytest

from superconv.bipartite import cnot_channel
from superconv.channelfile import dump_channel, encode_matrix, parse_channel
from superconv.channels import transposition_map, unitary_channel
from superconv.cli import main
from superconv.sampling import random_channel
from superconv.superop import convolve, identity_element, to_choi


@pytest.fixture
def write(tmp_path):
    def _write(name, obj, rep="aform"):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else dump_channel(obj, rep))
        return str(path)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_demo_cnot(capsys):
    code, out, err = run(capsys, "demo", "cnot")
    assert code == 0 and err == ""
    res = json.loads(out)
    assert res["chosen_eigenvalue"] == pytest.approx(-2, abs=1e-9)
    assert res["detection_value"] == pytest.approx(-2, abs=1e-9)
    assert res["verdict"] == "nonseparable_detected"
    levels = {round(c["eigenvalue"], 9): c["multiplicity"] for c in res["pt_spectrum"]}
    assert levels == {-2: 1, 0: 12, 2: 3}


def test_choi(capsys, write):
    code, out, _ = run(capsys, "choi", write("t.json", transposition_map(2)))
    assert code == 0
    res = json.loads(out)
    assert res["dims"] == {"in": [2], "out": [2]}
    assert res["choi"] == encode_matrix(np.eye(4)[[0, 2, 1, 3]])


def test_conv_transposition_gives_identity_element(capsys, write):
    t = write("t.json", transposition_map(2))
    code, out, _ = run(capsys, "conv", t, t)
    assert code == 0
    assert parse_channel(out).distance(identity_element(2)) == 0


def test_conv_output_is_bitwise(capsys, write, tmp_path):
    a, b = random_channel(3, 2, 2, 1), random_channel(3, 2, 2, 2)
    out_path = tmp_path / "out.json"
    code, out, _ = run(capsys, "conv", write("a.json", a), write("b.json", b), "-o", str(out_path))
    assert code == 0 and out == ""
    again = parse_channel(out_path.read_text())
    assert np.array_equal(again.aform, convolve(a, b).aform)


def test_conv_keeps_bipartite_dims(capsys, write):
    c = write("c.json", cnot_channel())
    code, out, _ = run(capsys, "conv", c, c)
    assert code == 0
    assert json.loads(out)["dims"] == {"in": [2, 2], "out": [2, 2]}


def test_compose(capsys, write):
    x = unitary_channel(np.array([[0, 1], [1, 0]]))
    code, out, _ = run(capsys, "compose", write("x.json", x), write("x2.json", x))
    assert code == 0
    assert parse_channel(out).distance(unitary_channel(np.eye(2))) < 1e-15


def test_spectrum(capsys, write):
    code, out, _ = run(capsys, "spectrum", write("c.json", cnot_channel()))
    assert code == 0
    res = json.loads(out)
    assert res["hermitian"] is True
    assert [c["multiplicity"] for c in res["clusters"]] == [15, 1]
    assert res["clusters"][1]["eigenvalue"][0] == pytest.approx(4)
    code, out, _ = run(capsys, "spectrum", write("c.json", cnot_channel()), "--cluster-tol", "10")
    assert [c["multiplicity"] for c in json.loads(out)["clusters"]] == [16]


def test_norm(capsys, write):
    t = write("t.json", transposition_map(2))
    assert json.loads(run(capsys, "norm", t, "--p", "1")[1]) == {"p": 1, "norm": 4.0}
    assert json.loads(run(capsys, "norm", t)[1]) == {"p": 2, "norm": 2.0}
    code, _, err = run(capsys, "norm", t, "--p", "3")
    assert code == 2 and "invalid choice" in err


def test_check_depolarizing(capsys, write):
    doc = {"dims": {"in": [2], "out": [2]}, "repr": "choi", "data": encode_matrix(np.eye(4) / 2)}
    code, out, _ = run(capsys, "check", write("dep.json", json.dumps(doc)))
    assert code == 0
    res = json.loads(out)
    assert (res["is_cp"], res["is_tp"], res["is_unital"], res["is_unitary"]) == (True, True, True, False)
    assert res["kraus_rank"] == 4
    assert res["min_choi_eigenvalue"] == pytest.approx(0.5)


def test_witness(capsys, write):
    code, out, _ = run(capsys, "witness", write("c.json", cnot_channel()))
    assert code == 0
    res = json.loads(out)
    assert res["verdict"] == "nonseparable_detected"
    w = parse_channel(json.dumps(res["witness"]))
    assert w.shape.factors == (2, 2, 2, 2)
    code, out, _ = run(capsys, "witness", write("c.json", cnot_channel()), "--eig", "index:2")
    assert code == 0 and json.loads(out)["verdict"] == "inconclusive"


@pytest.mark.parametrize("eig", ["index:7", "index:x", "largest"])
def test_witness_bad_selector(capsys, write, eig):
    code, out, err = run(capsys, "witness", write("c.json", cnot_channel()), "--eig", eig)
    assert code == 2 and out == "" and "--eig" in err


def test_witness_needs_bipartite(capsys, write):
    code, _, err = run(capsys, "witness", write("t.json", transposition_map(2)))
    assert code == 2 and "dims" in err


def test_computation_error_exits_one(capsys, write):
    # a Choi matrix that is not Hermitian has no real witness spectrum
    g = np.zeros((16, 16))
    g[0, 1] = 1
    doc = {"dims": {"in": [2, 2], "out": [2, 2]}, "repr": "choi", "data": encode_matrix(g)}
    code, out, err = run(capsys, "witness", write("bad.json", json.dumps(doc)))
    assert code == 1 and out == "" and err.startswith("error:")


def test_malformed_file_exits_two_with_path(capsys, write):
    bad = '{"dims": {"in": [1], "out": [1]}, "repr": "aform", "data": [[[1]]]}'
    code, out, err = run(capsys, "choi", write("bad.json", bad))
    assert code == 2 and out == ""
    assert "data[0][0]" in err
    code, _, err = run(capsys, "choi", write("bad.json", "{not json"))
    assert code == 2 and "line 1" in err
    code, _, err = run(capsys, "choi", "/nonexistent/file.json")
    assert code == 2


def test_shape_mismatch_is_input_error(capsys, write):
    a = write("a.json", transposition_map(2))
    b = write("b.json", transposition_map(3))
    code, _, err = run(capsys, "conv", a, b)
    assert code == 2 and err.startswith("error:")


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "--help")[0] == 0


def test_module_entry_point_and_stdin():
    text = dump_channel(unitary_channel(np.eye(3)))
    proc = subprocess.run(
        [sys.executable, "-m", "superconv.cli", "check", "-"],
        input=text, capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["is_unitary"] is True


def test_choi_of_bipartite_has_both_dims(capsys, write):
    code, out, _ = run(capsys, "choi", write("c.json", cnot_channel()))
    res = json.loads(out)
    assert res["dims"] == {"in": [2, 2], "out": [2, 2]}
    assert res["choi"] == encode_matrix(to_choi(cnot_channel().op))
