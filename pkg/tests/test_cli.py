import json
import subprocess
import sys

import pytest

from qqueer.cli import dumps, main
from qqueer.matidx import SuperMatrix
from qqueer.suites import relcheck_tensor, report_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


ZERO2 = {"even": [[0, 0], [0, 0]], "odd": [[0, 0], [0, 0]]}


def test_schur_dim_prints_32(capsys):
    code, out, _ = run(capsys, "schur-dim", "--n", "2", "--r", "2")
    assert code == 0 and out.strip() == "32"


def test_relcheck_apoly_passes(capsys):
    code, out, _ = run(capsys, "relcheck", "--space", "apoly", "--n", "2", "--maxdeg", "4")
    assert code == 0
    assert out.splitlines()[0].endswith("PASS")


def test_act_k_on_origin(capsys, tmp_path):
    path = write(tmp_path, "O0.json", {"n": 2, "terms": [{"matrix": ZERO2, "j": [0, 0], "coeff": "1"}]})
    code, out, _ = run(capsys, "act", "--gen", "K1", "--space", "vmod", "--elem", path)
    assert code == 0
    assert json.loads(out) == {"n": 2, "terms": [{"matrix": ZERO2, "j": [1, 0], "coeff": "1"}]}


def test_act_on_tensor_basis(capsys, tmp_path):
    A = write(tmp_path, "A.json", {"even": [[0, 1], [0, 0]], "odd": [[0, 0], [0, 0]]})
    code, out, _ = run(capsys, "act", "--gen", "F1", "--space", "tensor", "--n", "2", "--r", "1", "--basis", A)
    assert code == 0
    assert json.loads(out)["terms"] == [{"matrix": {"even": [[0, 0], [0, 1]], "odd": [[0, 0], [0, 0]]},
                                         "coeff": "1"}]
    code, _, err = run(capsys, "act", "--gen", "F1", "--space", "tensor", "--r", "2", "--basis", A)
    assert code == 2 and "degree" in err


def test_act_on_apoly(capsys):
    code, out, _ = run(capsys, "act", "--gen", "K1", "--space", "apoly", "--n", "1", "--monomial", "X1^2*Xb1")
    assert code == 0
    assert json.loads(out)["terms"] == [{"index": [2, 1], "coeff": "q^3"}]


def test_vmod_commands(capsys, tmp_path):
    B = write(tmp_path, "B.json", {"even": [[0, 1], [0, 0]], "odd": [[0, 0], [1, 0]]})
    code, out, _ = run(capsys, "vmod-lead", "--basis", B)
    lead = json.loads(out)
    assert code == 0 and lead["coeff_is_signed_v_power"] and lead["terms_on_leading_matrix"] == 1
    assert lead["matrix"] == json.loads(open(B).read())
    O = write(tmp_path, "O.json", {"n": 1, "terms": [{"matrix": {"even": [[0]], "odd": [[0]]}, "j": [1],
                                                      "coeff": "1"}]})
    code, out, _ = run(capsys, "vmod-truncate", "--elem", O, "--rmax", "2")
    coeffs = [t["coeff"] for t in json.loads(out)["terms"]]
    assert code == 0 and sorted(coeffs) == sorted(["1", "q", "q^2"])
    code, out, _ = run(capsys, "vmod-act", "--gen", "Kb2 E1", "--elem", O)
    assert code == 2


def test_schur_mult_and_gens(capsys, tmp_path):
    D = write(tmp_path, "D.json", {"even": [[1, 0], [0, 1]], "odd": [[0, 0], [0, 0]]})
    C = write(tmp_path, "C.json", {"even": [[0, 0], [1, 1]], "odd": [[0, 0], [0, 0]]})
    code, out, _ = run(capsys, "schur-mult", "--a", C, "--b", D)
    assert code == 0 and json.loads(out)["terms"] == [
        {"matrix": {"even": [[0, 0], [1, 1]], "odd": [[0, 0], [0, 0]]}, "coeff": "1"}]
    code, out, _ = run(capsys, "mult", "--a", D, "--b", C)
    assert code == 0 and json.loads(out)["terms"] == []
    code, out, _ = run(capsys, "schur-gens", "--n", "2", "--r", "1", "--out", str(tmp_path / "gens"))
    assert code == 0
    data = json.loads((tmp_path / "gens" / "E1.json").read_text())
    assert data["generator"] == "E1" and len(data["columns"]) == 8


def test_dump_basis(capsys):
    code, out, _ = run(capsys, "dump-basis", "--space", "tensor", "--n", "2", "--r", "2")
    assert code == 0 and json.loads(out)["count"] == 32
    code, out, _ = run(capsys, "dump-basis", "--space", "vmod", "--n", "2", "--maxdeg", "1")
    assert json.loads(out)["count"] == 1 + 6


def test_verification_commands_pass(capsys):
    for argv in (["opecom", "--n", "2", "--maxdeg", "2"], ["oracle", "--n", "2", "--r", "2"],
                 ["vmod-verify", "--n", "2", "--maxdeg", "1"], ["schur-verify", "--n", "1", "--r", "2"],
                 ["relcheck", "--space", "tensor", "--n", "2", "--r", "2"],
                 ["relcheck", "--space", "schur", "--n", "2", "--r", "1"]):
        code, out, _ = run(capsys, *argv)
        assert code == 0, out


def test_verification_failure_exit_code_and_locus(capsys):
    code, out, _ = run(capsys, "vmod-verify", "--n", "2", "--maxdeg", "1", "--literal", "--json")
    assert code == 1
    reports = json.loads(out)
    failed = [c for r in reports for c in r["checks"] if not c["passed"]]
    assert failed and failed[0]["name"] == "Kb"
    locus = failed[0]["failure"]
    assert locus.startswith("Kb1 on SuperMatrix(") and "->" in locus


@pytest.mark.parametrize("argv", [
    ["relcheck", "--space", "tensor", "--n", "5"],
    ["schur-dim", "--n", "x"],
    ["nonsense"],
    ["act", "--gen", "E1", "--space", "tensor"],
    ["act", "--gen", "E9", "--space", "tensor", "--basis", "/nonexistent.json"],
    ["relcheck", "--space", "apoly", "--route", "oracle"],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        sys.exit(main(argv))
    assert exc.value.code == 2


def test_bad_generator_word(capsys, tmp_path):
    A = write(tmp_path, "A.json", ZERO2)
    code, _, err = run(capsys, "act", "--gen", "Q1", "--space", "tensor", "--basis", A)
    assert code == 2 and "error" in err


def test_reports_are_deterministic_across_workers():
    a = report_json(relcheck_tensor(2, 2, workers=1))
    b = report_json(relcheck_tensor(2, 2, workers=3))
    assert a == b


def test_identical_runs_are_byte_identical():
    cmd = [sys.executable, "-m", "qqueer.cli", "oracle", "--n", "2", "--r", "2", "--json"]
    first = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, text=True, check=True,
                            env={**__import__("os").environ, "QQUEER_THREADS": "2"}).stdout
    assert first == second and json.loads(first)[0]["passed"]


def test_dumps_keeps_short_containers_inline():
    assert dumps({"a": [1, 2]}) == '{"a": [1, 2]}'
    long = {"terms": [{"matrix": SuperMatrix.zero(3).to_json(), "coeff": "1"}] * 2}
    assert json.loads(dumps(long)) == long
    lines = dumps(long).splitlines()
    assert len(lines) == 6 and lines[2].strip().startswith('{"matrix"')
