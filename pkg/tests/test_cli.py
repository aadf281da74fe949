import io
import json
import subprocess
import sys

import pytest

from evokit.algebra import EvolutionAlgebra
from evokit.cli import run
from evokit.fixtures import const

from conftest import FIXTURE_DIR, Q


def call(*argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], stdout=out)
    text = out.getvalue()
    return code, (json.loads(text) if text else None), text


def fx(name):
    return FIXTURE_DIR / name


def test_aut_swap_gf7():
    code, rep, _ = call("aut", fx("swap_gf7.json"))
    assert code == 0
    assert rep["order"] == 6 and rep["kernel_order"] == 3 and rep["image_order"] == 2
    assert rep["faithful"] is False
    assert {"sigma": [1, 2], "lambda": ["2", "4"]} in rep["elements"]


def test_transitivity_a5():
    code, rep, _ = call("transitivity", fx("a5.json"))
    assert code == 0 and rep == {"degree": 3}


def test_realize_c3():
    code, rep, _ = call("realize", fx("c3.json"), "--field", "Q")
    assert code == 0
    assert rep["success"] is True
    assert rep["graph_aut_order"] == rep["algebra_aut_order"] == 6
    assert rep["idempotent_count"] == 3


def test_field_override():
    code, rep, _ = call("aut", fx("swap_gf7.json"), "--field", "Q")
    assert code == 0 and rep["order"] == 2 and rep["field"] == "Q"


def test_oracle_check_flag():
    code, rep, _ = call("aut", fx("swap_gf7.json"), "--oracle-check")
    assert code == 0 and rep["oracle_check"] is True


def test_oracle_subcommand():
    code, rep, _ = call("oracle", fx("swap_gf7.json"))
    assert code == 0 and rep["order"] == 6 and rep["cross_check"] is True
    code, rep, _ = call("oracle", fx("swap_q.json"))
    assert code == 1 and rep["error"]["type"] == "EvokitError"


def test_element_cap_omits_list():
    code, rep, _ = call("aut", fx("identity5.json"), "--element-cap", "10")
    assert code == 0 and rep["order"] == 120
    assert "elements" not in rep and rep["elements_omitted"] is True


def test_idem_and_rho(tmp_path):
    path = tmp_path / "x.json"
    path.write_text(json.dumps(EvolutionAlgebra.from_rows(Q, [[2, 0], [0, 3]]).to_json()))
    code, rep, _ = call("idem", path)
    assert code == 0
    assert rep["m"] == 2 and rep["scale"] == ["1/2", "1/3"] and rep["determinant"] == "6"
    code, rep, _ = call("rho", fx("const5_2_1.json"))
    assert code == 0
    assert rep["image_order"] == 120 and rep["faithful"] and rep["full"] and rep["transitivity_degree"] == 5
    code, rep, _ = call("rho-tilde", fx("identity5.json"))
    assert code == 0 and rep["m"] == 5 and rep["order"] == 120


def test_verify():
    code, rep, _ = call("verify", fx("swap_gf7.json"), "--sigma", "1,2", "--lambda", "2,4")
    assert code == 0 and rep == {"automorphism": True}
    code, rep, _ = call("verify", fx("swap_gf7.json"), "--sigma", "1,2", "--lambda", "2,2")
    assert code == 0 and rep == {"automorphism": False}
    code, rep, _ = call("verify", fx("swap_gf7.json"), "--sigma", "1,2", "--lambda", "0,2")
    assert code == 1
    code, _, _ = call("verify", fx("swap_gf7.json"), "--sigma", "1,x", "--lambda", "1,1")
    assert code == 2


def test_gen_round_trip(tmp_path):
    out = tmp_path / "c.json"
    code, _, text = call("gen", "const", 5, 2, 1, "-o", out)
    assert code == 0 and text == ""
    X = EvolutionAlgebra.from_json(json.loads(out.read_text()))
    assert X == const(5, 2, 1, Q)
    assert out.read_text() == (FIXTURE_DIR / "const5_2_1.json").read_text()
    # the written file feeds back in
    code, rep, _ = call("aut", out)
    assert code == 0 and rep["order"] == 120


@pytest.mark.parametrize(
    "argv, dim",
    [
        (["gen", "identity", "3"], 3),
        (["gen", "swap2", "--field", "GF(7)"], 2),
        (["gen", "cycle", "3"], 6),
        (["gen", "complete", "4"], 10),
    ],
)
def test_gen_algebras(argv, dim):
    code, rep, _ = call(*argv)
    assert code == 0
    X = EvolutionAlgebra.from_json(rep)
    assert X.dim == dim and EvolutionAlgebra.from_json(X.to_json()) == X


def test_gen_graph_matches_fixture():
    code, _, text = call("gen", "cycle-graph", 5)
    assert code == 0
    assert json.loads(text) == json.loads((FIXTURE_DIR / "c5.json").read_text())


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "nope", "3"],
        ["gen", "identity"],
        ["gen", "identity", "x"],
        ["aut"],
        ["bogus"],
        ["aut", "missing.json"],
        ["aut", str(FIXTURE_DIR / "swap_q.json"), "--field", "GF(8)"],
        ["aut", str(FIXTURE_DIR / "swap_q.json"), "--element-cap", "0"],
        ["transitivity", str(FIXTURE_DIR / "swap_q.json")],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, _, text = call(*argv)
    assert code == 2 and text == ""


def test_domain_errors_exit_1(tmp_path):
    path = tmp_path / "sing.json"
    path.write_text(json.dumps({"field": "Q", "matrix": [["1", "1"], ["1", "1"]]}))
    code, rep, _ = call("aut", path)
    assert code == 1 and rep["error"]["type"] == "NotIdempotentError"
    code, rep, _ = call("aut", fx("identity5.json"), "--max-dim", "4")
    assert code == 1 and rep["error"]["type"] == "CapExceededError"
    g = tmp_path / "edge.json"
    g.write_text(json.dumps({"n": 2, "edges": [[1, 2]], "V": [1]}))
    code, rep, _ = call("realize", g)
    assert code == 1


def test_reports_are_byte_identical():
    for argv in (["aut", fx("swap_gf7.json")], ["realize", fx("k4.json")], ["rho", fx("const5_2_1.json")]):
        texts = {call(*argv)[2] for _ in range(3)}
        assert len(texts) == 1
        text = texts.pop()
        assert text.endswith("\n") and json.dumps(json.loads(text), sort_keys=True, indent=2) + "\n" == text


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "evokit", "transitivity", str(fx("a5.json"))], capture_output=True, text=True
    )
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"degree": 3}
