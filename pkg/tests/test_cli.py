import io
import json
import subprocess
import sys

import pytest

from drinfeldkit.cli import run


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), out=buf)
    return code, buf.getvalue()


def result(*argv):
    code, text = call(*argv)
    assert code == 0, text
    doc = json.loads(text)
    assert set(doc) == {"config", "result", "provenance"}
    return doc["result"]


def test_field_commands():
    r = result("field", "irreducibles", "--q", "2", "--degree", "3")
    assert r["irreducibles"] == ["T^3+T+1", "T^3+T^2+1"]
    assert result("field", "gcd", "--a", "T^2+T", "--b", "T")["gcd"] == "T"
    assert result("field", "divmod", "--a", "T^3+T+1", "--b", "T")["remainder"] == "1"
    assert result("field", "factor", "--q", "3", "--a", "T^2+2")["factors"] == [["T+1", 1], ["T+2", 1]]


def test_field_q4_modulus_default():
    r = result("field", "mul", "--q", "4", "--a", "(z)*T", "--b", "(z)")
    assert r["product"] == "(1+z)*T"


def test_cuspidal_order():
    assert result("cuspidal", "order", "--q", "5", "--prime-degree", "3")["order"] == 31
    assert result("cuspidal", "order", "--q", "2", "--prime", "T", "--rank", "3")["order"] == 3


def test_tree_dot():
    code, text = call("tree", "quotient", "--q", "2", "--level", "T^3+T+1", "--depth", "12",
                      "--format", "dot")
    assert code == 0
    assert "graph" in text.splitlines()[0]


def test_tree_json():
    r = result("tree", "quotient", "--q", "3", "--level", "T^3+2*T+1")
    assert r["genus"] == 3 and len(r["cusps"]) == 2


def test_hecke_commands():
    r = result("hecke", "basis", "--q", "2", "--level", "T^3+T+1")
    assert r["rank"] == 2
    r = result("hecke", "matrix", "--q", "2", "--level", "T^3+T+1", "--m", "T")
    assert len(r["matrix"]) == 2
    code, text = call("hecke", "fourier", "--q", "2", "--level", "T^3+T+1", "--eisenstein",
                      "--format", "csv")
    assert code == 0 and text.startswith("object,index,exact,float")
    r = result("hecke", "pairing", "--q", "2", "--level", "T^3+T+1")
    assert r["self_adjoint"]["ok"]
    r = result("hecke", "lseries", "--q", "2", "--level", "T^3+T+1")
    assert "functional_equation" in r


def test_analytic_commands():
    r = result("analytic", "check", "--q", "2", "--N", "4")
    assert r["report"]["ok"]
    r = result("analytic", "check", "--q", "2", "--N", "4", "--mutate", "2")
    assert not r["report"]["ok"] and r["report"]["failing_index"] == 2
    r = result("analytic", "period", "--q", "3", "--D", "4")
    assert r["pi_C^(q-1)"]


def test_drinfeld_commands():
    r = result("drinfeld", "torsion", "--q", "2", "--prime", "T^3+T+1", "--g", "1", "--a", "T")
    assert r["structure"] == ["T"]
    r = result("drinfeld", "j", "--q", "3", "--g", "1;1")
    assert r["j"] == "1"


def test_golden_text_table():
    code, text = call("paper-examples", "--q", "2", "--skip-index", "--format", "text")
    assert code == 0
    assert text.strip().splitlines()[-1] == "all pass: True"
    assert call("golden", "--q", "2", "--skip-index")[0] == 0


@pytest.mark.parametrize("argv,code", [
    (["field", "factor", "--a", "T^^2"], 2),
    (["field", "irreducibles", "--q", "6"], 2),
    (["bogus"], 2),
    (["cuspidal", "order", "--prime", "T^2"], 3),
    (["tree", "quotient", "--level", "T^3+T+1", "--depth", "3"], 4),
    (["hecke", "lseries", "--level", "T"], 3),
])
def test_exit_codes(argv, code, capsys):
    assert call(*argv)[0] == code
    if code != 2 or argv[0] != "bogus":
        assert capsys.readouterr().err


def test_determinism():
    argv = ("hecke", "matrix", "--q", "2", "--level", "T^4+T+1", "--m", "T+1", "--seed", "3")
    assert call(*argv) == call(*argv)
    assert call(*argv)[1] == call(*argv[:-2], "--seed", "3", "--jobs", "2")[1].replace('"jobs": 2', '"jobs": 1')


def test_entry_point_subprocess():
    p = subprocess.run([sys.executable, "-m", "drinfeldkit", "cuspidal", "order", "--q", "3",
                        "--prime-degree", "4", "--format", "text"],
                       capture_output=True, text=True, check=True)
    assert "order: 10" in p.stdout
