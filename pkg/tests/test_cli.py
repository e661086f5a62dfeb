import json
from fractions import Fraction
import subprocess
import sys

import pytest

from conftest import perturbed_t2
from pencilalg.algebra import REGISTRY_NAMES, Algebra, registry
from pencilalg.cli import main
from pencilalg.documents import parse_algebra, serialize_algebra


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


def write_alg(tmp_path, name, a):
    return write(tmp_path, name, serialize_algebra(a))


def one_dim(coeff):
    return Algebra(1, ("e",), [[[coeff]]])


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- check


def test_check_ok(tmp_path, capsys):
    path = write_alg(tmp_path, "t2.json", registry("T2"))
    code, out, _ = run(capsys, "check", path, "--json")
    assert code == 0
    (res,) = json.loads(out)["results"]
    assert res["associative"] and res["unity"] == "1" and res["dim"] == 3


def test_check_violation(tmp_path, capsys):
    path = write_alg(tmp_path, "bad.json", perturbed_t2())
    code, out, _ = run(capsys, "check", path, "--json")
    assert code == 2
    (res,) = json.loads(out)["results"]
    assert res["violation"] == {"triple": ["y", "x", "x"], "difference": "-x"}


def test_check_reports_unity_not_on_basis(tmp_path, capsys):
    path = write_alg(tmp_path, "m2.json", registry("M2"))
    code, out, _ = run(capsys, "check", path, "--json")
    assert code == 0 and json.loads(out)["results"][0]["unity"]


@pytest.mark.parametrize(
    "text, field",
    [
        ('{"dim": 1, "table": [[[1]]]', None),  # truncated
        ('{"dim": 1, "table": [[[0.5]]]}', "table[0][0][0]"),
        ('{"dim": 1, "table": [[["1/0"]]]}', "table[0][0][0]"),
        ('{"dim": 2, "table": [[[1]]]}', "table"),
        ('{"table": [[[1]]]}', "dim"),
        ('{"dim": 1, "basis": ["e"], "unity": "q", "table": [[[1]]]}', "unity"),
        ('{"dim": 1, "basis": ["e"], "unity": "e", "table": [[[2]]]}', "unity"),
    ],
)
def test_check_parse_errors(tmp_path, capsys, text, field):
    path = write(tmp_path, "broken.json", text)
    code, out, _ = run(capsys, "check", path, "--json")
    assert code == 1
    (res,) = json.loads(out)["results"]
    assert res["error"] == "ParseError"
    if field:
        assert field in res["message"]


def test_parse_error_reports_line(tmp_path, capsys):
    path = write(tmp_path, "broken.json", '{\n  "dim": 1,\n  "table": [[[1]]\n')
    code, _, err = run(capsys, "analyze", path)
    assert code == 1 and "line" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "analyze", "/nonexistent/alg.json")
    assert code == 1 and "ParseError" in err


def test_rationals_accept_strings_and_typographic_minus():
    a = parse_algebra('{"dim": 1, "table": [[["−2/4"]]]}')
    assert a.table[0][0][0] == Fraction(-1, 2)


# -- analyze


def test_analyze_t2(tmp_path, capsys):
    path = write_alg(tmp_path, "t2.json", registry("T2"))
    code, out, _ = run(capsys, "analyze", path, "--functional", "1,2,4", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["chi"]["factored"] == "−25·λμ(λ+μ)"
    assert doc["chi"]["coefficients_lambda_ascending"] == [0, -25, -25, 0]
    assert [b["alpha"] for b in doc["decomposition"]["blocks"]] == ["0", "1", "∞"]
    assert all(doc["vn_checks"].values()) and doc["block_charpoly"]["passed"]
    assert doc["lie_index"] == 1


def test_analyze_text_output(tmp_path, capsys):
    path = write_alg(tmp_path, "l1.json", registry("L1"))
    code, out, _ = run(capsys, "analyze", path, "--functional", "1,1")
    assert code == 0 and "factored: −λμ" in out


def test_analyze_rational_functional(tmp_path, capsys):
    path = write_alg(tmp_path, "m2.json", registry("M2"))
    code, out, _ = run(capsys, "analyze", path, "--functional", "1/2,0,0,1", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["functional"] == ["1/2", 0, 0, 1]
    assert {b["alpha"] for b in doc["decomposition"]["blocks"]} == {"1/2", "1", "2"}


def test_analyze_orbits_are_marked_display_only(tmp_path, capsys):
    path = write_alg(tmp_path, "m3.json", registry("M3"))
    code, out, _ = run(capsys, "analyze", path, "--json")
    assert code == 0
    orbits = [b for b in json.loads(out)["decomposition"]["blocks"] if "degree" in b]
    assert orbits and all("approx_roots_display_only" in b for b in orbits)


def test_analyze_sampled_is_deterministic(tmp_path, capsys):
    path = write_alg(tmp_path, "t3.json", registry("T3"))
    first = run(capsys, "analyze", path, "--seed", "5", "--json")
    second = run(capsys, "analyze", path, "--seed", "5", "--json")
    assert first == second and first[0] == 0
    assert json.loads(first[1])["functional_origin"]["source"] == "sampled"


def test_analyze_degenerate(tmp_path, capsys):
    path = write_alg(tmp_path, "z2.json", registry("Z2"))
    code, out, err = run(capsys, "analyze", path, "--json")
    assert code == 3
    assert json.loads(out)["error"] == "DegeneratePencil" and "DegeneratePencil" in err


@pytest.mark.parametrize(
    "extra, error",
    [
        (["--functional", "1,2"], "DimensionMismatch"),
        (["--functional", "1,2.5,4"], "ParseError"),
        (["--functional", "1,,4"], "ParseError"),
        (["--functional", "1,2,4", "--mu", "1"], "BadShift"),
        (["--functional", "1,2,4", "--mu", "x"], "ParseError"),
    ],
)
def test_analyze_input_errors(tmp_path, capsys, extra, error):
    path = write_alg(tmp_path, "t2.json", registry("T2"))
    code, _, err = run(capsys, "analyze", path, *extra)
    assert code == 1 and err.startswith(error)


def test_analyze_with_mu(tmp_path, capsys):
    path = write_alg(tmp_path, "t2.json", registry("T2"))
    code, out, _ = run(capsys, "analyze", path, "--functional", "1,2,4", "--mu", "7/2", "--json")
    assert code == 0 and json.loads(out)["decomposition"]["mu"] == "7/2"


# -- canon


def test_canon(tmp_path, capsys):
    path = write_alg(tmp_path, "l2.json", registry("L2"))
    code, out, _ = run(capsys, "canon", path, "--json")
    assert code == 0 and json.loads(out)["label"] == "L2"
    path = write_alg(tmp_path, "d.json", registry("D"))
    code, out, _ = run(capsys, "canon", path, "--json")
    assert code == 0 and json.loads(out)["label"] == "COMM"


def test_canon_unsupported(tmp_path, capsys):
    path = write_alg(tmp_path, "m2.json", registry("M2"))
    code, _, err = run(capsys, "canon", path)
    assert code == 4 and err.startswith("Unsupported")


def test_canon_no_unity(tmp_path, capsys):
    path = write_alg(tmp_path, "z3.json", registry("Z3"))
    assert run(capsys, "canon", path)[0] == 4


def test_canon_not_associative(tmp_path, capsys):
    path = write_alg(tmp_path, "bad.json", perturbed_t2())
    assert run(capsys, "canon", path)[0] == 2


# -- split


def test_split(tmp_path, capsys):
    path = write_alg(tmp_path, "t2.json", registry("T2"))
    code, out, _ = run(capsys, "split", path, "--functional", "1,0,0", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["h"] == 1 and doc["pairing"] == [[1]]
    assert all(v["passed"] for v in doc["identities"].values())


def test_split_not_index_one(tmp_path, capsys):
    path = write_alg(tmp_path, "m2.json", registry("M2"))
    code, _, err = run(capsys, "split", path, "--functional", "1,0,0,2")
    assert code == 4 and err.startswith("NotIndexOne")


# -- build


def test_build_reproduces_registry_t2_byte_for_byte(tmp_path, capsys):
    h = write_alg(tmp_path, "h.json", one_dim(1))
    hp = write_alg(tmp_path, "hp.json", one_dim(1))
    p = write(tmp_path, "p.json", '{"pairing": [[1]]}')
    code, out, _ = run(capsys, "build", h, hp, p)
    assert code == 0
    assert out == serialize_algebra(registry("T2"))
    code, ref, _ = run(capsys, "registry", "T2")
    assert out == ref


def test_build_broken_pair(tmp_path, capsys):
    h = write_alg(tmp_path, "h.json", one_dim(1))
    hp = write_alg(tmp_path, "hp.json", one_dim(0))
    p = write(tmp_path, "p.json", "[[1]]")
    code, _, err = run(capsys, "build", h, hp, p)
    assert code == 2
    assert "rank1_eqn violated at (x, y, x, y): lhs 1, rhs 0" in err


def test_build_singular_pairing(tmp_path, capsys):
    h = write_alg(tmp_path, "h.json", one_dim(1))
    p = write(tmp_path, "p.json", "[[0]]")
    code, _, err = run(capsys, "build", h, h, p)
    assert code == 2 and err.startswith("SingularPairing")


def test_build_bad_pairing_file(tmp_path, capsys):
    h = write_alg(tmp_path, "h.json", one_dim(1))
    p = write(tmp_path, "p.json", '{"pairing": [[1, 2]]}')
    assert run(capsys, "build", h, h, p)[0] == 1


# -- registry and serialization


@pytest.mark.parametrize("name", REGISTRY_NAMES + ("M3", "Tn(2)"))
def test_registry_round_trip(capsys, name):
    code, out, _ = run(capsys, "registry", name)
    assert code == 0
    back = parse_algebra(out)
    assert back == registry(name)
    assert serialize_algebra(back) == out


def test_registry_unknown(capsys):
    code, _, err = run(capsys, "registry", "Q9")
    assert code == 1 and err.startswith("UnknownName")


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    path = write_alg(tmp_path, "t2.json", registry("T2"))
    code, out, _ = run(capsys, "analyze", path, "--functional", "1,2,4", "--out", str(target))
    assert code == 0 and json.loads(target.read_text())["command"] == "analyze"
    assert not out.startswith("{")


# -- usage


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 1
    with pytest.raises(SystemExit) as e:
        main(["analyze"])
    assert e.value.code == 1
    with pytest.raises(SystemExit) as e:
        main(["analyze", "x.json", "--seed", "abc"])
    assert e.value.code == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "pencilalg", "registry", "L1"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert parse_algebra(proc.stdout) == registry("L1")
