import json
import subprocess
import sys

import pytest

from weylsections.cli import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, UsageError, main, parse_case


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_case_forms():
    assert parse_case("G2", None).rank == 2
    assert parse_case("c", 6, "adjoint").type_tag == "C"
    for bad in [("G2", 3), ("Q", 2), (None, 2), ("D", 2), ("A", None)]:
        with pytest.raises(UsageError):
            parse_case(*bad)
    with pytest.raises(UsageError):
        parse_case("A3", None, modulus=5)


def test_solve_g2(capsys):
    code, out, _ = run(capsys, "solve", "--type", "G2")
    assert code == EXIT_OK
    assert "a[1,2] (order 2)" in out and "a[2,1] (order 2)" in out


def test_solve_e8_json(capsys):
    code, out, _ = run(capsys, "solve", "--type", "E8", "--json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["torsion"] == {} and len(doc["free"]) == 8


def test_profiles_f4_json(capsys):
    code, out, _ = run(capsys, "profiles", "--type", "F4", "--json")
    doc = json.loads(out)
    assert doc["profiles"] == [[4, 4, 2, 2], [4, 4, 4, 4]]
    assert doc["optimal"] == [4, 4, 2, 2]


def test_profiles_text(capsys):
    code, out, _ = run(capsys, "profiles", "--type", "G2", "--classes")
    assert code == EXIT_OK
    assert "optimal profile: (2,2)" in out
    assert "table row: G2" in out
    assert "T-classes" in out


def test_profiles_b6(capsys):
    code, out, _ = run(capsys, "profiles", "--type", "B", "--rank", "6", "--isogeny", "adjoint", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["optimal"] is not None


def test_modulus_is_raised(capsys):
    code, out, err = run(capsys, "profiles", "--type", "E6", "--modulus", "2", "--json")
    assert code == EXIT_OK and "raised" in err
    assert json.loads(out)["modulus"] == 6


def test_conjugacy(capsys):
    code, out, _ = run(capsys, "conjugacy", "--type", "G2", "--pairs", "3", "--search",
                       "--modulus", "4", "--seed", "3")
    assert code == EXIT_OK
    assert "2 T-conjugacy invariant(s)" in out
    assert out.count("conjugator found") == 3
    code, out, _ = run(capsys, "conjugacy", "--type", "E8")
    assert "all sections are T-conjugate" in out


def test_verify_lowrank(capsys):
    code, out, _ = run(capsys, "verify", "lowrank")
    assert code == EXIT_OK and "7/7 rows match" in out


def test_lift_checks(capsys):
    code, out, _ = run(capsys, "lift-check", "--type", "C6", "--isogeny", "adjoint",
                       "--section", "optimal", "--element", "cn-adjoint")
    assert code == EXIT_OK and "lift holds" in out
    code, out, _ = run(capsys, "lift-check", "--type", "A7", "--isogeny", "middle:4",
                       "--element", "an-cycle", "--a", "4")
    assert code == EXIT_OK
    code, out, _ = run(capsys, "lift-check", "--type", "D5", "--isogeny", "adjoint",
                       "--element", "parabolic-longest", "--json")
    doc = json.loads(out)
    assert code == EXIT_MISMATCH and doc["passed"] is False and doc["results"]["2"] is False
    code, out, _ = run(capsys, "lift-check", "--type", "B3", "--element", "1,2,1")
    assert code == EXIT_OK


def test_usage_errors(capsys):
    assert run(capsys, "solve", "--type", "D", "--rank", "2")[0] == EXIT_USAGE
    assert run(capsys, "solve", "--type", "A3", "--isogeny", "middle:3")[0] == EXIT_USAGE
    assert run(capsys, "lift-check", "--type", "A3", "--element", "cn-adjoint")[0] == EXIT_USAGE
    assert run(capsys, "lift-check", "--type", "A3", "--element", "1,7")[0] == EXIT_USAGE
    assert run(capsys, "lift-check", "--type", "A3", "--element", "1", "--r-max", "0")[0] == EXIT_USAGE
    assert run(capsys, "bogus")[0] == EXIT_USAGE
    assert run(capsys)[0] == EXIT_USAGE


def test_describe(capsys):
    code, out, _ = run(capsys, "describe", "--type", "E6", "--json")
    doc = json.loads(out)
    assert doc["positive_roots"] == 36 and "adjoint" in doc["isogenies"]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "weylsections", "solve", "--type", "A1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "A1" in res.stdout
