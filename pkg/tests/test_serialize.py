import json

import pytest

from weylsections.analysis import profile_report
from weylsections.extweyl import tits_section
from weylsections.kottwitz import lift_check
from weylsections.lattice import build_lattice
from weylsections.rootsys import longest_element, multiply
from weylsections.serialize import SCHEMA, SchemaError, dumps, from_json, loads, to_json
from weylsections.solver import solve_lattice
from weylsections.tables import verify


@pytest.mark.parametrize("t,n,iso", [("G", 2, "sc"), ("F", 4, "sc"), ("A", 3, "middle:2"), ("E", 6, "sc")])
def test_family_roundtrip(t, n, iso):
    fam = solve_lattice(build_lattice(t, iso, n))
    text = dumps(fam)
    doc = json.loads(text)
    assert doc["schema"] == SCHEMA and doc["kind"] == "family"
    assert loads(text) == fam


def test_family_torsion_names():
    doc = to_json(solve_lattice(build_lattice("G", "sc", 2)))
    assert doc["torsion"] == {"a[1,2]": 2, "a[2,1]": 2}
    assert doc["free"] == ["a[1,1]", "a[2,2]"]


def test_profiles_roundtrip():
    rep = profile_report(solve_lattice(build_lattice("G", "sc", 2)), classes=True)
    back = loads(dumps(rep))
    assert back == rep
    assert json.loads(dumps(rep))["optimal"] == [2, 2]


def test_profiles_infinite_labels():
    rep = profile_report(solve_lattice(build_lattice("A", "sc", 3)), M=8)
    doc = to_json(rep)
    assert ["inf", "inf", "inf"] in doc["profiles"]
    assert from_json(doc) == rep


def test_lift_roundtrip():
    lat = build_lattice("D", "adjoint", 5)
    sys = lat.sys
    w = multiply(sys, longest_element(sys, range(1, 5)), longest_element(sys))
    rep = lift_check(tits_section(lat), w)
    back = loads(dumps(rep))
    assert back.passed == rep.passed is False
    assert back.results == rep.results
    assert back.element.letters == rep.element.letters
    assert all(back.discrepancies[r] == rep.discrepancies[r] for r in rep.discrepancies)


def test_verify_roundtrip():
    rep = verify("lowrank")
    back = loads(dumps(rep))
    assert back.ok and back.scope == "lowrank"
    assert [r.case.key for r in back.results] == [r.case.key for r in rep.results]
    assert [r.observed for r in back.results] == [r.observed for r in rep.results]


def test_schema_errors():
    doc = to_json(solve_lattice(build_lattice("A", "sc", 1)))
    with pytest.raises(SchemaError):
        from_json({**doc, "schema": 99})
    with pytest.raises(SchemaError):
        from_json({**doc, "kind": "bogus"})
    with pytest.raises(TypeError):
        to_json(object())
