"""JSON documents for families, profile reports, lift checks and table checks.

Every document carries ``"schema": 1`` and a ``"kind"``; :func:`loads` picks
the decoder from the kind, so ``loads(dumps(x)) == x``.
"""
from __future__ import annotations

import json
from typing import Any

import numpy as np

from .analysis import INF, OrderProfile, ProfileReport
from .kottwitz import LiftCheckReport
from .lattice import build_lattice
from .rootsys import WeylWord
from .solver import SectionFamily, generate_constraints
from .tables import RowResult, TableCase, TableRow, VerifyReport
from .torus import MonomialGroup, TorusElement

SCHEMA = 1


class SchemaError(ValueError):
    pass


def _profile(p: OrderProfile) -> list:
    return p.to_json()


def _unprofile(x) -> OrderProfile:
    return OrderProfile(tuple(INF if v == "inf" else int(v) for v in x))


def group_to_json(g: MonomialGroup) -> dict:
    return {"modulus": g.modulus, "params": list(g.params), "orders": list(g.orders)}


def group_from_json(d: dict) -> MonomialGroup:
    return MonomialGroup(int(d["modulus"]), tuple(d["params"]), tuple(d["orders"]))


def torus_to_json(t: TorusElement) -> dict:
    return {"group": group_to_json(t.group), "zeta": t.zeta.tolist(), "exps": t.exps.tolist(),
            "text": str(t)}


def torus_from_json(d: dict) -> TorusElement:
    g = group_from_json(d["group"])
    n = len(d["zeta"])
    return TorusElement(g, d["zeta"], np.array(d["exps"], dtype=np.int64).reshape(n, g.nparams))


def family_to_json(fam: SectionFamily) -> dict:
    lat = fam.lat
    params = [{"name": p, "order": d, "kind": "torsion" if d else "free"}
              for p, d in zip(fam.group.params, fam.group.orders)]
    return {
        "schema": SCHEMA,
        "kind": "family",
        "type": lat.sys.type_tag,
        "rank": lat.rank,
        "isogeny": lat.isogeny_tag,
        "modulus": fam.group.modulus,
        "min_modulus": fam.min_modulus,
        "params": params,
        "free": list(fam.free_params),
        "torsion": {p: d for p, d in fam.torsion_params},
        "divisors": list(fam.divisors),
        "value_matrix": fam.value_matrix.tolist(),
        "values": [str(v) for v in fam.values],
    }


def family_from_json(d: dict) -> SectionFamily:
    _expect(d, "family")
    lat = build_lattice(d["type"], d["isogeny"], int(d["rank"]))
    group = MonomialGroup(int(d["modulus"]), tuple(p["name"] for p in d["params"]),
                          tuple(int(p["order"]) for p in d["params"]))
    P = lat.rank ** 2
    X = np.array(d["value_matrix"], dtype=np.int64).reshape(P, group.nparams)
    return SectionFamily(lat, group, X, tuple(int(x) for x in d["divisors"]),
                         generate_constraints(lat, group.modulus))


def profiles_to_json(rep: ProfileReport) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "profiles",
        "type": rep.type_tag,
        "rank": rep.rank,
        "isogeny": rep.isogeny,
        "modulus": rep.modulus,
        "min_modulus": rep.min_modulus,
        "profiles": [_profile(p) for p in rep.profiles],
        "hasse": [list(e) for e in rep.hasse],
        "optimal": None if rep.optimal is None else _profile(rep.optimal),
        "class_counts": None if rep.class_counts is None else
        [{"profile": _profile(p), "classes": c} for p, c in rep.class_counts],
    }


def profiles_from_json(d: dict) -> ProfileReport:
    _expect(d, "profiles")
    counts = d.get("class_counts")
    return ProfileReport(
        d["type"], int(d["rank"]), d["isogeny"], int(d["modulus"]), int(d["min_modulus"]),
        tuple(_unprofile(p) for p in d["profiles"]),
        tuple((int(a), int(b)) for a, b in d["hasse"]),
        None if d["optimal"] is None else _unprofile(d["optimal"]),
        None if counts is None else tuple((_unprofile(c["profile"]), int(c["classes"]))
                                          for c in counts),
    )


def lift_report_to_json(rep: LiftCheckReport) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "lift_check",
        "element": list(rep.element.letters),
        "element_text": str(rep.element),
        "r_max": rep.r_max,
        "results": {str(r): ok for r, ok in sorted(rep.results.items())},
        "discrepancies": {str(r): torus_to_json(t) for r, t in sorted(rep.discrepancies.items())},
        "passed": rep.passed,
        "lattice": rep.lattice,
        "section": rep.section,
    }


def lift_report_from_json(d: dict) -> LiftCheckReport:
    _expect(d, "lift_check")
    return LiftCheckReport(
        WeylWord(tuple(int(i) for i in d["element"]), True),
        int(d["r_max"]),
        {int(r): bool(ok) for r, ok in d["results"].items()},
        {int(r): torus_from_json(t) for r, t in d["discrepancies"].items()},
        d.get("lattice", ""),
        d.get("section", ""),
    )


def _row_to_json(row: TableRow) -> dict:
    return {"key": row.key, "type": row.type_tag, "isogeny": row.isogeny,
            "condition": row.condition, "patterns": list(row.patterns),
            "family": row.family, "table": row.table, "rank": row.rank}


def _row_from_json(d: dict) -> TableRow:
    return TableRow(d["key"], d["type"], d["isogeny"], d["condition"], tuple(d["patterns"]),
                    d["family"], d["table"], d["rank"])


def verify_to_json(rep: VerifyReport) -> dict:
    rows = []
    for r in rep.results:
        rows.append({"case": r.case.key, "type": r.case.type_tag, "rank": r.case.rank,
                     "isogeny": r.case.isogeny, "row": _row_to_json(r.case.row),
                     "modulus": r.modulus, "observed": [_profile(p) for p in r.observed],
                     "diffs": list(r.diffs), "ok": r.ok, "seconds": r.seconds})
    return {"schema": SCHEMA, "kind": "verify", "scope": rep.scope, "ok": rep.ok, "rows": rows}


def verify_from_json(d: dict) -> VerifyReport:
    _expect(d, "verify")
    results = []
    for r in d["rows"]:
        case = TableCase(_row_from_json(r["row"]), r["type"], int(r["rank"]), r["isogeny"])
        results.append(RowResult(case, int(r["modulus"]), [_unprofile(p) for p in r["observed"]],
                                 list(r["diffs"]), float(r["seconds"])))
    return VerifyReport(d["scope"], results)


_ENCODERS = (
    (SectionFamily, family_to_json),
    (ProfileReport, profiles_to_json),
    (LiftCheckReport, lift_report_to_json),
    (VerifyReport, verify_to_json),
)
_DECODERS = {
    "family": family_from_json,
    "profiles": profiles_from_json,
    "lift_check": lift_report_from_json,
    "verify": verify_from_json,
}


def _expect(d: dict, kind: str) -> None:
    if d.get("schema") != SCHEMA:
        raise SchemaError(f"unsupported schema {d.get('schema')!r}; expected {SCHEMA}")
    if d.get("kind") != kind:
        raise SchemaError(f"expected a {kind!r} document, got {d.get('kind')!r}")


def to_json(obj: Any) -> dict:
    for cls, enc in _ENCODERS:
        if isinstance(obj, cls):
            return enc(obj)
    raise TypeError(f"no JSON encoding for {type(obj).__name__}")


def from_json(d: dict) -> Any:
    kind = d.get("kind")
    if kind not in _DECODERS:
        raise SchemaError(f"unknown document kind {kind!r}")
    return _DECODERS[kind](d)


def dumps(obj: Any, indent: int | None = 2) -> str:
    return json.dumps(to_json(obj), indent=indent, ensure_ascii=False)


def loads(text: str) -> Any:
    return from_json(json.loads(text))
