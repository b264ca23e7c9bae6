"""Command-line front end.

Exit status: 0 on success, 1 when a verification or lift check fails,
2 on bad input. JSON goes to standard output, diagnostics to standard error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from math import lcm
from typing import Sequence

import numpy as np

from . import serialize
from .analysis import (INF, conjugacy_invariants, find_conjugator, optimal_section,
                       profile_report, random_specialization, same_class)
from .dynkin import render
from .extweyl import tits_section
from .kottwitz import an_cycle_power, cn_adjoint_element, lift_check
from .lattice import ISOGENY_HELP, IsogenyLattice, all_isogenies, build_lattice
from .rootsys import WeylWord, element_order, longest_element, multiply, reduce_word
from .solver import SectionFamily, solve_lattice
from .tables import SCOPES, lookup_row, verify
from .torus import DEFAULT_MODULUS

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class CaseSpec:
    type_tag: str
    rank: int
    isogeny: str
    modulus: int = DEFAULT_MODULUS

    def lattice(self) -> IsogenyLattice:
        return build_lattice(self.type_tag, self.isogeny, self.rank)


def parse_case(type_arg: str | None, rank: int | None, isogeny: str = "sc",
               modulus: int = DEFAULT_MODULUS) -> CaseSpec:
    """Accept ``--type G2`` as well as ``--type G --rank 2``."""
    if not type_arg:
        raise UsageError("--type is required")
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d*)\s*", type_arg)
    if not m:
        raise UsageError(f"cannot read type {type_arg!r}; expected a letter A-G, optionally with a rank")
    t = m.group(1).upper()
    r = int(m.group(2)) if m.group(2) else None
    if r is not None and rank is not None and r != rank:
        raise UsageError(f"--type {type_arg} disagrees with --rank {rank}")
    r = r if r is not None else rank
    if r is None:
        raise UsageError("a rank is required (e.g. --type C6 or --type C --rank 6)")
    if modulus <= 0 or modulus % 2:
        raise UsageError(f"--modulus must be a positive even integer, got {modulus}")
    spec = CaseSpec(t, r, isogeny, modulus)
    try:
        lat = spec.lattice()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return CaseSpec(t, r, lat.isogeny_tag, modulus)


def _emit_json(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")


def _family(spec: CaseSpec) -> SectionFamily:
    return solve_lattice(spec.lattice(), spec.modulus)


def _check_modulus(fam: SectionFamily, M: int) -> int:
    M2 = lcm(M, fam.min_modulus)
    if M2 != M:
        print(f"note: modulus raised from {M} to {M2} to hold every torsion order",
              file=sys.stderr)
    return M2


# ----------------------------------------------------------------- commands

def cmd_solve(args) -> int:
    spec = parse_case(args.type, args.rank, args.isogeny, args.modulus)
    fam = _family(spec)
    if args.json:
        _emit_json(serialize.family_to_json(fam))
        return EXIT_OK
    lat = fam.lat
    print(f"{lat.name}: lattice basis {', '.join(lat.basis_names)} (index {lat.index} over Q^vee)")
    print("free parameters: " + (", ".join(fam.free_params) or "none"))
    tors = ", ".join(f"{p} (order {d})" for p, d in fam.torsion_params)
    print("torsion parameters: " + (tors or "none"))
    print(f"minimal modulus: {fam.min_modulus}")
    for i, v in enumerate(fam.values, 1):
        print(f"t_{i} = {v}")
    return EXIT_OK


def cmd_profiles(args) -> int:
    spec = parse_case(args.type, args.rank, args.isogeny, args.modulus)
    fam = _family(spec)
    M = _check_modulus(fam, spec.modulus)
    rep = profile_report(fam.with_modulus(M), M, classes=args.classes)
    if args.json:
        _emit_json(serialize.profiles_to_json(rep))
        return EXIT_OK
    print(f"{fam.lat.name}: {len(rep.profiles)} order profiles over mu_{M} "
          f"(minimal modulus {rep.min_modulus})")
    counts = dict(rep.class_counts or ())
    for k, p in enumerate(rep.profiles):
        extra = f"  [{counts[p]} T-classes]" if p in counts else ""
        print(f"\n#{k} {p}{extra}")
        print(render(spec.type_tag, spec.rank, ["∞" if x == INF else x for x in p.labels]))
    print("\nHasse diagram (lower -> more homomorphic):")
    for lo, hi in rep.hasse:
        print(f"  {rep.profiles[lo]} -> {rep.profiles[hi]}")
    if not rep.hasse:
        print("  (no edges)")
    print("optimal profile: " + (str(rep.optimal) if rep.optimal else "none (no unique maximum)"))
    row = lookup_row(spec.type_tag, spec.rank, spec.isogeny)
    if row:
        print(f"table row: {row.key}")
    return EXIT_OK


def cmd_conjugacy(args) -> int:
    spec = parse_case(args.type, args.rank, args.isogeny, args.modulus)
    fam = _family(spec)
    inv = conjugacy_invariants(fam)
    M = _check_modulus(fam, spec.modulus)
    rng = np.random.default_rng(args.seed)
    pairs = []
    for _ in range(args.pairs):
        f = fam.with_modulus(M)
        S1, S2 = random_specialization(f, M, rng), random_specialization(f, M, rng)
        entry = {"left": [str(v) for v in S1.values], "right": [str(v) for v in S2.values],
                 "same_class": same_class(fam, S1, S2, inv)}
        if args.search:
            entry["conjugator_found"] = find_conjugator(S1, S2) is not None
        pairs.append(entry)
    if args.json:
        _emit_json({"schema": serialize.SCHEMA, "kind": "conjugacy", "type": spec.type_tag,
                    "rank": spec.rank, "isogeny": spec.isogeny, "modulus": M,
                    "invariants": [{"monomial": m.tolist(), "order": d, "text": t, "in_params": tp}
                                   for m, d, t, tp in zip(inv.monomials, inv.orders,
                                                          inv.describe(), inv.describe_params())],
                    "pairs": pairs})
        return EXIT_OK
    print(f"{fam.lat.name}: {len(inv)} T-conjugacy invariant(s)")
    if not len(inv):
        print("  all sections are T-conjugate")
    for text, tp in zip(inv.describe(), inv.describe_params()):
        print(f"  {text}   = {tp}")
    for k, e in enumerate(pairs):
        found = f", conjugator found: {e['conjugator_found']}" if "conjugator_found" in e else ""
        print(f"pair {k}: same class: {e['same_class']}{found}")
    return EXIT_OK if all(e.get("conjugator_found", e["same_class"]) == e["same_class"]
                          for e in pairs) else EXIT_MISMATCH


def cmd_verify(args) -> int:
    rep = verify(args.scope, modulus=args.modulus)
    if args.json:
        _emit_json(serialize.verify_to_json(rep))
    else:
        for r in rep.results:
            status = "ok  " if r.ok else "FAIL"
            print(f"{status} {r.case.key:<16} [{r.case.row.key}] M={r.modulus} "
                  f"{len(r.observed)} profiles ({r.seconds:.2f}s)")
            for d in r.diffs:
                print(f"       {d}")
        n_bad = len(rep.failures())
        print(f"{len(rep.results) - n_bad}/{len(rep.results)} rows match")
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def _parse_word(text: str, rank: int) -> WeylWord:
    letters = [int(x) for x in re.findall(r"\d+", text)]
    if any(not 1 <= i <= rank for i in letters):
        raise UsageError(f"word {text!r} uses letters outside 1..{rank}")
    return WeylWord(tuple(letters))


def _element(args, spec: CaseSpec, lat: IsogenyLattice) -> WeylWord:
    name = args.element
    if name == "cn-adjoint":
        if spec.type_tag != "C":
            raise UsageError("cn-adjoint is an element of type C")
        return cn_adjoint_element(spec.rank)
    if name == "an-cycle":
        if spec.type_tag != "A" or args.a is None:
            raise UsageError("an-cycle needs type A and --a")
        try:
            return an_cycle_power(spec.rank, args.a, args.cycle_length)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if name == "parabolic-longest":
        # w_0 of the parabolic missing the last node, times w_0
        sysr = lat.sys
        return multiply(sysr, longest_element(sysr, range(1, spec.rank)), longest_element(sysr))
    if re.fullmatch(r"[\s\d,s·*]+", name):
        return reduce_word(lat.sys, _parse_word(name, spec.rank))
    raise UsageError(f"unknown element {name!r}")


def cmd_lift_check(args) -> int:
    spec = parse_case(args.type, args.rank, args.isogeny, args.modulus)
    lat = spec.lattice()
    w = _element(args, spec, lat)
    if args.section == "tits":
        S = tits_section(lat)
    else:
        fam = _family(spec)
        M = _check_modulus(fam, spec.modulus)
        S = optimal_section(fam.with_modulus(M), M)
    if args.r_max is not None and args.r_max < 1:
        raise UsageError("--r-max must be at least 1")
    rep = lift_check(S, w, args.r_max, label=args.section)
    if args.json:
        _emit_json(serialize.lift_report_to_json(rep))
    else:
        print(f"{lat.name}, {args.section} section, w = {rep.element} "
              f"(order {element_order(lat.sys, w)})")
        if args.section == "optimal":
            print("section values: " + ", ".join(str(v) for v in S.values))
        for r, ok in sorted(rep.results.items()):
            tail = "" if ok else f"   ratio {rep.discrepancies[r]}"
            print(f"  r = {r}: {'ok' if ok else 'FAIL'}{tail}")
        print("lift holds" if rep.passed else "lift fails at r = " + ", ".join(map(str, rep.failures())))
    return EXIT_OK if rep.passed else EXIT_MISMATCH


def cmd_describe(args) -> int:
    spec = parse_case(args.type, args.rank, args.isogeny, args.modulus)
    lat = spec.lattice()
    rs = lat.sys
    isos = [i.tag for i in all_isogenies(spec.type_tag, spec.rank)]
    if args.json:
        _emit_json({"schema": serialize.SCHEMA, "kind": "describe", "type": spec.type_tag,
                    "rank": spec.rank, "isogeny": spec.isogeny,
                    "cartan": rs.cartan.tolist(), "positive_roots": rs.num_positive,
                    "basis": list(lat.basis_names), "index": lat.index,
                    "coroot_coords": lat.coroot_coords.tolist(), "isogenies": isos})
        return EXIT_OK
    print(f"{rs.name}, {rs.num_positive} positive roots, longest element of length "
          f"{len(longest_element(rs))}")
    print(render(spec.type_tag, spec.rank))
    print("Cartan matrix:")
    for row in rs.cartan.tolist():
        print("  " + " ".join(f"{x:>2}" for x in row))
    print(f"isogeny {spec.isogeny}: basis {', '.join(lat.basis_names)}, index {lat.index} over Q^vee")
    print("simple coroots in that basis (columns):")
    for row in lat.coroot_coords.tolist():
        print("  " + " ".join(f"{x:>3}" for x in row))
    print("isogenies: " + ", ".join(isos))
    return EXIT_OK


# ----------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", help="root system type, e.g. G2 or C (with --rank)")
    common.add_argument("--rank", type=int)
    common.add_argument("--isogeny", default="sc", help=ISOGENY_HELP)
    common.add_argument("--modulus", type=int, default=DEFAULT_MODULUS,
                        help="roots of unity used for specialization (even, default 24)")
    common.add_argument("--json", action="store_true", help="JSON on standard output")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sampling")

    p = argparse.ArgumentParser(prog="weylsections",
                                description="Braid-respecting sections of Weyl groups into torus normalizers.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", parents=[common], help="solve the braid constraints")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("profiles", parents=[common], help="order profiles and their Hasse diagram")
    sp.add_argument("--classes", action="store_true", help="count T-conjugacy classes per profile")
    sp.set_defaults(func=cmd_profiles)

    sp = sub.add_parser("conjugacy", parents=[common], help="T-conjugacy invariants")
    sp.add_argument("--pairs", type=int, default=0, help="random section pairs to compare")
    sp.add_argument("--search", action="store_true",
                    help="confirm each comparison by an explicit conjugator search")
    sp.set_defaults(func=cmd_conjugacy)

    sp = sub.add_parser("verify", parents=[common], help="recompute the expected profile tables")
    sp.add_argument("scope", nargs="?", default="all", choices=SCOPES)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("lift-check", parents=[common], help="compare S(w)^r with S(w^r)")
    sp.add_argument("--section", choices=("tits", "optimal"), default="tits")
    sp.add_argument("--element", required=True,
                    help="cn-adjoint, an-cycle, parabolic-longest, or a word such as 2,1,2")
    sp.add_argument("--a", type=int, help="power of the cycle for an-cycle")
    sp.add_argument("--cycle-length", type=int, help="cycle length for an-cycle (n or n+1)")
    sp.add_argument("--r-max", type=int, help="largest power checked (default: order of w)")
    sp.set_defaults(func=cmd_lift_check)

    sp = sub.add_parser("describe", parents=[common], help="root system and lattice data")
    sp.set_defaults(func=cmd_describe)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
