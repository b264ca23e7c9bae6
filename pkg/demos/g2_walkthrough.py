"""Sections of the Weyl group of G2: family, order profiles, conjugacy classes."""
from weylsections import build_lattice, conjugacy_invariants, profile_report, solve_lattice
from weylsections.dynkin import render

lat = build_lattice("G", "sc", 2)
fam = solve_lattice(lat)

print(f"{lat.name}, simple coroots in the lattice basis:")
print(lat.coroot_coords)
print("\nbraid constraints have", fam.constraints.nrows, "rows")
print("free:", ", ".join(fam.free_params))
print("torsion:", ", ".join(f"{p} (order {d})" for p, d in fam.torsion_params))
for i, v in enumerate(fam.values, 1):
    print(f"  t_{i} = {v}")

rep = profile_report(fam, classes=True)
print(f"\n{len(rep.profiles)} order profiles")
for p, n in rep.class_counts:
    print(render("G", 2, p.labels), f"   {n} T-class(es)", sep="\n")
    print()
print("Hasse edges:")
for lo, hi in rep.hasse:
    print(f"  {rep.profiles[lo]} < {rep.profiles[hi]}")
print("optimal:", rep.optimal)

inv = conjugacy_invariants(fam)
print("\nconjugacy invariants:", ", ".join(inv.describe_params()))
