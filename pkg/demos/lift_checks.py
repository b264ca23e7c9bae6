"""Which sections lift elements multiplicatively: S(w)^r against S(w^r)."""
from weylsections import build_lattice, lift_check, optimal_section, solve_lattice, tits_section
from weylsections.kottwitz import an_cycle_power, cn_adjoint_element, cycle_candidates
from weylsections.rootsys import longest_element, multiply


def show(title, rep):
    status = "holds" if rep.passed else f"fails at r = {rep.failures()}"
    print(f"{title}: w = {rep.element}, r <= {rep.r_max}, {status}")


# middle isogeny of A7, a = 4; the Tits section already works
a7 = build_lattice("A", "middle:4", 7)
show("A7 middle:4, Tits", lift_check(tits_section(a7), an_cycle_power(7, 4)))

# which cycle reproduces the F-set coroot sums
for name, info in cycle_candidates(7, 4).items():
    print(f"  {name}: matches displayed sums = {info['all_match']}")

# adjoint C6: at the Weyl level both sections square the element to 1
c6 = build_lattice("C", "adjoint", 6)
w = cn_adjoint_element(6)
show("C6 adjoint, Tits", lift_check(tits_section(c6), w))
S = optimal_section(solve_lattice(c6))
show("C6 adjoint, optimal", lift_check(S, w))

# adjoint D5: the order-4 generator breaks the Tits section at r = 2
d5 = build_lattice("D", "adjoint", 5)
sysd = d5.sys
wd = multiply(sysd, longest_element(sysd, range(1, 5)), longest_element(sysd))
bad = lift_check(tits_section(d5), wd)
show("D5 adjoint, Tits", bad)
print("  ratio at r = 2:", bad.discrepancies[2])
show("D5 adjoint, optimal", lift_check(optimal_section(solve_lattice(d5)), wd))
