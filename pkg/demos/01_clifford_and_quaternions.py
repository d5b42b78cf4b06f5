"""Tour of the exact algebra layer: Clifford products, involutions, and
the quaternion identification, then the norm-p orbit tables.

Run:  python demos/01_clifford_and_quaternions.py
"""

from fractions import Fraction

from h4hecke.clifford import (
    CliffordElement,
    format_element,
    involution,
    is_clifford_group_member,
    parse_element,
    vector_utils,
)
from h4hecke.quaternions import (
    Quaternion,
    conjugate_action,
    enumerate_norm,
    orbit_representatives,
    valuation,
)

print("== Clifford algebra C_2 (the quaternions) ==")
e1 = CliffordElement.generator(2, 1)
e2 = CliffordElement.generator(2, 2)
e12 = e1 * e2
print("e1 * e2            =", format_element(e12))
print("(e1 e2)^2          =", format_element(e12 * e12), "   (forced by the sign rules)")
print("(1+e1)(1-e1)       =", format_element(parse_element("1 + 1*e1", 2) * parse_element("1 - 1*e1", 2)))

print()
print("== involutions ==")
a = parse_element("3/2 + 1*e1 - 2*e12", 2)
for kind in ("main", "reverse", "bar"):
    print(f"{kind:8s}({format_element(a)}) = {format_element(involution(a, kind))}")

print()
print("== vectors are invertible off zero ==")
x = CliffordElement.vector([1, 1, 0])
info = vector_utils(x)
print("x = 1 + e1: norm", info.norm, " inverse", format_element(info.inverse))
print("x * x^-1   =", format_element(x * info.inverse))

print()
print("== group membership: every nonzero quaternion qualifies ==")
for text in ("1 + 1*e1", "1 + 1*e12", "2 - 3*e2 + 1*e12"):
    a = parse_element(text, 2)
    print(f"  member({text}) = {is_clifford_group_member(a)}")

print()
print("== norm-p quaternions and their unit orbits ==")
for p in (3, 5):
    table = orbit_representatives(p)
    print(f"p = {p}: {len(table.all_elements)} quaternions of norm {p} "
          f"(= 8(p+1)), {len(table.representatives)} orbit representatives:")
    for rep in table.representatives:
        print("   ", rep.coords())

print()
print("== the conjugation action beta -> alpha' beta bar(alpha) ==")
alpha = Quaternion(1, 1, 1, 0)
for beta in ((1, 0, 0), (0, 1, 0), (3, 0, 0)):
    image = conjugate_action(alpha, beta)
    print(f"alpha = 1+i+j, beta = {beta}: image {image}, "
          f"v_3 {valuation(beta, 3)} -> {valuation(image, 3)}")
