"""
Minimal resultant locus of a quadratic map
==========================================

For maps of the projective line the resultant is a Sylvester
determinant, and ``ord_res`` along the torus is a convex piecewise
linear function whose minimizers form the minimal resultant locus.
"""

from fractions import Fraction

from gitloci import GroupElement, ProjEndomorphism, T, min_res_locus, ord_res

phi = ProjEndomorphism(1, 2, {(0, (2, 0)): T, (1, (0, 2)): 1})  # [t x^2 : y^2]
print("map:", phi)
print("locus:", [tuple(map(str, v)) for v in min_res_locus(phi).vertices])

print("# v\tord_res")
for k in range(-8, 9):
    v = Fraction(k, 4)
    print(f"{v}\t{ord_res(phi, GroupElement.torus([v]))}")

# conjugating by an integral unimodular matrix on the right changes nothing
u = GroupElement([[1, 1 + T], [0, 1]])
g = GroupElement.torus([Fraction(1, 2)])
print("ord_res at g:", ord_res(phi, g), "  at g*u:", ord_res(phi, g @ u))
