"""
Lower hulls, conjugates and the subdifferential at zero
=======================================================

A valued weight configuration is a list of integer weights with values.
Its lower convex envelope and the conjugate ``max <w, v> - y`` carry the
same information; the subdifferential at 0 is where the conjugate hits
its floor.
"""

from fractions import Fraction

from gitloci import ValuedWeightConfig, conjugate_eval, lower_hull_value, subdiff_zero, sublevel_polytope

line = ValuedWeightConfig(1, [((-1,), 0), ((1,), 1)])
print("lower hull at 0:", lower_hull_value(line, (0,)))  # 1/2, halfway up the segment

# the floor of the conjugate is -B(0); the subgradients are where it is attained
base = lower_hull_value(line, (0,))
for k in range(-4, 5):
    v = Fraction(k, 4)
    val = conjugate_eval(line, (v,))
    print(f"v = {str(v):>5}  conjugate = {str(val):>5}  {'<- subgradient' if val == -base else ''}")
print(subdiff_zero(line))

###############################################################################
# In two variables, the sextic configuration from the quartic Hesse-type map.

sextic = ValuedWeightConfig.from_text("""rank 2
-3 -3 : 3
 3  0 : 3
 0  3 : 3
 0  0 : 0
""")
print(subdiff_zero(sextic).minimized())

###############################################################################
# Convex hulls of sublevel sets of the point function are only *inside*
# sublevel sets of the envelope; at intermediate levels the containment
# can be strict.

gap = ValuedWeightConfig(1, [((-1,), 0), ((1,), 2)])
print("value of the envelope at 0:", lower_hull_value(gap, (0,)), "(only weight -1 has value <= 1)")
print(sublevel_polytope(gap, 1))
