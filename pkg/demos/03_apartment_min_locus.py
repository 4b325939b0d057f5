"""
Where the difference function is smallest
==========================================

On one apartment the difference function is ``delta(v) = -min_i (y_i +
<w_i, v>)``.  Its minimum locus coincides with the points whose torus
specialization is semistable.  We check this on a grid and print a profile
along a ray.
"""

from fractions import Fraction

from gitloci import (
    ValuedWeightConfig,
    apartment_min,
    apartment_min_locus,
    classify_reduction,
    delta_on_apartment,
    translate_config,
)

config = ValuedWeightConfig(2, [((-3, -3), 3), ((3, 0), 3), ((0, 3), 3), ((0, 0), 0)])
print("minimum:", apartment_min(config))
locus = apartment_min_locus(config)
print("minimum locus vertices:", [tuple(map(str, v)) for v in locus.vertices])

# each grid point: is delta minimal there, and is the moved point semistable?
agree = 0
for i in range(-6, 7):
    for j in range(-6, 7):
        v = (Fraction(i, 2), Fraction(j, 2))
        at_min = delta_on_apartment(config, v) == apartment_min(config)
        cls = classify_reduction(translate_config(config, v, renormalize=True))
        assert at_min == cls.semistable
        agree += 1
print(f"{agree} grid points agree")

# a profile along the diagonal, TSV for any plotting tool
print("# s\tdelta")
for k in range(-8, 9):
    s = Fraction(k, 4)
    print(f"{s}\t{delta_on_apartment(config, (s, s))}")
