"""
The quartic Hesse-type family
=============================

``[x0^4 + a x0^2 x1 x2 : x1^4 + a x0 x1^2 x2 : x2^4 + a x0 x1 x2^2]``

For ``ord a < 0`` the minimum locus is a triangle and the reduction at
the origin is semistable but not stable; for a unit ``a`` away from the
singular values the locus is one point and the reduction is stable.
"""

from gitloci import (
    T,
    apartment_min_locus,
    classify_reduction,
    divergence_contraction,
    hesse_classify,
    hesse_map,
    map_config,
    parse_element,
)
from gitloci.dynamics import format_form

for text in ["t^(-3)", "t^(-1)", "1 + t", "-1", "-2"]:
    alpha = parse_element(text)
    phi = hesse_map(alpha)
    config = map_config(phi)
    locus = apartment_min_locus(config)
    verts = ", ".join("(" + ", ".join(map(str, v)) + ")" for v in locus.vertices)
    print(f"alpha = {text:8} torus class = {classify_reduction(config).value:22} locus = {verts}")
    print(f"{'':11}oracle: {hesse_classify(alpha)}")

# the cubic part in the reduction is read off from the divergence
print(format_form(divergence_contraction(hesse_map(T ** -3))))
