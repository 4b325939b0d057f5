"""
Exact arithmetic in the valued field
====================================

Elements are ratios of finite sums of rational powers of ``t``, kept in
lowest terms.  The valuation is the lowest exponent that survives.
"""

from gitloci import T, parse_element, residue, valuation

# parse text the same way the problem files do
a = parse_element("t^(1/2) + 2*t")
b = parse_element("(2+t)/(1+t)")
print("a =", a, "   ord a =", valuation(a))
print("b =", b, "   ord b =", valuation(b), "   residue b =", residue(b))

# products add valuations, the sum of unequal valuations keeps the smaller
print("ord(a*b) =", valuation(a * b))
print("ord(a + t^3) =", valuation(a + T ** 3))

# cancellation is exact
print("(1+t)(1-t) =", (1 + T) * (1 - T))
print("t + (-t) =", T + (-T))

# printing and parsing round-trip
c = (T ** -3 + 5) / (1 - parse_element("t^(2/3)"))
assert parse_element(str(c)) == c
print("c =", c, "   ord c =", valuation(c))
