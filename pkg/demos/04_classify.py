# ---
# jupyter:
#   jupytext:
#     formats: py:light
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # Structural verdicts from ε
#
# The ratio ρ = ε² r / L² is compared exactly against 3/4 and 7/9 for one
# point and (r-1)/r for r ≥ 2 points.  Small ratios force a fibration by
# Seshadri curves.

from fractions import Fraction

from seshadri import RadicalRational, builtin, classify, min_quotient_over_catalog, nagata_biran_table, rr_sqrt
from seshadri.classifier import LOWER, UPPER

cubic = builtin("cubic")
w = min_quotient_over_catalog(cubic, 1)
v = classify(RadicalRational(w.quotient), cubic.L2, 1, UPPER)
print(w.curve_name, w.quotient, "->", v.kind, "rho =", v.ratio_squared)
for c in v.trace:
    print("  ", c)

# Two points in the plane sit exactly on the boundary (r-1)/r = 1/2.

p2 = builtin("P2")
w = min_quotient_over_catalog(p2, 2)
print(classify(RadicalRational(w.quotient), 1, 2, UPPER).kind)

# ρ = 1/2 at one point is strictly below 3/4.

print(classify(RadicalRational(Fraction(1)), 2, 1).kind)

# A lower bound alone never forces structure.

print(classify(RadicalRational(Fraction(1)), 2, 1, LOWER).kind)

# Exact thresholds survive irrational inputs: eps = √(3/4)·√L2 always lands on 3/4.

print({L2: classify(rr_sqrt(Fraction(3 * L2, 4)), L2, 1).kind for L2 in (2, 5, 7)})

# On a surface with no fibration over a curve, ε(L; r) ≥ √((r-1)/r)·ε_upper.

for row in nagata_biran_table(1, 2, 6):
    print(row.r, row.ratio, row.ratio.decimal(), row.lower_bound)
